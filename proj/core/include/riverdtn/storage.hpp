// Copyright 2026 The riverdtn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "riverdtn/bundle.hpp"

namespace riverdtn::storage {

using data::Bundle;
using data::BundleId;

/// Digest of the ids a node holds, exchanged at contact start.
using SummaryVector = std::set<BundleId>;

struct StoredEntry {
  Bundle bundle;
  BundleId id;
  double stored_at = 0.0;
  double expires_at = 0.0;  // creation_time + lifetime
  std::size_t size_bytes = 0;
};

enum class StoreStatus { Stored, Duplicate, Expired, Rejected };

struct StoreOutcome {
  StoreStatus status = StoreStatus::Stored;
  std::vector<BundleId> evicted;  // oldest-stored first; only for Stored
};

/// Capacity-bounded bundle buffer. Eviction is oldest-stored first with ties
/// broken by BundleId; a bundle larger than the whole capacity is rejected
/// without disturbing the store. Owned by a single node's event loop.
class BundleStore {
public:
  explicit BundleStore(std::size_t capacity_bytes);

  StoreOutcome store(const Bundle& bundle, double now);
  /// Same as store() for callers that already hold the id and wire size.
  StoreOutcome store(const Bundle& bundle, const BundleId& id, std::size_t size_bytes,
                     double now);

  /// Removes every entry with expires_at <= now; returns their ids in id order.
  std::vector<BundleId> expire(double now);

  /// Ids of stored bundles not yet expired as of the latest time seen by
  /// store() or expire().
  SummaryVector summary_vector() const;
  SummaryVector summary_vector(double now) const;

  bool contains(const BundleId& id) const { return entries_.contains(id); }
  const StoredEntry* find(const BundleId& id) const;
  bool erase(const BundleId& id);

  /// Local-delivery memory: ids already handed to a local endpoint.
  bool mark_delivered(const BundleId& id) { return delivered_.insert(id).second; }
  bool was_delivered(const BundleId& id) const { return delivered_.contains(id); }
  const std::set<BundleId>& delivered() const noexcept { return delivered_; }

  std::size_t capacity_bytes() const noexcept { return capacity_; }
  std::size_t occupancy_bytes() const noexcept { return occupancy_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double clock() const noexcept { return clock_; }

  const std::map<BundleId, StoredEntry>& entries() const noexcept { return entries_; }

  /// Snapshot file: "RDTNSNAP" | version byte | count SDNV | count x
  /// (stored_at milliseconds SDNV | serialized bundle).
  void save_snapshot(const std::filesystem::path& path) const;
  /// Replaces the contents with a snapshot. Throws MalformedBundle or
  /// std::runtime_error on a bad file.
  void load_snapshot(const std::filesystem::path& path);

private:
  void remove(std::map<BundleId, StoredEntry>::iterator it);

  std::size_t capacity_;
  std::size_t occupancy_ = 0;
  double clock_ = 0.0;
  std::map<BundleId, StoredEntry> entries_;
  std::set<std::pair<double, BundleId>> by_age_;
  std::set<BundleId> delivered_;
};

constexpr std::uint8_t kSnapshotVersion = 1;

}  // namespace riverdtn::storage
