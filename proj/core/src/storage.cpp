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

#include "riverdtn/storage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "riverdtn/error.hpp"
#include "riverdtn/sdnv.hpp"

namespace riverdtn::storage {

namespace {
constexpr std::array<std::uint8_t, 8> kMagic = {'R', 'D', 'T', 'N', 'S', 'N', 'A', 'P'};
}

BundleStore::BundleStore(std::size_t capacity_bytes) : capacity_(capacity_bytes) {}

StoreOutcome BundleStore::store(const Bundle& bundle, double now) {
  return store(bundle, bundle.id(), data::serialized_size(bundle), now);
}

StoreOutcome BundleStore::store(const Bundle& bundle, const BundleId& id, std::size_t size_bytes,
                                double now) {
  clock_ = std::max(clock_, now);
  if (entries_.contains(id)) {
    return {StoreStatus::Duplicate, {}};
  }
  const auto expires_at = static_cast<double>(bundle.expires_at());
  if (now >= expires_at) {
    return {StoreStatus::Expired, {}};
  }
  if (size_bytes > capacity_) {
    return {StoreStatus::Rejected, {}};
  }

  StoreOutcome outcome;
  while (occupancy_ + size_bytes > capacity_) {
    const auto victim = by_age_.begin()->second;
    outcome.evicted.push_back(victim);
    remove(entries_.find(victim));
  }
  entries_.emplace(id, StoredEntry{bundle, id, now, expires_at, size_bytes});
  by_age_.emplace(now, id);
  occupancy_ += size_bytes;
  return outcome;
}

void BundleStore::remove(std::map<BundleId, StoredEntry>::iterator it) {
  occupancy_ -= it->second.size_bytes;
  by_age_.erase({it->second.stored_at, it->first});
  entries_.erase(it);
}

std::vector<BundleId> BundleStore::expire(double now) {
  clock_ = std::max(clock_, now);
  std::vector<BundleId> purged;
  for (auto it = entries_.begin(); it != entries_.end();) {
    auto next = std::next(it);
    if (it->second.expires_at <= now) {
      purged.push_back(it->first);
      remove(it);
    }
    it = next;
  }
  return purged;
}

SummaryVector BundleStore::summary_vector() const { return summary_vector(clock_); }

SummaryVector BundleStore::summary_vector(double now) const {
  SummaryVector out;
  for (const auto& [id, entry] : entries_) {
    if (entry.expires_at > now) {
      out.insert(out.end(), id);
    }
  }
  return out;
}

const StoredEntry* BundleStore::find(const BundleId& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

bool BundleStore::erase(const BundleId& id) {
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    return false;
  }
  remove(it);
  return true;
}

void BundleStore::save_snapshot(const std::filesystem::path& path) const {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(kSnapshotVersion);
  data::append_sdnv(out, entries_.size());
  for (const auto& [stored_at, id] : by_age_) {
    const auto& entry = entries_.at(id);
    data::append_sdnv(out, static_cast<std::uint64_t>(std::llround(stored_at * 1000.0)));
    const auto bytes = data::serialize_bundle(entry.bundle);
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) {
    throw std::runtime_error("cannot write snapshot " + path.string());
  }
}

void BundleStore::load_snapshot(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open snapshot " + path.string());
  }
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                        std::istreambuf_iterator<char>());
  if (bytes.size() < kMagic.size() + 1 ||
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw std::runtime_error("not a bundle store snapshot: " + path.string());
  }
  if (bytes[kMagic.size()] != kSnapshotVersion) {
    throw std::runtime_error("unsupported snapshot version " +
                             std::to_string(bytes[kMagic.size()]));
  }
  std::size_t cursor = kMagic.size() + 1;
  std::uint64_t count = 0;
  try {
    const auto c = data::decode_sdnv(bytes, cursor);
    count = c.value;
    cursor += c.consumed;
  } catch (const MalformedSdnv& e) {
    throw MalformedBundle(e.position(), "bad snapshot count");
  }

  BundleStore fresh(capacity_);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t stored_ms = 0;
    try {
      const auto v = data::decode_sdnv(bytes, cursor);
      stored_ms = v.value;
      cursor += v.consumed;
    } catch (const MalformedSdnv& e) {
      throw MalformedBundle(e.position(), "bad snapshot timestamp");
    }
    auto bundle = data::deserialize_bundle(bytes, cursor);
    const double stored_at = static_cast<double>(stored_ms) / 1000.0;
    const auto id = bundle.id();
    const auto size = data::serialized_size(bundle);
    if (fresh.entries_.contains(id) || fresh.occupancy_ + size > capacity_) {
      throw std::runtime_error("snapshot entry " + id.str() + " violates store invariants");
    }
    const auto expires_at = static_cast<double>(bundle.expires_at());
    fresh.entries_.emplace(id, StoredEntry{std::move(bundle), id, stored_at, expires_at, size});
    fresh.by_age_.emplace(stored_at, id);
    fresh.occupancy_ += size;
    fresh.clock_ = std::max(fresh.clock_, stored_at);
  }
  if (cursor != bytes.size()) {
    throw MalformedBundle(cursor, "trailing bytes after snapshot");
  }
  fresh.delivered_ = std::move(delivered_);
  *this = std::move(fresh);
}

}  // namespace riverdtn::storage
