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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "riverdtn/bundle.hpp"
#include "riverdtn/content.hpp"
#include "riverdtn/convergence.hpp"
#include "riverdtn/routing.hpp"
#include "riverdtn/storage.hpp"

namespace riverdtn::sim {

using NodeIndex = std::size_t;

/// Per content class tallies accumulated by a network.
struct ClassCounters {
  std::uint64_t created = 0;
  std::uint64_t delivered = 0;  // first copies at the intended destination
  double latency_sum_s = 0.0;
  double bits_transmitted = 0.0;  // includes aborted airtime
  double compression_ratio_sum = 0.0;
};

/// Checks on link-layer behavior gathered over a run.
struct LinkAudit {
  std::uint64_t contacts = 0;
  std::uint64_t transfers_completed = 0;
  std::uint64_t transfers_aborted = 0;
  std::uint64_t budget_violations = 0;   // contact carried more than rate x duration
  std::uint64_t partial_deliveries = 0;  // bundle stored from an incomplete transfer
  std::uint64_t late_deliveries = 0;     // delivered at or after expiry
  std::uint64_t half_duplex_violations = 0;
  double min_budget_slack_bits = 0.0;    // min over contacts of rate x duration - bits
};

struct Reception {
  NodeIndex node;
  data::BundleId id;
  double at;
};

struct NetworkOptions {
  net::LinkParams link;
  std::size_t buffer_bytes = 1000ULL * 1024 * 1024;
  bool record_receptions = false;
  bool deliverable_first = false;  // see routing::EpidemicRouter
  /// Destinations drop delivered bundles and peers that meet a destination
  /// drop their copies of what it has received.
  bool immunity = false;
};

/// Nodes (store + epidemic router + simulated Bluetooth layer) and the links
/// between them. Links come and go through link_up/link_down; transfers run
/// in continuous time, one per node at a time (half duplex), alternating
/// direction within a link. Driven by a single thread.
class Network {
public:
  Network(NetworkOptions options, std::vector<data::EndpointId> node_eids);
  ~Network();
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  std::size_t size() const noexcept { return nodes_.size(); }
  const data::EndpointId& eid(NodeIndex n) const;
  net::DeviceAddress address(NodeIndex n) const;
  std::optional<NodeIndex> node_of(const data::EndpointId& eid) const;

  storage::BundleStore& store(NodeIndex n);
  const storage::BundleStore& store(NodeIndex n) const;
  routing::EpidemicRouter& router(NodeIndex n);
  net::SimulatedBluetoothLayer& link_layer(NodeIndex n);

  /// Declares a freshly created bundle and the class its deliveries and
  /// airtime count towards.
  void register_bundle(const data::Bundle& bundle, ContentClass cls, double compression_ratio,
                       double now);

  /// Idealized local hop (e.g. a pier server's Wi-Fi). Returns true when the
  /// node stored the bundle.
  bool inject(NodeIndex node, const data::Bundle& bundle, double now);

  /// Opens a contact; both routers exchange summary vectors.
  void link_up(NodeIndex a, NodeIndex b, double now);
  /// Range broken: aborts any transfer on the link and closes the contact.
  void link_down(NodeIndex a, NodeIndex b, double now);
  bool linked(NodeIndex a, NodeIndex b) const;

  /// Runs transfer completions scheduled at or before t.
  void advance_to(double t);
  /// Earliest pending completion, if any.
  std::optional<double> next_event_time() const;

  /// Purges expired bundles from every store.
  void expire(double now);

  bool busy(NodeIndex n) const;
  const std::array<ClassCounters, 3>& counters() const noexcept { return counters_; }
  const LinkAudit& audit() const noexcept { return audit_; }
  const std::vector<Reception>& receptions() const noexcept { return receptions_; }

private:
  struct Node;
  struct Link;
  struct Transfer;
  struct BundleMeta {
    ContentClass cls;
    double created_at;
    std::optional<NodeIndex> destination;
  };

  using LinkKey = std::pair<NodeIndex, NodeIndex>;
  static LinkKey key(NodeIndex a, NodeIndex b) { return a < b ? LinkKey{a, b} : LinkKey{b, a}; }

  void dispatch();
  void try_start(NodeIndex n, double now);
  bool start_on_link(Link& link, double now);
  void complete(std::uint64_t transfer_id);
  void purge_delivered(Node& holder, const Node& destination);
  void on_stored(NodeIndex node, const data::Bundle& bundle, const data::BundleId& id,
                 double now);
  void close_contact_audit(const Link& link);
  data::Bundle decompressed(const data::Bundle& bundle);

  NetworkOptions options_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::map<data::EndpointId, NodeIndex> by_eid_;
  std::map<LinkKey, Link> links_;
  std::map<std::uint64_t, Transfer> transfers_;
  std::priority_queue<std::pair<double, std::uint64_t>, std::vector<std::pair<double, std::uint64_t>>,
                      std::greater<>>
      completions_;
  std::uint64_t next_transfer_ = 0;
  routing::EventSwitch switch_;
  std::map<data::BundleId, BundleMeta> meta_;
  std::map<const void*, std::pair<SharedBytes, SharedBytes>> inflated_;  // payload -> plain
  std::array<ClassCounters, 3> counters_{};
  LinkAudit audit_;
  std::vector<Reception> receptions_;
};

}  // namespace riverdtn::sim
