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
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <variant>
#include <vector>

#include "riverdtn/bundle.hpp"
#include "riverdtn/convergence.hpp"
#include "riverdtn/storage.hpp"

namespace riverdtn::routing {

using data::BundleId;
using net::DeviceAddress;
using storage::SummaryVector;

struct PeerAppeared {
  net::PeerRecord peer;
  SummaryVector summary;  // what the peer sent during the handshake
};
struct PeerDisappeared {
  DeviceAddress address;
};
struct BundleStored {
  BundleId id;
};
struct TransferCompleted {
  BundleId id;
  DeviceAddress peer;
};
struct TransferAborted {
  BundleId id;
  DeviceAddress peer;
};

/// Everything the router reacts to. Dispatch order at equal timestamps is
/// fixed by priority(): transfer outcomes, then departures, arrivals, and
/// finally newly stored bundles; remaining ties go by bundle id.
struct RouterEvent {
  std::variant<TransferCompleted, TransferAborted, PeerDisappeared, PeerAppeared, BundleStored>
      what;
  double at = 0.0;

  int priority() const noexcept { return static_cast<int>(what.index()); }
  const BundleId* bundle() const noexcept;
};

/// Deterministic ordered dispatch of router events.
class EventSwitch {
public:
  using Handler = std::function<void(std::size_t target, const RouterEvent&)>;

  void post(std::size_t target, RouterEvent event);
  bool empty() const noexcept { return queue_.empty(); }
  std::size_t size() const noexcept { return queue_.size(); }

  /// Dispatches queued events in (time, priority, bundle id, target, post
  /// order) order until the queue is empty. Handlers may post more events.
  void drain(const Handler& handler);

private:
  struct Entry {
    RouterEvent event;
    std::size_t target;
    std::uint64_t seq;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const;
  };
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  std::uint64_t next_seq_ = 0;
};

struct Enqueue {
  DeviceAddress peer;
  BundleId id;
};
struct CloseConnection {
  DeviceAddress peer;
};
using RouterAction = std::variant<Enqueue, CloseConnection>;

/// Per-peer queue of bundles waiting for the channel; no id appears twice.
/// Entries pushed with `direct` (bundles addressed to the peer itself) are
/// popped before all others; each lane is FIFO.
class TransferQueue {
public:
  bool push(const BundleId& id, bool direct = false);
  std::optional<BundleId> pop();
  bool contains(const BundleId& id) const { return members_.contains(id); }
  bool empty() const noexcept { return direct_.empty() && relay_.empty(); }
  std::size_t size() const noexcept { return direct_.size() + relay_.size(); }
  void clear();
  /// Pop order.
  std::vector<BundleId> items() const;

private:
  std::deque<BundleId> direct_;
  std::deque<BundleId> relay_;
  std::set<BundleId> members_;
};

enum class DeliveryOutcome { DeliveredFirstCopy, DuplicateCopy, NotForMe };

/// Local delivery against the store's delivered-id memory. The bundle stays
/// stored for relaying either way.
DeliveryOutcome deliver_local(const data::Bundle& bundle, const data::EndpointId& node_eid,
                              storage::BundleStore& store);

/// Pluggable routing contract.
class RoutingProtocol {
public:
  virtual ~RoutingProtocol() = default;
  virtual std::vector<RouterAction> handle(const RouterEvent& event) = 0;
  virtual std::optional<BundleId> next_transfer(DeviceAddress peer, double now,
                                                const std::function<bool(const BundleId&)>&
                                                    peer_holds) = 0;
};

/// Epidemic routing: on contact, exchange summary vectors and queue every
/// bundle the peer lacks, oldest creation first; newly stored bundles are
/// queued for every current peer whose last summary lacked them. With
/// deliverable_first, bundles addressed to the peer go ahead of the rest.
class EpidemicRouter final : public RoutingProtocol {
public:
  explicit EpidemicRouter(storage::BundleStore& store, bool deliverable_first = false)
      : store_(&store), deliverable_first_(deliverable_first) {}

  std::vector<RouterAction> handle(const RouterEvent& event) override;

  std::vector<RouterAction> on_peer_appeared(const net::PeerRecord& peer,
                                             const SummaryVector& peer_summary, double now);
  void on_peer_disappeared(DeviceAddress peer);
  std::vector<RouterAction> on_bundle_stored(const BundleId& id, double now);
  void on_transfer_completed(const BundleId& id, DeviceAddress peer);
  void on_transfer_aborted(const BundleId& id, DeviceAddress peer);

  /// Pops the next bundle for peer, skipping entries that were purged,
  /// expired (expires_at <= now), or that peer_holds() reports the peer
  /// already has; those are recorded in the peer's known summary.
  std::optional<BundleId> next_transfer(
      DeviceAddress peer, double now,
      const std::function<bool(const BundleId&)>& peer_holds) override;

  bool in_contact(DeviceAddress peer) const { return peers_.contains(peer); }
  const TransferQueue* queue(DeviceAddress peer) const;
  const SummaryVector* known_summary(DeviceAddress peer) const;
  std::size_t contact_count() const noexcept { return peers_.size(); }

private:
  struct PeerState {
    net::PeerRecord record;
    SummaryVector known;
    TransferQueue queue;
  };

  bool sendable(const storage::StoredEntry& entry, double now) const {
    return entry.expires_at > now;
  }

  bool direct(const storage::StoredEntry& entry, const PeerState& peer) const {
    return deliverable_first_ && entry.bundle.destination() == peer.record.eid;
  }

  storage::BundleStore* store_;
  bool deliverable_first_;
  std::map<DeviceAddress, PeerState> peers_;
};

}  // namespace riverdtn::routing
