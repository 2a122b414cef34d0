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

#include "riverdtn/routing.hpp"

#include <algorithm>
#include <tuple>

namespace riverdtn::routing {

const BundleId* RouterEvent::bundle() const noexcept {
  return std::visit(
      [](const auto& e) -> const BundleId* {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, TransferCompleted> || std::is_same_v<T, TransferAborted> ||
                      std::is_same_v<T, BundleStored>) {
          return &e.id;
        } else {
          return nullptr;
        }
      },
      what);
}

bool EventSwitch::Later::operator()(const Entry& a, const Entry& b) const {
  if (a.event.at != b.event.at) {
    return a.event.at > b.event.at;
  }
  if (a.event.priority() != b.event.priority()) {
    return a.event.priority() > b.event.priority();
  }
  const BundleId* ia = a.event.bundle();
  const BundleId* ib = b.event.bundle();
  if (ia && ib && *ia != *ib) {
    return *ia > *ib;
  }
  if (a.target != b.target) {
    return a.target > b.target;
  }
  return a.seq > b.seq;
}

void EventSwitch::post(std::size_t target, RouterEvent event) {
  queue_.push(Entry{std::move(event), target, next_seq_++});
}

void EventSwitch::drain(const Handler& handler) {
  while (!queue_.empty()) {
    Entry e = queue_.top();
    queue_.pop();
    handler(e.target, e.event);
  }
}

bool TransferQueue::push(const BundleId& id, bool direct) {
  if (!members_.insert(id).second) {
    return false;
  }
  (direct ? direct_ : relay_).push_back(id);
  return true;
}

std::optional<BundleId> TransferQueue::pop() {
  auto& lane = direct_.empty() ? relay_ : direct_;
  if (lane.empty()) {
    return std::nullopt;
  }
  BundleId id = std::move(lane.front());
  lane.pop_front();
  members_.erase(id);
  return id;
}

void TransferQueue::clear() {
  direct_.clear();
  relay_.clear();
  members_.clear();
}

std::vector<BundleId> TransferQueue::items() const {
  std::vector<BundleId> out(direct_.begin(), direct_.end());
  out.insert(out.end(), relay_.begin(), relay_.end());
  return out;
}

DeliveryOutcome deliver_local(const data::Bundle& bundle, const data::EndpointId& node_eid,
                              storage::BundleStore& store) {
  if (bundle.destination() != node_eid) {
    return DeliveryOutcome::NotForMe;
  }
  return store.mark_delivered(bundle.id()) ? DeliveryOutcome::DeliveredFirstCopy
                                           : DeliveryOutcome::DuplicateCopy;
}

std::vector<RouterAction> EpidemicRouter::handle(const RouterEvent& event) {
  return std::visit(
      [&](const auto& e) -> std::vector<RouterAction> {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, PeerAppeared>) {
          return on_peer_appeared(e.peer, e.summary, event.at);
        } else if constexpr (std::is_same_v<T, PeerDisappeared>) {
          on_peer_disappeared(e.address);
          return {};
        } else if constexpr (std::is_same_v<T, BundleStored>) {
          return on_bundle_stored(e.id, event.at);
        } else if constexpr (std::is_same_v<T, TransferCompleted>) {
          on_transfer_completed(e.id, e.peer);
          return {};
        } else {
          on_transfer_aborted(e.id, e.peer);
          return {};
        }
      },
      event.what);
}

std::vector<RouterAction> EpidemicRouter::on_peer_appeared(const net::PeerRecord& peer,
                                                           const SummaryVector& peer_summary,
                                                           double now) {
  auto& state = peers_[peer.address];
  state.record = peer;
  state.known = peer_summary;
  state.queue.clear();

  std::vector<const storage::StoredEntry*> missing;
  for (const auto& [id, entry] : store_->entries()) {
    if (sendable(entry, now) && !peer_summary.contains(id)) {
      missing.push_back(&entry);
    }
  }
  std::sort(missing.begin(), missing.end(), [](const auto* a, const auto* b) {
    return std::tie(a->bundle.primary.creation_time, a->id) <
           std::tie(b->bundle.primary.creation_time, b->id);
  });

  std::vector<RouterAction> actions;
  if (missing.empty()) {
    actions.emplace_back(CloseConnection{peer.address});
    return actions;
  }
  actions.reserve(missing.size());
  for (const auto* entry : missing) {
    state.queue.push(entry->id, direct(*entry, state));
    actions.emplace_back(Enqueue{peer.address, entry->id});
  }
  return actions;
}

void EpidemicRouter::on_peer_disappeared(DeviceAddress peer) { peers_.erase(peer); }

std::vector<RouterAction> EpidemicRouter::on_bundle_stored(const BundleId& id, double now) {
  std::vector<RouterAction> actions;
  const auto* entry = store_->find(id);
  if (!entry || !sendable(*entry, now)) {
    return actions;
  }
  for (auto& [address, state] : peers_) {
    if (!state.known.contains(id) && state.queue.push(id, direct(*entry, state))) {
      actions.emplace_back(Enqueue{address, id});
    }
  }
  return actions;
}

void EpidemicRouter::on_transfer_completed(const BundleId& id, DeviceAddress peer) {
  if (auto it = peers_.find(peer); it != peers_.end()) {
    it->second.known.insert(id);
  }
}

void EpidemicRouter::on_transfer_aborted(const BundleId&, DeviceAddress) {
  // Aborts only happen when the contact ends; the queue goes with it.
}

std::optional<BundleId> EpidemicRouter::next_transfer(
    DeviceAddress peer, double now, const std::function<bool(const BundleId&)>& peer_holds) {
  auto it = peers_.find(peer);
  if (it == peers_.end()) {
    return std::nullopt;
  }
  auto& state = it->second;
  while (auto id = state.queue.pop()) {
    const auto* entry = store_->find(*id);
    if (!entry || !sendable(*entry, now) || state.known.contains(*id)) {
      continue;
    }
    if (peer_holds && peer_holds(*id)) {
      state.known.insert(*id);
      continue;
    }
    return id;
  }
  return std::nullopt;
}

const TransferQueue* EpidemicRouter::queue(DeviceAddress peer) const {
  auto it = peers_.find(peer);
  return it == peers_.end() ? nullptr : &it->second.queue;
}

const SummaryVector* EpidemicRouter::known_summary(DeviceAddress peer) const {
  auto it = peers_.find(peer);
  return it == peers_.end() ? nullptr : &it->second.known;
}

}  // namespace riverdtn::routing
