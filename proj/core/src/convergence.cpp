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

#include "riverdtn/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "riverdtn/error.hpp"

namespace riverdtn::net {

void LinkParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"range_m", range_m},
      {"rate_bps", rate_bps},
      {"discovery_interval_s", discovery_interval_s},
      {"inquiry_latency_s", inquiry_latency_s},
  };
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0)) {
      throw std::invalid_argument(std::string("link.") + name + " must be positive");
    }
  }
  if (!(max_contact_s >= 0.0)) {
    throw std::invalid_argument("link.max_contact_s must not be negative");
  }
}

std::string DeviceAddress::str() const {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x",
                static_cast<unsigned>((value_ >> 40) & 0xFF),
                static_cast<unsigned>((value_ >> 32) & 0xFF),
                static_cast<unsigned>((value_ >> 24) & 0xFF),
                static_cast<unsigned>((value_ >> 16) & 0xFF),
                static_cast<unsigned>((value_ >> 8) & 0xFF), static_cast<unsigned>(value_ & 0xFF));
  return buf;
}

double Contact::budget_bits_remaining(double now, const LinkParams& link) const {
  if (open()) {
    return kOpenEnded;
  }
  return std::max(0.0, (end - std::max(now, start)) * link.rate_bps);
}

std::vector<PeerEvent> DiscoveryAgent::run_discovery(
    double now, std::span<const std::pair<DeviceAddress, data::EndpointId>> in_range) {
  std::vector<const std::pair<DeviceAddress, data::EndpointId>*> seen;
  seen.reserve(in_range.size());
  for (const auto& entry : in_range) {
    seen.push_back(&entry);
  }
  std::sort(seen.begin(), seen.end(), [](auto* a, auto* b) { return a->first < b->first; });
  seen.erase(std::unique(seen.begin(), seen.end(),
                         [](auto* a, auto* b) { return a->first == b->first; }),
             seen.end());

  std::vector<PeerEvent> events;
  std::vector<PeerRecord> next;
  next.reserve(seen.size());
  auto old = peers_.begin();
  for (const auto* entry : seen) {
    while (old != peers_.end() && old->address < entry->first) {
      events.push_back({PeerEventKind::Disappeared, *old, now});
      ++old;
    }
    PeerRecord rec{entry->first, entry->second, now};
    if (old != peers_.end() && old->address == entry->first) {
      events.push_back({PeerEventKind::Refreshed, rec, now});
      ++old;
    } else {
      events.push_back({PeerEventKind::Appeared, rec, now});
    }
    next.push_back(std::move(rec));
  }
  for (; old != peers_.end(); ++old) {
    events.push_back({PeerEventKind::Disappeared, *old, now});
  }
  peers_ = std::move(next);
  return events;
}

std::optional<PeerEvent> DiscoveryAgent::lost(DeviceAddress address, double now) {
  auto it = std::lower_bound(peers_.begin(), peers_.end(), address,
                             [](const PeerRecord& p, DeviceAddress a) { return p.address < a; });
  if (it == peers_.end() || it->address != address) {
    return std::nullopt;
  }
  PeerEvent ev{PeerEventKind::Disappeared, *it, now};
  peers_.erase(it);
  return ev;
}

PeerEvent DiscoveryAgent::observe(const PeerRecord& peer) {
  auto it = std::lower_bound(peers_.begin(), peers_.end(), peer.address,
                             [](const PeerRecord& p, DeviceAddress a) { return p.address < a; });
  if (it != peers_.end() && it->address == peer.address) {
    *it = peer;
    return {PeerEventKind::Refreshed, peer, peer.last_seen};
  }
  peers_.insert(it, peer);
  return {PeerEventKind::Appeared, peer, peer.last_seen};
}

void DiscoveryAgent::refresh_all(double now) {
  for (auto& p : peers_) {
    p.last_seen = now;
  }
}

const PeerRecord* DiscoveryAgent::find(DeviceAddress address) const {
  auto it = std::lower_bound(peers_.begin(), peers_.end(), address,
                             [](const PeerRecord& p, DeviceAddress a) { return p.address < a; });
  return (it != peers_.end() && it->address == address) ? &*it : nullptr;
}

std::optional<DeviceAddress> DiscoveryAgent::address_of(const data::EndpointId& eid) const {
  for (const auto& p : peers_) {
    if (p.eid == eid) {
      return p.address;
    }
  }
  return std::nullopt;
}

TransferJob SimulatedBluetoothLayer::adapt_bundle(const data::Bundle& bundle,
                                                  const PeerRecord& peer) const {
  if (bundle.destination().is_null()) {
    throw NoRoute("bundle " + bundle.id().str() + " is addressed to the null endpoint");
  }
  return make_job(bundle.id(), data::serialized_size(bundle), peer);
}

TransferJob SimulatedBluetoothLayer::make_job(const data::BundleId& id, std::size_t wire_bytes,
                                              const PeerRecord& peer) const {
  const auto address = agent_.address_of(peer.eid);
  if (!address || *address != peer.address) {
    throw UnknownPeer("peer " + peer.address.str() + " (" + peer.eid.str() +
                      ") is not in the neighbor table");
  }
  return TransferJob{id, *address, wire_bytes};
}

double SimulatedBluetoothLayer::transfer_duration(const TransferJob& job,
                                                  const Contact& contact) const {
  const double setup = contact.setup_done ? 0.0 : params_.inquiry_latency_s;
  const double airtime = std::isinf(params_.rate_bps) ? 0.0 : job.bits() / params_.rate_bps;
  return setup + airtime;
}

TransferResult SimulatedBluetoothLayer::transmit(const TransferJob& job, Contact& contact,
                                                 double started_at) const {
  const double setup = contact.setup_done ? 0.0 : params_.inquiry_latency_s;
  const double duration = transfer_duration(job, contact);
  const double available = contact.end - started_at;
  if (duration <= available) {
    contact.setup_done = true;
    contact.bits_sent += job.bits();
    return {TransferResult::Kind::Completed, started_at + duration, job.bits()};
  }
  const double airtime = std::max(0.0, available - setup);
  const double sent = std::min(job.bits(), airtime * params_.rate_bps);
  contact.setup_done = contact.setup_done || available >= setup;
  contact.bits_sent += sent;
  return {TransferResult::Kind::Aborted, 0.0, sent};
}

}  // namespace riverdtn::net
