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

#include "riverdtn/network.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "riverdtn/compression.hpp"

namespace riverdtn::sim {

namespace {
constexpr std::uint64_t kAddressBase = 0x00'1A'7D'DA'00'00ULL;
constexpr double kBudgetEpsilonBits = 1e-6;
}  // namespace

struct Network::Node {
  Node(data::EndpointId eid_, net::DeviceAddress address_, const NetworkOptions& options)
      : eid(std::move(eid_)), address(address_), store(options.buffer_bytes), router(store, options.deliverable_first),
        link_layer(options.link) {}

  data::EndpointId eid;
  net::DeviceAddress address;
  storage::BundleStore store;
  routing::EpidemicRouter router;
  net::SimulatedBluetoothLayer link_layer;
  std::vector<NodeIndex> neighbors;  // linked peers, sorted
  bool busy = false;
};

struct Network::Link {
  NodeIndex a;
  NodeIndex b;
  net::Contact contact;
  std::optional<NodeIndex> last_sender;
  std::optional<std::uint64_t> active;
};

struct Network::Transfer {
  LinkKey link;
  NodeIndex sender;
  NodeIndex receiver;
  net::TransferJob job;
  data::Bundle bundle;
  double started_at;
};

Network::Network(NetworkOptions options, std::vector<data::EndpointId> node_eids)
    : options_(options) {
  nodes_.reserve(node_eids.size());
  for (std::size_t i = 0; i < node_eids.size(); ++i) {
    if (!by_eid_.emplace(node_eids[i], i).second) {
      throw std::invalid_argument("duplicate node EID " + node_eids[i].str());
    }
    nodes_.push_back(std::make_unique<Node>(std::move(node_eids[i]),
                                            net::DeviceAddress(kAddressBase + i), options_));
  }
}

Network::~Network() = default;

const data::EndpointId& Network::eid(NodeIndex n) const { return nodes_.at(n)->eid; }
net::DeviceAddress Network::address(NodeIndex n) const { return nodes_.at(n)->address; }

std::optional<NodeIndex> Network::node_of(const data::EndpointId& eid) const {
  auto it = by_eid_.find(eid);
  return it == by_eid_.end() ? std::nullopt : std::optional<NodeIndex>(it->second);
}

storage::BundleStore& Network::store(NodeIndex n) { return nodes_.at(n)->store; }
const storage::BundleStore& Network::store(NodeIndex n) const { return nodes_.at(n)->store; }
routing::EpidemicRouter& Network::router(NodeIndex n) { return nodes_.at(n)->router; }
net::SimulatedBluetoothLayer& Network::link_layer(NodeIndex n) { return nodes_.at(n)->link_layer; }
bool Network::busy(NodeIndex n) const { return nodes_.at(n)->busy; }

void Network::register_bundle(const data::Bundle& bundle, ContentClass cls,
                              double compression_ratio, double now) {
  auto [it, fresh] = meta_.emplace(bundle.id(), BundleMeta{cls, now, node_of(bundle.destination())});
  if (!fresh) {
    throw std::invalid_argument("bundle " + it->first.str() + " registered twice");
  }
  auto& c = counters_[index_of(cls)];
  ++c.created;
  c.compression_ratio_sum += compression_ratio;
}

bool Network::inject(NodeIndex node, const data::Bundle& bundle, double now) {
  auto& n = *nodes_.at(node);
  const auto id = bundle.id();
  const auto outcome = n.store.store(bundle, id, data::serialized_size(bundle), now);
  if (outcome.status != storage::StoreStatus::Stored) {
    return false;
  }
  on_stored(node, bundle, id, now);
  dispatch();
  try_start(node, now);
  return true;
}

void Network::on_stored(NodeIndex node, const data::Bundle& bundle, const data::BundleId& id,
                        double now) {
  auto& n = *nodes_[node];
  if (options_.record_receptions) {
    receptions_.push_back({node, id, now});
  }
  switch_.post(node, {routing::BundleStored{id}, now});

  auto meta = meta_.find(id);
  if (meta == meta_.end() || meta->second.destination != node) {
    return;
  }
  if (routing::deliver_local(decompressed(bundle), n.eid, n.store) ==
      routing::DeliveryOutcome::DeliveredFirstCopy) {
    if (now >= static_cast<double>(bundle.expires_at())) {
      ++audit_.late_deliveries;
    }
    auto& c = counters_[index_of(meta->second.cls)];
    ++c.delivered;
    c.latency_sum_s += now - meta->second.created_at;
  }
  if (options_.immunity) {
    n.store.erase(id);
  }
}

void Network::purge_delivered(Node& holder, const Node& destination) {
  for (const auto& id : destination.store.delivered()) {
    holder.store.erase(id);
  }
}

data::Bundle Network::decompressed(const data::Bundle& bundle) {
  if (!bundle.payload.compressed()) {
    return bundle;
  }
  auto it = inflated_.find(bundle.payload.data.identity());
  if (it == inflated_.end()) {
    auto plain = compression::decompress_bundle(bundle);
    it = inflated_.emplace(bundle.payload.data.identity(),
                           std::make_pair(bundle.payload.data, plain.payload.data))
             .first;
  }
  data::Bundle out = bundle;
  out.payload.flags &= ~data::payload_flags::kDeflateCompressed;
  out.payload.data = it->second.second;
  return out;
}

void Network::dispatch() {
  switch_.drain([this](std::size_t target, const routing::RouterEvent& event) {
    // Enqueue actions are already reflected in the router's queues; a
    // CloseConnection only means the link stays idle until something new
    // is stored.
    (void)nodes_[target]->router.handle(event);
  });
}

bool Network::linked(NodeIndex a, NodeIndex b) const { return links_.contains(key(a, b)); }

void Network::link_up(NodeIndex a, NodeIndex b, double now) {
  if (a == b) {
    throw std::invalid_argument("node cannot link to itself");
  }
  const auto k = key(a, b);
  if (links_.contains(k)) {
    return;
  }
  auto& na = *nodes_.at(a);
  auto& nb = *nodes_.at(b);
  const net::PeerRecord rec_b{nb.address, nb.eid, now};
  const net::PeerRecord rec_a{na.address, na.eid, now};
  na.link_layer.agent().observe(rec_b);
  nb.link_layer.agent().observe(rec_a);

  Link link{k.first, k.second, net::Contact{rec_b, now}, std::nullopt, std::nullopt};
  links_.emplace(k, std::move(link));
  na.neighbors.insert(std::lower_bound(na.neighbors.begin(), na.neighbors.end(), b), b);
  nb.neighbors.insert(std::lower_bound(nb.neighbors.begin(), nb.neighbors.end(), a), a);
  ++audit_.contacts;
  if (options_.immunity) {
    purge_delivered(na, nb);
    purge_delivered(nb, na);
  }

  switch_.post(a, {routing::PeerAppeared{rec_b, nb.store.summary_vector(now)}, now});
  switch_.post(b, {routing::PeerAppeared{rec_a, na.store.summary_vector(now)}, now});
  dispatch();
  try_start(k.first, now);
  try_start(k.second, now);
}

void Network::close_contact_audit(const Link& link) {
  const double duration = link.contact.end - link.contact.start;
  const double slack = duration * options_.link.rate_bps - link.contact.bits_sent;
  if (audit_.contacts == 1 || slack < audit_.min_budget_slack_bits) {
    audit_.min_budget_slack_bits = slack;
  }
  if (slack < -kBudgetEpsilonBits) {
    ++audit_.budget_violations;
  }
}

void Network::link_down(NodeIndex a, NodeIndex b, double now) {
  auto it = links_.find(key(a, b));
  if (it == links_.end()) {
    return;
  }
  Link& link = it->second;
  link.contact.end = now;
  if (link.active) {
    auto tr = transfers_.find(*link.active);
    auto& t = tr->second;
    auto& sender = *nodes_[t.sender];
    const auto result = sender.link_layer.transmit(t.job, link.contact, t.started_at);
    assert(!result.completed());
    const auto meta = meta_.find(t.job.bundle);
    if (meta != meta_.end()) {
      counters_[index_of(meta->second.cls)].bits_transmitted += result.bits_sent;
    }
    ++audit_.transfers_aborted;
    switch_.post(t.sender,
                 {routing::TransferAborted{t.job.bundle, nodes_[t.receiver]->address}, now});
    nodes_[t.sender]->busy = false;
    nodes_[t.receiver]->busy = false;
    transfers_.erase(tr);
  }
  close_contact_audit(link);

  auto& na = *nodes_[a];
  auto& nb = *nodes_[b];
  na.neighbors.erase(std::find(na.neighbors.begin(), na.neighbors.end(), b));
  nb.neighbors.erase(std::find(nb.neighbors.begin(), nb.neighbors.end(), a));
  na.link_layer.agent().lost(nb.address, now);
  nb.link_layer.agent().lost(na.address, now);
  links_.erase(it);

  switch_.post(a, {routing::PeerDisappeared{nb.address}, now});
  switch_.post(b, {routing::PeerDisappeared{na.address}, now});
  dispatch();
  try_start(std::min(a, b), now);
  try_start(std::max(a, b), now);
}

void Network::try_start(NodeIndex n, double now) {
  if (nodes_[n]->busy) {
    return;
  }
  const auto neighbors = nodes_[n]->neighbors;
  for (NodeIndex peer : neighbors) {
    if (nodes_[peer]->busy) {
      continue;
    }
    if (start_on_link(links_.at(key(n, peer)), now)) {
      return;
    }
  }
}

bool Network::start_on_link(Link& link, double now) {
  // Alternate direction: whoever did not send last goes first.
  NodeIndex first = link.a;
  if (link.last_sender) {
    first = *link.last_sender == link.a ? link.b : link.a;
  }
  for (NodeIndex sender : {first, first == link.a ? link.b : link.a}) {
    const NodeIndex receiver = sender == link.a ? link.b : link.a;
    auto& s = *nodes_[sender];
    auto& r = *nodes_[receiver];
    const auto id = s.router.next_transfer(r.address, now, [&r](const data::BundleId& bid) {
      return r.store.contains(bid) || r.store.was_delivered(bid);
    });
    if (!id) {
      continue;
    }
    const auto* entry = s.store.find(*id);
    const auto* peer = s.link_layer.agent().find(r.address);
    auto job = s.link_layer.make_job(*id, entry->size_bytes, *peer);
    const double done = now + s.link_layer.transfer_duration(job, link.contact);

    if (s.busy || r.busy) {
      ++audit_.half_duplex_violations;
    }
    const std::uint64_t tid = next_transfer_++;
    transfers_.emplace(tid, Transfer{key(sender, receiver), sender, receiver, std::move(job),
                                     entry->bundle, now});
    completions_.emplace(done, tid);
    link.active = tid;
    link.last_sender = sender;
    s.busy = true;
    r.busy = true;
    return true;
  }
  return false;
}

void Network::complete(std::uint64_t transfer_id) {
  auto tr = transfers_.find(transfer_id);
  if (tr == transfers_.end()) {
    return;  // aborted earlier
  }
  Transfer t = std::move(tr->second);
  transfers_.erase(tr);
  Link& link = links_.at(t.link);
  link.active.reset();

  auto& s = *nodes_[t.sender];
  auto& r = *nodes_[t.receiver];
  const auto result = s.link_layer.transmit(t.job, link.contact, t.started_at);
  const double now = result.completed_at;
  s.busy = false;
  r.busy = false;
  ++audit_.transfers_completed;
  if (!result.completed() || result.bits_sent < t.job.bits()) {
    ++audit_.partial_deliveries;
  }
  const auto meta = meta_.find(t.job.bundle);
  if (meta != meta_.end()) {
    counters_[index_of(meta->second.cls)].bits_transmitted += result.bits_sent;
  }

  switch_.post(t.sender, {routing::TransferCompleted{t.job.bundle, r.address}, now});
  const auto outcome = r.store.store(t.bundle, t.job.bundle, t.job.bytes, now);
  if (outcome.status == storage::StoreStatus::Stored) {
    on_stored(t.receiver, t.bundle, t.job.bundle, now);
  }
  dispatch();
  try_start(t.sender, now);
  try_start(t.receiver, now);
}

std::optional<double> Network::next_event_time() const {
  if (completions_.empty()) {
    return std::nullopt;
  }
  return completions_.top().first;
}

void Network::advance_to(double t) {
  while (!completions_.empty() && completions_.top().first <= t) {
    const auto [at, id] = completions_.top();
    completions_.pop();
    complete(id);
  }
}

void Network::expire(double now) {
  for (auto& n : nodes_) {
    n->store.expire(now);
  }
}

}  // namespace riverdtn::sim
