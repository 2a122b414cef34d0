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

#include "riverdtn/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "riverdtn/contacts.hpp"
#include "riverdtn/mobility.hpp"
#include "riverdtn/payload.hpp"
#include "riverdtn/random.hpp"

namespace riverdtn::sim {

namespace {

constexpr std::uint64_t kMobilityStream = 1;
constexpr double kExpireInterval = 60.0;
constexpr double kTimeEpsilon = 1e-9;

data::EndpointId dtn(std::string name) { return data::EndpointId{"dtn", "//" + std::move(name)}; }

double metric_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

/// One bundle source feeding a fixed set of nodes.
struct Server {
  data::EndpointId eid;
  std::optional<std::size_t> pier_vertex;  // riverside piers
  std::uint64_t next_seq = 0;
  std::array<std::size_t, 3> next_destination{};
  std::vector<data::Bundle> pending;  // created, not yet expired
};

struct Creation {
  double at;
  std::size_t server;
  std::size_t workload;
  std::uint64_t ordinal;  // within (server, workload)

  auto operator<=>(const Creation&) const = default;
};

/// Creation times of one day's bundles for a workload, evenly spaced inside
/// the window.
std::vector<double> day_schedule(const TrafficSpec& w) {
  std::vector<double> out;
  const double span = w.window_s.hi - w.window_s.lo;
  for (std::uint32_t k = 0; k < w.per_day; ++k) {
    out.push_back(std::floor(w.window_s.lo + (static_cast<double>(k) + 0.5) * span / w.per_day));
  }
  return out;
}

std::vector<Creation> creation_plan(const ScenarioConfig& c, std::size_t servers) {
  std::vector<Creation> plan;
  const auto days = static_cast<std::uint64_t>(std::ceil(c.duration_s / kDay));
  for (std::size_t s = 0; s < servers; ++s) {
    for (std::size_t w = 0; w < c.workloads.size(); ++w) {
      const auto times = day_schedule(c.workloads[w]);
      std::uint64_t ordinal = 0;
      for (std::uint64_t d = 0; d < days; ++d) {
        for (double t : times) {
          const double at = static_cast<double>(d) * kDay + t;
          if (at < c.duration_s) {
            plan.push_back({at, s, w, ordinal++});
          }
        }
      }
    }
  }
  std::sort(plan.begin(), plan.end());
  return plan;
}

class World {
public:
  World(const ScenarioConfig& config, const TickObserver& observer)
      : config_(config), observer_(observer) {
    if (config.kind == ScenarioKind::Riverside) {
      auto river = std::make_unique<RiverWorld>(config, mix_seed(config.seed, kMobilityStream));
      river_ = river.get();
      mobility_ = std::move(river);
      for (std::size_t i = 0; i < river_->travelers(); ++i) {
        eids_.push_back(dtn("traveler-" + std::to_string(i)));
      }
      const auto per = config.nodes.residents_per_community;
      for (std::size_t i = 0; i < river_->residents(); ++i) {
        const auto idx = river_->travelers() + i;
        residents_.push_back(idx);
        eids_.push_back(dtn(std::string(kCommunities[i / per]) + "-resident-" +
                            std::to_string(i % per)));
      }
      servers_.push_back({dtn("pier-a"), river_->pier_vertex(0), 0, {}, {}});
      servers_.push_back({dtn("pier-b"), river_->pier_vertex(1), 0, {}, {}});
    } else {
      mobility_ = std::make_unique<WaypointWalk>(config.testbed.nodes, config.testbed.side_m,
                                                 config.people_speed_mps, config.testbed.pause_s,
                                                 mix_seed(config.seed, kMobilityStream));
      for (std::size_t i = 0; i < config.testbed.nodes; ++i) {
        eids_.push_back(dtn("node-" + std::to_string(i)));
        if (i > 0) {
          residents_.push_back(i);
        }
      }
      servers_.push_back({dtn("server"), std::nullopt, 0, {}, {}});
    }
    NetworkOptions options;
    options.link = config.link;
    options.buffer_bytes = config.buffer_bytes();
    options.deliverable_first = config.deliverable_first;
    options.immunity = config.immunity;
    network_ = std::make_unique<Network>(options, eids_);
    detector_ = std::make_unique<ContactDetector>(config.link.range_m, eids_.size());
    plan_ = creation_plan(config, servers_.size());
  }

  Metrics run() {
    const double duration = config_.duration_s;
    if (duration <= 0.0) {
      return summarize(network_->counters(), network_->audit());
    }
    for (const auto& e : detector_->reset(mobility_->positions())) {
      pending_.insert(e.pair);
    }
    double now = 0.0;
    discovery(now);
    while (now < duration) {
      const double dt = std::min(config_.tick_s, duration - now);
      mobility_->step(now, dt);
      const double end = now + dt;
      cut_long_contacts(end);
      network_->advance_to(end);
      for (const auto& e : detector_->update(mobility_->positions(), mobility_->moved())) {
        if (e.begins) {
          pending_.insert(e.pair);
        } else if (!pending_.erase(e.pair) && !spent_.erase(e.pair)) {
          network_->link_down(e.pair.first, e.pair.second, end);
          up_since_.erase(e.pair);
        }
      }
      if (river_) {
        for (const auto& [person, vertex] : river_->pier_arrivals()) {
          for (auto& s : servers_) {
            if (s.pier_vertex == vertex) {
              for (const auto& b : s.pending) {
                network_->inject(person, b, end);
              }
            }
          }
        }
      }
      while (next_creation_ < plan_.size() && plan_[next_creation_].at <= end + kTimeEpsilon) {
        create(plan_[next_creation_++]);
      }
      if (end + kTimeEpsilon >= next_round_) {
        discovery(end);
      }
      if (end + kTimeEpsilon >= next_expire_) {
        expire(end);
        next_expire_ += kExpireInterval;
      }
      if (observer_) {
        observer_(TickView{end, mobility_->positions(), *network_});
      }
      now = end;
    }
    return summarize(network_->counters(), network_->audit());
  }

private:
  void discovery(double now) {
    for (const auto& [a, b] : pending_) {
      network_->link_up(a, b, now);
      if (config_.link.max_contact_s > 0.0) {
        up_since_[{a, b}] = now;
        deadlines_.emplace(now + config_.link.max_contact_s, NodePair{a, b});
      }
    }
    pending_.clear();
    for (std::size_t n = 0; n < eids_.size(); ++n) {
      network_->link_layer(n).agent().refresh_all(now);
    }
    next_round_ += config_.link.discovery_interval_s;
  }

  /// Disconnects, in time order, links whose connection reached the cap by end.
  void cut_long_contacts(double end) {
    while (!deadlines_.empty() && deadlines_.begin()->first <= end + kTimeEpsilon) {
      const auto [at, pair] = *deadlines_.begin();
      deadlines_.erase(deadlines_.begin());
      auto it = up_since_.find(pair);
      if (it == up_since_.end() || it->second + config_.link.max_contact_s != at) {
        continue;
      }
      up_since_.erase(it);
      network_->advance_to(at);
      network_->link_down(pair.first, pair.second, at);
      spent_.insert(pair);
    }
  }


  void expire(double now) {
    network_->expire(now);
    for (auto& s : servers_) {
      std::erase_if(s.pending, [now](const data::Bundle& b) {
        return static_cast<double>(b.expires_at()) <= now;
      });
    }
  }

  void create(const Creation& c) {
    auto& server = servers_[c.server];
    const auto& w = config_.workloads[c.workload];
    const auto cls = w.content_class;
    auto& rr = server.next_destination[index_of(cls)];
    const std::size_t dest = residents_[rr++ % residents_.size()];
    const auto& payload =
        payload_variant(cls, w.target_ratio, config_.bundle_bytes(w),
                        static_cast<std::size_t>(c.ordinal % config_.payload_variants),
                        config_.compression);
    data::Bundle bundle;
    bundle.primary = data::PrimaryBlock::make(eids_[dest], server.eid, server.eid,
                                              data::EndpointId::null(),
                                              static_cast<std::uint64_t>(c.at), server.next_seq++,
                                              static_cast<std::uint64_t>(config_.ttl_s));
    bundle.payload = payload.wire;
    network_->register_bundle(bundle, cls, payload.report.ratio, c.at);
    if (server.pier_vertex) {
      for (std::size_t p = 0; p < river_->people().size(); ++p) {
        if (river_->at_pier(p, *server.pier_vertex)) {
          network_->inject(p, bundle, c.at);
        }
      }
    } else {
      network_->inject(0, bundle, c.at);
    }
    server.pending.push_back(std::move(bundle));
  }

  const ScenarioConfig& config_;
  const TickObserver& observer_;
  std::unique_ptr<Mobility> mobility_;
  RiverWorld* river_ = nullptr;
  std::vector<data::EndpointId> eids_;
  std::vector<std::size_t> residents_;  // destination nodes
  std::vector<Server> servers_;
  std::unique_ptr<Network> network_;
  std::unique_ptr<ContactDetector> detector_;
  std::set<NodePair> pending_;  // in range, waiting for the next inquiry round
  std::set<NodePair> spent_;    // in range, connection time used up
  std::map<NodePair, double> up_since_;
  std::multimap<double, NodePair> deadlines_;
  std::vector<Creation> plan_;
  std::size_t next_creation_ = 0;
  double next_round_ = 0.0;
  double next_expire_ = kExpireInterval;
};

std::mutex g_payload_mutex;
std::map<std::tuple<int, double, std::size_t, std::size_t, bool, int>,
         std::unique_ptr<PayloadVariant>>
    g_payloads;

}  // namespace

bool Metrics::operator==(const Metrics& o) const {
  return classes == o.classes && audit.contacts == o.audit.contacts &&
         audit.transfers_completed == o.audit.transfers_completed &&
         audit.transfers_aborted == o.audit.transfers_aborted &&
         audit.budget_violations == o.audit.budget_violations &&
         audit.partial_deliveries == o.audit.partial_deliveries &&
         audit.late_deliveries == o.audit.late_deliveries &&
         audit.half_duplex_violations == o.audit.half_duplex_violations &&
         audit.min_budget_slack_bits == o.audit.min_budget_slack_bits;
}

Metrics summarize(const std::array<ClassCounters, 3>& counters, const LinkAudit& audit) {
  Metrics m;
  m.audit = audit;
  for (std::size_t i = 0; i < counters.size(); ++i) {
    const auto& c = counters[i];
    auto& out = m.classes[i];
    out.created = c.created;
    out.delivered = c.delivered;
    out.delivery_ratio = metric_ratio(static_cast<double>(c.delivered), static_cast<double>(c.created));
    out.mean_latency_s = metric_ratio(c.latency_sum_s, static_cast<double>(c.delivered));
    out.bits_transmitted = c.bits_transmitted;
    out.mean_compression_ratio = metric_ratio(c.compression_ratio_sum, static_cast<double>(c.created));
  }
  return m;
}

const PayloadVariant& payload_variant(ContentClass cls, double target_ratio, std::size_t bytes,
                                      std::size_t variant,
                                      const compression::CompressionSetting& setting) {
  const auto key = std::make_tuple(static_cast<int>(cls), target_ratio, bytes, variant,
                                   setting.enabled, setting.level);
  {
    std::lock_guard lock(g_payload_mutex);
    if (auto it = g_payloads.find(key); it != g_payloads.end()) {
      return *it->second;
    }
  }
  // Built outside the lock; a racing duplicate is simply discarded.
  auto made = std::make_unique<PayloadVariant>();
  made->plain = SharedBytes(synthesize_payload(target_ratio, bytes, payload_seed(cls, variant),
                                               setting.level));
  data::Bundle carrier;
  carrier.primary = data::PrimaryBlock::make(data::EndpointId::null(), data::EndpointId::null(),
                                             data::EndpointId::null(), data::EndpointId::null(),
                                             0, 0, 1);
  carrier.payload.data = made->plain;
  auto [packed, report] = compression::compress_bundle(carrier, setting);
  made->wire = packed.payload;
  made->report = report;
  std::lock_guard lock(g_payload_mutex);
  auto [it, fresh] = g_payloads.emplace(key, std::move(made));
  return *it->second;
}

Metrics run(const ScenarioConfig& config, const TickObserver& observer) {
  auto problems = check_scenario(config);
  if (!problems.empty()) {
    throw ConfigInvalid(std::move(problems));
  }
  World world(config, observer);
  return world.run();
}

Metrics run_testbed_preset(std::uint64_t seed, bool compression) {
  auto config = ScenarioConfig::testbed_defaults();
  config.seed = seed;
  config.compression.enabled = compression;
  return run(config);
}

TraceResult replay_trace(std::size_t nodes, std::span<const TraceContact> contacts,
                         std::span<const TraceBundle> bundles, const NetworkOptions& options,
                         double ttl_s, const compression::CompressionSetting& setting) {
  std::vector<data::EndpointId> eids;
  for (std::size_t i = 0; i < nodes; ++i) {
    eids.push_back(dtn("node-" + std::to_string(i)));
  }
  auto opts = options;
  opts.record_receptions = true;
  Network net(opts, eids);

  // Instants in order; at each: ups, creations, completions, downs.
  std::set<double> instants;
  for (const auto& c : contacts) {
    instants.insert(c.start);
    instants.insert(c.end);
  }
  for (const auto& b : bundles) {
    instants.insert(b.created_at);
  }
  std::vector<std::size_t> by_start(contacts.size());
  std::vector<std::size_t> by_end(contacts.size());
  std::vector<std::size_t> by_creation(bundles.size());
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    by_start[i] = by_end[i] = i;
  }
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    by_creation[i] = i;
  }
  std::stable_sort(by_start.begin(), by_start.end(),
                   [&](auto x, auto y) { return contacts[x].start < contacts[y].start; });
  std::stable_sort(by_end.begin(), by_end.end(),
                   [&](auto x, auto y) { return contacts[x].end < contacts[y].end; });
  std::stable_sort(by_creation.begin(), by_creation.end(),
                   [&](auto x, auto y) { return bundles[x].created_at < bundles[y].created_at; });

  std::vector<data::BundleId> ids(bundles.size());
  std::map<data::BundleId, std::size_t> index_of_id;
  std::vector<std::uint64_t> seq(nodes, 0);
  std::size_t si = 0;
  std::size_t ei = 0;
  std::size_t ci = 0;
  for (double t : instants) {
    for (; si < by_start.size() && contacts[by_start[si]].start <= t; ++si) {
      const auto& c = contacts[by_start[si]];
      net.link_up(c.a, c.b, t);
    }
    for (; ci < by_creation.size() && bundles[by_creation[ci]].created_at <= t; ++ci) {
      const auto& tb = bundles[by_creation[ci]];
      data::Bundle b;
      b.primary = data::PrimaryBlock::make(eids.at(tb.destination), eids.at(tb.source),
                                           eids.at(tb.source), data::EndpointId::null(),
                                           static_cast<std::uint64_t>(tb.created_at),
                                           seq[tb.source]++, static_cast<std::uint64_t>(ttl_s));
      const auto& payload = payload_variant(tb.content_class,
                                            default_target_ratio(tb.content_class), tb.bytes, 0,
                                            setting);
      b.payload = payload.wire;
      ids[by_creation[ci]] = b.id();
      index_of_id[b.id()] = by_creation[ci];
      net.register_bundle(b, tb.content_class, payload.report.ratio, t);
      net.inject(tb.source, b, t);
    }
    net.advance_to(t);
    for (; ei < by_end.size() && contacts[by_end[ei]].end <= t; ++ei) {
      const auto& c = contacts[by_end[ei]];
      net.link_down(c.a, c.b, t);
    }
  }
  net.advance_to(std::numeric_limits<double>::infinity());

  TraceResult out;
  out.metrics = summarize(net.counters(), net.audit());
  out.receptions = net.receptions();
  out.holders.resize(bundles.size());
  for (const auto& r : out.receptions) {
    auto& h = out.holders[index_of_id.at(r.id)];
    h.push_back(r.node);
  }
  for (auto& h : out.holders) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
  }
  return out;
}

}  // namespace riverdtn::sim
