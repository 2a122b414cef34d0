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

#include "riverdtn/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace riverdtn::sim {

namespace {
constexpr double kPassengerSpacing = 1.5;

double draw(Rng& rng, const Range& r) { return r.lo == r.hi ? r.lo : rng.uniform(r.lo, r.hi); }

// Passengers stand on a small deck grid around the boat's position.
Vec2 deck_offset(std::size_t slot) {
  const double col = static_cast<double>(slot % 4) - 1.5;
  const double row = static_cast<double>(slot / 4) - 1.0;
  return {col * kPassengerSpacing, row * kPassengerSpacing};
}
}  // namespace

bool walk_toward(Vec2& pos, Vec2 target, double speed, double dt) {
  const Vec2 delta = target - pos;
  const double remaining = norm(delta);
  const double step = speed * dt;
  if (step >= remaining) {
    pos = target;
    return true;
  }
  pos = pos + delta * (step / remaining);
  return false;
}

// ---------------------------------------------------------------------------

WaypointWalk::WaypointWalk(std::size_t nodes, double side_m, Range speed_mps, Range pause_s,
                           std::uint64_t seed)
    : side_(side_m), speed_(speed_mps), pause_(pause_s), rng_(seed) {
  positions_.resize(nodes);
  walkers_.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    positions_[i] = {rng_.uniform(0.0, side_), rng_.uniform(0.0, side_)};
    walkers_[i].target = {rng_.uniform(0.0, side_), rng_.uniform(0.0, side_)};
    walkers_[i].speed = draw(rng_, speed_);
  }
}

void WaypointWalk::step(double now, double dt) {
  moved_.clear();
  const double end = now + dt;
  for (std::size_t i = 0; i < walkers_.size(); ++i) {
    auto& w = walkers_[i];
    if (end <= w.paused_until || dt <= 0.0) {
      continue;
    }
    const double active = std::min(dt, end - std::max(now, w.paused_until));
    moved_.push_back(i);
    if (walk_toward(positions_[i], w.target, w.speed, active)) {
      w.paused_until = end + draw(rng_, pause_);
      w.target = {rng_.uniform(0.0, side_), rng_.uniform(0.0, side_)};
      w.speed = draw(rng_, speed_);
    }
  }
}

// ---------------------------------------------------------------------------

RiverWorld::RiverWorld(const ScenarioConfig& config, std::uint64_t seed)
    : config_(config), map_(config.map), rng_(seed) {
  for (auto name : {kPierA, kPierB}) {
    sites_.push_back(map_.find(name).value());
  }
  for (auto name : kCommunities) {
    sites_.push_back(map_.find(name).value());
  }
  waiting_.resize(map_.vertices().size());

  Vec2 centroid;
  for (const auto& v : map_.vertices()) {
    centroid = centroid + v.pos;
  }
  centroid = centroid * (1.0 / static_cast<double>(map_.vertices().size()));

  const auto& day = config_.day;
  std::vector<Vec2> gathering_centers;
  for (std::size_t c = 0; c < std::size(kCommunities); ++c) {
    const Vec2 dock = map_.vertices()[sites_[2 + c]].pos;
    Vec2 away = dock - centroid;
    const double len = norm(away);
    away = len > 0.0 ? away * (1.0 / len) : Vec2{0.0, 1.0};
    gathering_centers.push_back(dock + away * day.gathering_offset_m);
  }

  travelers_ = config_.nodes.travelers;
  const std::size_t residents = config_.nodes.residents_per_community * std::size(kCommunities);
  people_.resize(travelers_ + residents);
  positions_.resize(people_.size());
  moved_flag_.assign(people_.size(), 0);
  for (std::size_t i = 0; i < people_.size(); ++i) {
    auto& p = people_[i];
    if (i < travelers_) {
      p.role = Role::Traveler;
      p.community = i % std::size(kCommunities);
    } else {
      p.role = Role::Resident;
      p.community = (i - travelers_) / config_.nodes.residents_per_community;
    }
    const Vec2 dock = map_.vertices()[sites_[2 + p.community]].pos;
    const double angle = rng_.uniform(0.0, 2.0 * std::numbers::pi);
    const double radius = draw(rng_, day.home_radius_m);
    p.home = dock + Vec2{std::cos(angle), std::sin(angle)} * radius;
    p.gathering = around(gathering_centers[p.community], day.gathering_radius_m);
    p.site = sites_[2 + p.community];
    positions_[i] = p.home;
    p.phase = Phase::Home;
    if (p.role == Role::Traveler) {
      p.until = draw(rng_, day.wake_s);
    } else {
      p.evening = true;
      schedule_next_outing(p, 0.0);
    }
  }

  boats_.resize(config_.nodes.boats);
  for (auto& b : boats_) {
    b.visits.assign(map_.vertices().size(), 0);
    b.site = sites_[static_cast<std::size_t>(rng_.uniform_int(0, 5))];
    b.pos = map_.vertices()[b.site].pos;
    b.route = {b.site};
    dock(b, 0.0);
  }
}

Vec2 RiverWorld::around(Vec2 center, double radius) {
  const double r = radius * std::sqrt(rng_.uniform01());
  const double a = rng_.uniform(0.0, 2.0 * std::numbers::pi);
  return center + Vec2{std::cos(a), std::sin(a)} * r;
}

bool RiverWorld::at_pier(std::size_t person, std::size_t pier_vertex) const {
  const auto& p = people_.at(person);
  if (p.site != pier_vertex || p.boat) {
    return false;
  }
  switch (p.phase) {
    case Phase::ToPierArea:
    case Phase::AtPier:
    case Phase::ToPierDock:
    case Phase::WaitingBoat:
      return true;
    default:
      return false;
  }
}

void RiverWorld::start_walk(Person& p, Phase phase, Vec2 target) {
  p.phase = phase;
  p.target = target;
  p.speed = draw(rng_, config_.people_speed_mps);
}

void RiverWorld::start_dwell(Person& p, Phase phase, double until) {
  p.phase = phase;
  p.until = until;
}

void RiverWorld::go_home(Person& p, double) { start_walk(p, Phase::ToHome, p.home); }

void RiverWorld::schedule_next_outing(Person& p, double now) {
  const auto& day = config_.day;
  const double d = std::floor(now / kDay);
  double at = 0.0;
  if (p.role == Role::Traveler) {
    at = d * kDay + draw(rng_, day.wake_s);
    if (at <= now) {
      at = (d + 1) * kDay + draw(rng_, day.wake_s);
    }
    p.evening = false;
  } else if (!p.evening) {
    at = std::max(now, d * kDay + draw(rng_, day.resident_evening_s));
    p.evening = true;
  } else {
    at = d * kDay + draw(rng_, day.resident_morning_s);
    if (at <= now) {
      at = (d + 1) * kDay + draw(rng_, day.resident_morning_s);
    }
    p.evening = false;
  }
  start_dwell(p, Phase::Home, at);
}

void RiverWorld::arrive(std::size_t index, double now) {
  auto& p = people_[index];
  const auto& day = config_.day;
  switch (p.phase) {
    case Phase::ToGathering: {
      ++p.gathering_visits;
      const Range& dwell = p.role == Role::Resident ? day.resident_dwell_s
                           : p.evening              ? day.evening_dwell_s
                                                    : day.gathering_dwell_s;
      start_dwell(p, Phase::Gathering, now + draw(rng_, dwell));
      break;
    }
    case Phase::ToDock:
    case Phase::ToPierDock:
      p.phase = Phase::WaitingBoat;
      p.waiting_since = now;
      waiting_[p.site].push_back(index);
      break;
    case Phase::ToPierArea:
      start_dwell(p, Phase::AtPier, now + draw(rng_, day.pier_dwell_s));
      break;
    case Phase::ToHome:
      schedule_next_outing(p, now);
      break;
    default:
      break;
  }
}

void RiverWorld::step_person(std::size_t index, double now, double dt) {
  auto& p = people_[index];
  const double end = now + dt;
  const auto& day = config_.day;
  switch (p.phase) {
    case Phase::Home:
      if (end >= p.until) {
        start_walk(p, Phase::ToGathering, p.gathering);
      }
      break;
    case Phase::Gathering:
      if (end >= p.until) {
        if (p.role == Role::Traveler && !p.evening) {
          p.outbound = true;
          p.site = sites_[2 + p.community];
          start_walk(p, Phase::ToDock, around(map_.vertices()[p.site].pos, day.dock_radius_m));
        } else {
          go_home(p, end);
        }
      }
      break;
    case Phase::AtPier:
      if (end >= p.until) {
        p.outbound = false;
        start_walk(p, Phase::ToPierDock, around(map_.vertices()[p.site].pos, day.dock_radius_m));
      }
      break;
    case Phase::WaitingBoat:
      if (p.outbound && end - p.waiting_since > day.wait_limit_s) {
        auto& queue = waiting_[p.site];
        queue.erase(std::find(queue.begin(), queue.end(), index));
        p.outbound = false;
        go_home(p, end);
      }
      break;
    case Phase::ToGathering:
    case Phase::ToDock:
    case Phase::ToPierArea:
    case Phase::ToPierDock:
    case Phase::ToHome:
      if (dt > 0.0) {
        moved_flag_[index] = 1;
        if (walk_toward(positions_[index], p.target, p.speed, dt)) {
          arrive(index, end);
        }
      }
      break;
    case Phase::Riding:
      break;
  }
}

void RiverWorld::dock(Boat& b, double now) {
  b.site = b.route.back();
  b.docked = true;
  b.pos = map_.vertices()[b.site].pos;
  ++b.visits[b.site];
  const bool pier = is_pier(b.site);
  for (std::size_t slot = 0; slot < b.passengers.size(); ++slot) {
    const std::size_t i = b.passengers[slot];
    auto& p = people_[i];
    p.boat.reset();
    p.site = b.site;
    moved_flag_[i] = 1;
    if (pier) {
      ++p.pier_visits;
      pier_arrivals_.emplace_back(i, b.site);
      start_walk(p, Phase::ToPierArea,
                 around(map_.vertices()[b.site].pos, config_.day.pier_area_radius_m));
    } else {
      p.evening = true;
      start_walk(p, Phase::ToGathering, p.gathering);
    }
  }
  b.passengers.clear();

  // Next destination: another labeled site, uniformly.
  std::vector<std::size_t> options;
  for (auto s : sites_) {
    if (s != b.site) {
      options.push_back(s);
    }
  }
  b.destination = options[static_cast<std::size_t>(
      rng_.uniform_int(0, static_cast<std::int64_t>(options.size()) - 1))];
  b.capacity = static_cast<std::size_t>(rng_.uniform_int(
      static_cast<std::int64_t>(config_.boat_capacity.lo),
      static_cast<std::int64_t>(config_.boat_capacity.hi)));
  b.depart_at = now + draw(rng_, config_.boarding_s);
}

void RiverWorld::depart(Boat& b, double) {
  auto& queue = waiting_[b.site];
  const bool to_pier = is_pier(b.destination);
  for (auto it = queue.begin(); it != queue.end() && b.passengers.size() < b.capacity;) {
    auto& p = people_[*it];
    const bool wants = p.outbound ? to_pier : sites_[2 + p.community] == b.destination;
    if (wants) {
      p.phase = Phase::Riding;
      p.boat = static_cast<std::size_t>(&b - boats_.data());
      b.passengers.push_back(*it);
      it = queue.erase(it);
    } else {
      ++it;
    }
  }
  b.route = map_.path(b.site, b.destination);
  b.leg = 0;
  b.speed = draw(rng_, config_.boat_speed_mps);
  b.docked = false;
}

void RiverWorld::step_boat(std::size_t index, double now, double dt) {
  auto& b = boats_[index];
  const double end = now + dt;
  if (b.docked) {
    if (end >= b.depart_at) {
      depart(b, end);
    }
    return;
  }
  double budget = b.speed * dt;
  while (budget > 0.0 && b.leg + 1 < b.route.size()) {
    const Vec2 next = map_.vertices()[b.route[b.leg + 1]].pos;
    const double remaining = distance(b.pos, next);
    if (budget >= remaining) {
      b.pos = next;
      ++b.leg;
      budget -= remaining;
    } else {
      b.pos = b.pos + (next - b.pos) * (budget / remaining);
      budget = 0.0;
    }
  }
  for (std::size_t slot = 0; slot < b.passengers.size(); ++slot) {
    const std::size_t i = b.passengers[slot];
    positions_[i] = b.pos + deck_offset(slot);
    moved_flag_[i] = 1;
  }
  if (b.leg + 1 >= b.route.size()) {
    dock(b, end);
  }
}

void RiverWorld::step(double now, double dt) {
  pier_arrivals_.clear();
  moved_.clear();
  if (dt > 0.0) {
    for (std::size_t i = 0; i < boats_.size(); ++i) {
      step_boat(i, now, dt);
    }
  }
  for (std::size_t i = 0; i < people_.size(); ++i) {
    step_person(i, now, dt);
  }
  for (std::size_t i = 0; i < people_.size(); ++i) {
    if (moved_flag_[i]) {
      moved_.push_back(i);
      moved_flag_[i] = 0;
    }
  }
}

}  // namespace riverdtn::sim
