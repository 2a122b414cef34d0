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
#include <optional>
#include <vector>

#include "riverdtn/map_graph.hpp"
#include "riverdtn/random.hpp"
#include "riverdtn/scenario.hpp"

namespace riverdtn::sim {

/// Moves pos toward target at speed for dt seconds; true once it arrives.
bool walk_toward(Vec2& pos, Vec2 target, double speed, double dt);

/// Node positions advanced in fixed ticks. Indices are network node indices.
class Mobility {
public:
  virtual ~Mobility() = default;

  /// Advances from now to now + dt.
  virtual void step(double now, double dt) = 0;

  const std::vector<Vec2>& positions() const noexcept { return positions_; }
  /// Nodes whose position changed during the last step, ascending.
  const std::vector<std::size_t>& moved() const noexcept { return moved_; }

protected:
  std::vector<Vec2> positions_;
  std::vector<std::size_t> moved_;
};

/// Random waypoint inside an axis-aligned square [0, side]^2.
class WaypointWalk final : public Mobility {
public:
  WaypointWalk(std::size_t nodes, double side_m, Range speed_mps, Range pause_s,
               std::uint64_t seed);
  void step(double now, double dt) override;

private:
  struct Walker {
    Vec2 target;
    double speed = 0.0;
    double paused_until = 0.0;
  };
  double side_;
  Range speed_;
  Range pause_;
  Rng rng_;
  std::vector<Walker> walkers_;
};

/// Daily phases of a person in the riverside world.
enum class Phase {
  Home,
  ToGathering,
  Gathering,
  ToDock,       // heading to the community dock to catch a boat to a pier
  WaitingBoat,  // at a dock, wants a boat to `wants`
  Riding,
  ToPierArea,
  AtPier,
  ToPierDock,
  ToHome,
};

enum class Role { Traveler, Resident };

struct Person {
  Role role = Role::Traveler;
  std::size_t community = 0;  // index into kCommunities
  Vec2 home;
  Vec2 gathering;  // personal spot inside the gathering area
  Phase phase = Phase::Home;
  double until = 0.0;  // end of the current dwell
  Vec2 target;
  double speed = 0.0;
  bool evening = false;  // current gathering visit is the second of the day
  bool outbound = false;  // traveler: heading out to a pier
  std::size_t site = 0;  // vertex of the dock or pier the person is at
  std::optional<std::size_t> boat;
  double waiting_since = 0.0;
  std::size_t gathering_visits = 0;
  std::size_t pier_visits = 0;
};

struct Boat {
  std::size_t site = 0;  // current vertex while docked, origin while sailing
  bool docked = true;
  double depart_at = 0.0;
  std::size_t destination = 0;
  std::size_t capacity = 0;
  std::vector<std::size_t> route;  // vertices, origin first
  std::size_t leg = 0;             // index of the vertex last passed
  double speed = 0.0;
  Vec2 pos;
  std::vector<std::size_t> passengers;
  std::vector<std::size_t> visits;  // arrivals per vertex
};

/// Travelers commute from their community to a pier and back by boat;
/// residents alternate between home and the community gathering point.
/// Boats wait at a labeled site for a boarding time, then follow the
/// shortest path to another labeled site chosen uniformly at random.
class RiverWorld final : public Mobility {
public:
  RiverWorld(const ScenarioConfig& config, std::uint64_t seed);

  void step(double now, double dt) override;

  std::size_t travelers() const noexcept { return travelers_; }
  std::size_t residents() const noexcept { return people_.size() - travelers_; }
  const std::vector<Person>& people() const noexcept { return people_; }
  const std::vector<Boat>& boats() const noexcept { return boats_; }
  /// Vertex indices of PierA, PierB, C1..C4.
  const std::vector<std::size_t>& sites() const noexcept { return sites_; }
  std::size_t pier_vertex(std::size_t pier) const { return sites_.at(pier); }

  /// Persons at a pier: from leaving the boat until boarding the next one.
  bool at_pier(std::size_t person, std::size_t pier_vertex) const;
  /// Persons that reached a pier during the last step, as (person, vertex).
  const std::vector<std::pair<std::size_t, std::size_t>>& pier_arrivals() const noexcept {
    return pier_arrivals_;
  }

private:
  bool is_pier(std::size_t vertex) const { return vertex == sites_[0] || vertex == sites_[1]; }
  Vec2 around(Vec2 center, double radius);
  void start_walk(Person& p, Phase phase, Vec2 target);
  void start_dwell(Person& p, Phase phase, double until);
  void go_home(Person& p, double now);
  void schedule_next_outing(Person& p, double now);
  void arrive(std::size_t index, double now);
  void step_person(std::size_t index, double now, double dt);
  void step_boat(std::size_t index, double now, double dt);
  void dock(Boat& b, double now);
  void depart(Boat& b, double now);

  const ScenarioConfig& config_;
  const MapGraph& map_;
  Rng rng_;
  std::size_t travelers_ = 0;
  std::vector<std::size_t> sites_;
  std::vector<Person> people_;
  std::vector<Boat> boats_;
  std::vector<std::vector<std::size_t>> waiting_;  // per vertex, arrival order
  std::vector<std::pair<std::size_t, std::size_t>> pier_arrivals_;
  std::vector<char> moved_flag_;
};

}  // namespace riverdtn::sim
