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
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "riverdtn/map_graph.hpp"

namespace riverdtn::sim {

using NodePair = std::pair<std::size_t, std::size_t>;  // first < second

struct ContactEvent {
  NodePair pair;
  bool begins = true;  // false: the pair just left range

  bool operator==(const ContactEvent&) const = default;
};

/// All pairs at distance <= range (inclusive), ascending. Quadratic; the
/// reference the incremental detector is checked against.
std::vector<NodePair> pairs_in_range(std::span<const Vec2> positions, double range);

/// Incremental contact detection on a uniform grid with range-sized cells.
/// Only nodes reported as moved are re-examined each tick.
class ContactDetector {
public:
  ContactDetector(double range_m, std::size_t nodes);

  /// Seeds the detector with every node; returns the initial begins.
  std::vector<ContactEvent> reset(std::span<const Vec2> positions);
  /// positions are current; moved lists the nodes whose position changed
  /// since the previous call. Events come back sorted by pair.
  std::vector<ContactEvent> update(std::span<const Vec2> positions,
                                   std::span<const std::size_t> moved);

  bool in_range(std::size_t a, std::size_t b) const;
  const std::vector<std::size_t>& neighbors(std::size_t n) const { return neighbors_.at(n); }

private:
  using Cell = std::int64_t;
  Cell cell_of(Vec2 p) const;
  void place(std::size_t n, Cell cell);
  void rescan(std::size_t n, std::span<const Vec2> positions, std::vector<ContactEvent>& out);

  double range_;
  double range_sq_;
  std::vector<Cell> cell_;
  std::vector<char> placed_;
  std::unordered_map<Cell, std::vector<std::size_t>> grid_;
  std::vector<std::vector<std::size_t>> neighbors_;  // sorted
};

}  // namespace riverdtn::sim
