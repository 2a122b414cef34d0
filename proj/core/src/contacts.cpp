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

#include "riverdtn/contacts.hpp"

#include <algorithm>
#include <cmath>

namespace riverdtn::sim {

namespace {
constexpr std::int64_t kCellBias = 1LL << 31;

bool within(Vec2 a, Vec2 b, double range_sq) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= range_sq;
}

NodePair ordered(std::size_t a, std::size_t b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }

void insert_sorted(std::vector<std::size_t>& v, std::size_t x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void erase_sorted(std::vector<std::size_t>& v, std::size_t x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) {
    v.erase(it);
  }
}
}  // namespace

std::vector<NodePair> pairs_in_range(std::span<const Vec2> positions, double range) {
  std::vector<NodePair> out;
  const double range_sq = range * range;
  for (std::size_t a = 0; a < positions.size(); ++a) {
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      if (within(positions[a], positions[b], range_sq)) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

ContactDetector::ContactDetector(double range_m, std::size_t nodes)
    : range_(range_m), range_sq_(range_m * range_m), cell_(nodes, 0), placed_(nodes, 0),
      neighbors_(nodes) {}

ContactDetector::Cell ContactDetector::cell_of(Vec2 p) const {
  const auto cx = static_cast<std::int64_t>(std::floor(p.x / range_)) + kCellBias;
  const auto cy = static_cast<std::int64_t>(std::floor(p.y / range_)) + kCellBias;
  return (cx << 32) | (cy & 0xFFFF'FFFFLL);
}

void ContactDetector::place(std::size_t n, Cell cell) {
  if (placed_[n]) {
    if (cell_[n] == cell) {
      return;
    }
    auto& old = grid_[cell_[n]];
    old.erase(std::find(old.begin(), old.end(), n));
    if (old.empty()) {
      grid_.erase(cell_[n]);
    }
  }
  grid_[cell].push_back(n);
  cell_[n] = cell;
  placed_[n] = 1;
}

void ContactDetector::rescan(std::size_t n, std::span<const Vec2> positions,
                             std::vector<ContactEvent>& out) {
  const Vec2 p = positions[n];
  // Drop neighbors that left range.
  auto& mine = neighbors_[n];
  for (std::size_t k = 0; k < mine.size();) {
    const std::size_t m = mine[k];
    if (within(p, positions[m], range_sq_)) {
      ++k;
      continue;
    }
    mine.erase(mine.begin() + static_cast<std::ptrdiff_t>(k));
    erase_sorted(neighbors_[m], n);
    out.push_back({ordered(n, m), false});
  }
  // Pick up nodes that entered range.
  const std::int64_t cx = cell_[n] >> 32;
  const std::int64_t cy = cell_[n] & 0xFFFF'FFFFLL;
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      auto it = grid_.find(((cx + dx) << 32) | ((cy + dy) & 0xFFFF'FFFFLL));
      if (it == grid_.end()) {
        continue;
      }
      for (std::size_t m : it->second) {
        if (m == n || !within(p, positions[m], range_sq_)) {
          continue;
        }
        if (!std::binary_search(mine.begin(), mine.end(), m)) {
          insert_sorted(mine, m);
          insert_sorted(neighbors_[m], n);
          out.push_back({ordered(n, m), true});
        }
      }
    }
  }
}

std::vector<ContactEvent> ContactDetector::reset(std::span<const Vec2> positions) {
  grid_.clear();
  std::fill(placed_.begin(), placed_.end(), 0);
  for (auto& v : neighbors_) {
    v.clear();
  }
  std::vector<std::size_t> all(positions.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i] = i;
  }
  return update(positions, all);
}

std::vector<ContactEvent> ContactDetector::update(std::span<const Vec2> positions,
                                                  std::span<const std::size_t> moved) {
  std::vector<ContactEvent> out;
  for (std::size_t n : moved) {
    place(n, cell_of(positions[n]));
  }
  for (std::size_t n : moved) {
    rescan(n, positions, out);
  }
  std::sort(out.begin(), out.end(), [](const ContactEvent& a, const ContactEvent& b) {
    return a.pair < b.pair;
  });
  return out;
}

bool ContactDetector::in_range(std::size_t a, std::size_t b) const {
  const auto& v = neighbors_.at(a);
  return std::binary_search(v.begin(), v.end(), b);
}

}  // namespace riverdtn::sim
