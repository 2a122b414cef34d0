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

#include "riverdtn/map_graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace riverdtn::sim {

std::size_t MapGraph::add_vertex(std::string name, Vec2 pos) {
  if (find(name)) {
    throw std::invalid_argument("duplicate vertex " + name);
  }
  vertices_.push_back({std::move(name), pos});
  adjacency_.emplace_back();
  dist_.clear();
  return vertices_.size() - 1;
}

void MapGraph::add_edge(std::size_t a, std::size_t b, double length) {
  if (a >= vertices_.size() || b >= vertices_.size() || a == b) {
    throw std::invalid_argument("edge endpoints must be two distinct vertices");
  }
  if (length <= 0.0) {
    length = sim::distance(vertices_[a].pos, vertices_[b].pos);
  }
  edges_.push_back({a, b, length});
  adjacency_[a].emplace_back(b, length);
  adjacency_[b].emplace_back(a, length);
  dist_.clear();
}

std::optional<std::size_t> MapGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

bool MapGraph::connected() const {
  if (vertices_.empty()) {
    return true;
  }
  std::vector<bool> seen(vertices_.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& [w, len] : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertices_.size();
}

void MapGraph::finalize() {
  const auto n = vertices_.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  dist_.assign(n, std::vector<double>(n, kInf));
  prev_.assign(n, std::vector<std::size_t>(n, n));
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    auto& d = dist_[s];
    auto& p = prev_[s];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    d[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [dv, v] = heap.top();
      heap.pop();
      if (dv > d[v]) {
        continue;
      }
      for (const auto& [w, len] : adjacency_[v]) {
        // Ties resolve to the lower predecessor index.
        const double nd = dv + len;
        if (nd < d[w] || (nd == d[w] && v < p[w])) {
          const bool improved = nd < d[w];
          d[w] = nd;
          p[w] = v;
          if (improved) {
            heap.emplace(nd, w);
          }
        }
      }
    }
  }
}

double MapGraph::distance(std::size_t from, std::size_t to) const {
  if (dist_.empty()) {
    throw std::logic_error("MapGraph::finalize() not called");
  }
  return dist_.at(from).at(to);
}

std::vector<std::size_t> MapGraph::path(std::size_t from, std::size_t to) const {
  if (dist_.empty()) {
    throw std::logic_error("MapGraph::finalize() not called");
  }
  std::vector<std::size_t> out;
  if (dist_.at(from).at(to) == std::numeric_limits<double>::infinity()) {
    return out;
  }
  for (std::size_t v = to; v != from; v = prev_[from][v]) {
    out.push_back(v);
  }
  out.push_back(from);
  std::reverse(out.begin(), out.end());
  return out;
}

MapGraph MapGraph::default_river() {
  MapGraph g;
  const auto pier_a = g.add_vertex("PierA", {0, 0});
  const auto j1 = g.add_vertex("J1", {4000, 0});
  const auto j2 = g.add_vertex("J2", {8000, 0});
  const auto pier_b = g.add_vertex("PierB", {12000, 0});
  const auto c1 = g.add_vertex("C1", {4000, 3000});
  const auto c2 = g.add_vertex("C2", {4000, -4000});
  const auto c3 = g.add_vertex("C3", {8000, 2500});
  const auto c4 = g.add_vertex("C4", {8000, -5000});
  g.add_edge(pier_a, j1);
  g.add_edge(j1, j2);
  g.add_edge(j2, pier_b);
  g.add_edge(j1, c1);
  g.add_edge(j1, c2);
  g.add_edge(j2, c3);
  g.add_edge(j2, c4);
  g.finalize();
  return g;
}

}  // namespace riverdtn::sim
