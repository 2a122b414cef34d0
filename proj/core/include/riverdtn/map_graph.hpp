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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace riverdtn::sim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const noexcept { return {x * k, y * k}; }
  bool operator==(const Vec2&) const = default;
};

inline double norm(Vec2 v) noexcept { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) noexcept { return norm(a - b); }

/// Names every riverside scenario requires on its map.
inline constexpr std::string_view kPierA = "PierA";
inline constexpr std::string_view kPierB = "PierB";
inline constexpr std::string_view kCommunities[] = {"C1", "C2", "C3", "C4"};

/// Undirected river network. Vertices are points in meters; edge lengths
/// default to the Euclidean distance between endpoints.
class MapGraph {
public:
  struct Vertex {
    std::string name;
    Vec2 pos;
  };
  struct Edge {
    std::size_t a;
    std::size_t b;
    double length;
  };

  /// Returns the new vertex index. Throws std::invalid_argument on a
  /// duplicate name.
  std::size_t add_vertex(std::string name, Vec2 pos);
  /// length <= 0 means "use the straight-line distance".
  void add_edge(std::size_t a, std::size_t b, double length = 0.0);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool connected() const;

  /// Dijkstra from every vertex. Must be called after the last edit and
  /// before distance()/path().
  void finalize();
  double distance(std::size_t from, std::size_t to) const;
  /// Vertex sequence from -> to, both included.
  std::vector<std::size_t> path(std::size_t from, std::size_t to) const;

  /// Two piers joined by a main channel with two side branches per
  /// junction leading to the communities.
  static MapGraph default_river();

private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
  std::vector<std::vector<double>> dist_;
  std::vector<std::vector<std::size_t>> prev_;
};

}  // namespace riverdtn::sim
