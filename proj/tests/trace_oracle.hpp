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

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "riverdtn/random.hpp"
#include "riverdtn/simulator.hpp"

namespace riverdtn::testing {

struct Trace {
  std::size_t nodes = 0;
  std::vector<sim::TraceContact> contacts;
  std::vector<sim::TraceBundle> bundles;
  double ttl_s = 0.0;
};

/// Random trace on integer times in [0, 100]. Contacts of one pair never
/// overlap.
inline Trace random_trace(Rng& rng, std::size_t max_nodes, std::size_t max_contacts) {
  Trace t;
  t.nodes = static_cast<std::size_t>(rng.uniform_int(2, static_cast<std::int64_t>(max_nodes)));
  const auto want = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_contacts)));
  for (std::size_t attempt = 0; t.contacts.size() < want && attempt < 10 * max_contacts; ++attempt) {
    auto a = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(t.nodes) - 1));
    auto b = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(t.nodes) - 2));
    if (b >= a) {
      ++b;
    }
    const double start = static_cast<double>(rng.uniform_int(0, 100));
    const double end = start + static_cast<double>(rng.uniform_int(0, 30));
    const bool clash = std::any_of(t.contacts.begin(), t.contacts.end(), [&](const auto& c) {
      const bool same = (c.a == a && c.b == b) || (c.a == b && c.b == a);
      return same && !(end < c.start || c.end < start);
    });
    if (!clash) {
      t.contacts.push_back({a, b, start, end});
    }
  }
  const auto bundles = rng.uniform_int(1, 3);
  for (std::int64_t i = 0; i < bundles; ++i) {
    auto src = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(t.nodes) - 1));
    auto dst = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(t.nodes) - 2));
    if (dst >= src) {
      ++dst;
    }
    t.bundles.push_back({src, dst, static_cast<double>(rng.uniform_int(0, 80)),
                         ContentClass::Text, 10 * 1024});
  }
  t.ttl_s = static_cast<double>(rng.uniform_int(1, 120));
  return t;
}

/// Nodes that end up holding bundle b when every contact forwards
/// instantly: earliest-arrival search over the time-expanded contact graph.
/// A holder reached at time h can use a contact [s, e] at max(h, s) when
/// that is <= e and earlier than the bundle's expiry.
inline std::vector<std::size_t> reachable_nodes(const Trace& t, std::size_t b) {
  constexpr double kNever = std::numeric_limits<double>::infinity();
  const auto& bundle = t.bundles[b];
  const double expiry = bundle.created_at + t.ttl_s;
  std::vector<double> arrival(t.nodes, kNever);
  arrival[bundle.source] = bundle.created_at;
  std::vector<std::size_t> frontier{bundle.source};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto u : frontier) {
      for (const auto& c : t.contacts) {
        if (c.a != u && c.b != u) {
          continue;
        }
        const auto v = c.a == u ? c.b : c.a;
        const double at = std::max(arrival[u], c.start);
        if (at <= c.end && at < expiry && at < arrival[v]) {
          arrival[v] = at;
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < t.nodes; ++n) {
    if (arrival[n] != kNever) {
      out.push_back(n);
    }
  }
  return out;
}

}  // namespace riverdtn::testing
