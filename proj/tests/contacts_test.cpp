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

#include <set>

#include <gtest/gtest.h>

#include "riverdtn/random.hpp"

namespace riverdtn::sim {
namespace {

TEST(Contacts, BoundaryIsInclusive) {
  const std::vector<Vec2> p{{0, 0}, {10, 0}, {0, 10.000001}};
  EXPECT_EQ(pairs_in_range(p, 10.0), (std::vector<NodePair>{{0, 1}}));
  ContactDetector d(10.0, 3);
  const auto ev = d.reset(p);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_TRUE(d.in_range(0, 1));
  EXPECT_FALSE(d.in_range(0, 2));
}

TEST(Contacts, StaticFarNodesNeverMeet) {
  ContactDetector d(10.0, 2);
  const std::vector<Vec2> p{{0, 0}, {50, 0}};
  EXPECT_TRUE(d.reset(p).empty());
  const std::vector<std::size_t> none;
  for (int t = 0; t < 10; ++t) {
    EXPECT_TRUE(d.update(p, none).empty());
  }
}

TEST(Contacts, ScriptedThreeNodeTrace) {
  // Node 0 sits at the origin, node 2 at x=30. Node 1 walks from x=-20 to
  // x=50 at 1 m/s: within 10 m of node 0 for x in [-10, 10] and of node 2
  // for x in [20, 40].
  ContactDetector d(10.0, 3);
  std::vector<Vec2> p{{0, 0}, {-20, 0}, {30, 0}};
  d.reset(p);
  std::vector<std::pair<int, ContactEvent>> events;
  const std::vector<std::size_t> moved{1};
  for (int t = 1; t <= 70; ++t) {
    p[1].x = -20.0 + t;
    for (const auto& e : d.update(p, moved)) {
      events.emplace_back(t, e);
    }
  }
  const std::vector<std::pair<int, ContactEvent>> expected{
      {10, {{0, 1}, true}}, {31, {{0, 1}, false}}, {40, {{1, 2}, true}}, {61, {{1, 2}, false}}};
  EXPECT_EQ(events, expected);
}

TEST(Contacts, IncrementalMatchesBruteForce) {
  Rng rng(17);
  const std::size_t n = 60;
  std::vector<Vec2> p(n);
  for (auto& v : p) {
    v = {rng.uniform(-50, 50), rng.uniform(-50, 50)};
  }
  ContactDetector d(10.0, n);
  d.reset(p);
  for (int tick = 0; tick < 300; ++tick) {
    std::vector<std::size_t> moved;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform01() < 0.4) {
        p[i].x += rng.uniform(-3, 3);
        p[i].y += rng.uniform(-3, 3);
        moved.push_back(i);
      }
    }
    const auto events = d.update(p, moved);
    EXPECT_TRUE(std::is_sorted(events.begin(), events.end(),
                               [](const auto& a, const auto& b) { return a.pair < b.pair; }));
    const auto truth = pairs_in_range(p, 10.0);
    std::set<NodePair> want(truth.begin(), truth.end());
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        ASSERT_EQ(d.in_range(a, b), want.contains({a, b})) << "tick " << tick;
      }
    }
  }
}

}  // namespace
}  // namespace riverdtn::sim
