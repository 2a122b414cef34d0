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

#include <gtest/gtest.h>

namespace riverdtn::sim {
namespace {

constexpr ContentClass kClasses[] = {ContentClass::Text, ContentClass::Audio, ContentClass::Video};

void expect_sound(const Metrics& m) {
  for (auto c : kClasses) {
    EXPECT_LE(m[c].delivered, m[c].created);
    if (m[c].created > 0) {
      EXPECT_DOUBLE_EQ(m[c].delivery_ratio,
                       static_cast<double>(m[c].delivered) / static_cast<double>(m[c].created));
    }
  }
  EXPECT_EQ(m.audit.budget_violations, 0u);
  EXPECT_EQ(m.audit.partial_deliveries, 0u);
  EXPECT_EQ(m.audit.late_deliveries, 0u);
  EXPECT_EQ(m.audit.half_duplex_violations, 0u);
  EXPECT_GE(m.audit.min_budget_slack_bits, 0.0);
}

TEST(Simulator, ZeroDurationProducesNothing) {
  auto c = ScenarioConfig::riverside_defaults();
  c.duration_s = 0;
  c.nodes.travelers = 10;
  const auto m = run(c);
  for (auto cls : kClasses) {
    EXPECT_EQ(m[cls], ClassMetrics{});
  }
  EXPECT_EQ(m.audit.contacts, 0u);
}

TEST(Simulator, TestbedCreatesScheduledBundles) {
  const auto m = run_testbed_preset(1);
  EXPECT_EQ(m[ContentClass::Text].created, 10u);
  EXPECT_EQ(m[ContentClass::Audio].created, 2u);
  EXPECT_EQ(m[ContentClass::Video].created, 2u);
  expect_sound(m);
}

TEST(Simulator, TestbedNodesAlwaysInRangeDeliverEverything) {
  // A 6.32 m square has a 8.94 m diagonal, under the 10 m radio range.
  auto c = ScenarioConfig::testbed_defaults();
  c.seed = 2;
  const auto m = run(c, [&](const TickView& v) {
    for (std::size_t a = 0; a < v.positions.size(); ++a) {
      for (std::size_t b = a + 1; b < v.positions.size(); ++b) {
        ASSERT_LE(distance(v.positions[a], v.positions[b]), 10.0);
      }
    }
  });
  EXPECT_EQ(m[ContentClass::Text].delivered, m[ContentClass::Text].created);
  EXPECT_EQ(m[ContentClass::Audio].delivered, m[ContentClass::Audio].created);
  EXPECT_EQ(m[ContentClass::Video].delivered, m[ContentClass::Video].created);
  expect_sound(m);
}

TEST(Simulator, TestbedCompressionSpeedsText) {
  const auto on = run_testbed_preset(3, true);
  const auto off = run_testbed_preset(3, false);
  EXPECT_NEAR(on[ContentClass::Text].mean_compression_ratio, 0.5, 0.03);
  EXPECT_DOUBLE_EQ(off[ContentClass::Text].mean_compression_ratio, 0.0);
  EXPECT_LT(on[ContentClass::Text].bits_transmitted, off[ContentClass::Text].bits_transmitted);
  EXPECT_LE(on[ContentClass::Text].mean_latency_s, off[ContentClass::Text].mean_latency_s);
}

TEST(Simulator, SameConfigurationSameMetrics) {
  auto c = ScenarioConfig::riverside_defaults();
  c.duration_s = kDay;
  c.nodes.travelers = 30;
  c.seed = 9;
  const auto a = run(c);
  const auto b = run(c);
  EXPECT_EQ(a, b);
  c.seed = 10;
  EXPECT_FALSE(run(c) == a);
}

TEST(Simulator, RiversideDayIsSound) {
  auto c = ScenarioConfig::riverside_defaults();
  c.duration_s = 2 * kDay;
  c.nodes.travelers = 40;
  const auto m = run(c);
  for (std::size_t w = 0; w < c.workloads.size(); ++w) {
    const auto& spec = c.workloads[w];
    EXPECT_EQ(m[spec.content_class].created, 2u * 2u * spec.per_day);
  }
  EXPECT_GT(m.audit.contacts, 0u);
  EXPECT_GT(m[ContentClass::Text].delivered, 0u);
  expect_sound(m);
}

TEST(Simulator, ObserverSeesEveryTick) {
  auto c = ScenarioConfig::testbed_defaults();
  c.duration_s = 100;
  int ticks = 0;
  double last = -1;
  run(c, [&](const TickView& v) {
    ++ticks;
    EXPECT_GT(v.now, last);
    last = v.now;
  });
  EXPECT_EQ(ticks, 100);
  EXPECT_DOUBLE_EQ(last, 100.0);
}

TEST(PayloadVariant, CachedAndCalibrated) {
  compression::CompressionSetting on;
  const auto& a = payload_variant(ContentClass::Text, 0.5, 100 * 1024, 0, on);
  const auto& b = payload_variant(ContentClass::Text, 0.5, 100 * 1024, 0, on);
  EXPECT_EQ(&a, &b);
  EXPECT_EQ(a.plain.size(), 100u * 1024u);
  EXPECT_NEAR(a.report.ratio, 0.5, 0.03);
  EXPECT_TRUE(a.wire.compressed());
  const auto& c = payload_variant(ContentClass::Text, 0.5, 100 * 1024, 1, on);
  EXPECT_FALSE(a.plain == c.plain);
}

TEST(Simulator, ContactCapDisconnectsPairsForGood) {
  auto c = ScenarioConfig::testbed_defaults();
  c.seed = 2;
  c.link.max_contact_s = 60;
  const auto m = run(c);
  EXPECT_EQ(m.audit.contacts, 15u);
  EXPECT_LT(m[ContentClass::Text].delivered, m[ContentClass::Text].created);
  EXPECT_EQ(m[ContentClass::Video].delivered, 0u);
  expect_sound(m);
}

}  // namespace
}  // namespace riverdtn::sim
