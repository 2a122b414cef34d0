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

#include "riverdtn/scenario.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace riverdtn::sim {
namespace {

const std::filesystem::path kScenarios = RIVERDTN_SCENARIO_DIR;

std::vector<Diagnostic> diagnostics_of(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ConfigInvalid& e) {
    return e.diagnostics();
  }
  return {};
}

TEST(Scenario, EmptyDocumentIsRiversideDefaults) {
  EXPECT_EQ(parse_scenario("{}"), ScenarioConfig::riverside_defaults());
  EXPECT_EQ(parse_scenario(R"({"kind": "testbed"})"), ScenarioConfig::testbed_defaults());
}

TEST(Scenario, DefaultsPassChecks) {
  EXPECT_TRUE(check_scenario(ScenarioConfig::riverside_defaults()).empty());
  EXPECT_TRUE(check_scenario(ScenarioConfig::testbed_defaults()).empty());
}

TEST(Scenario, PresetsLoad) {
  const auto river = load_scenario(kScenarios / "riverside.json");
  EXPECT_EQ(river.kind, ScenarioKind::Riverside);
  EXPECT_DOUBLE_EQ(river.duration_s, 10 * kDay);
  EXPECT_EQ(river.map.vertices().size(), ScenarioConfig::riverside_defaults().map.vertices().size());
  const auto bed = load_scenario(kScenarios / "testbed.json");
  EXPECT_EQ(bed.kind, ScenarioKind::Testbed);
  EXPECT_EQ(bed.testbed.nodes, 6u);
}

TEST(Scenario, OverridesApply) {
  const auto c = parse_scenario(R"({
    "name": "small",
    "duration_s": 7200,
    "link": {"rate_bps": 128000},
    "nodes": {"travelers": 20},
    "workloads": [{"class": "text", "bundle_size": 50, "per_day": 3}]
  })");
  EXPECT_EQ(c.name, "small");
  EXPECT_DOUBLE_EQ(c.duration_s, 7200);
  EXPECT_DOUBLE_EQ(c.link.rate_bps, 128000);
  EXPECT_DOUBLE_EQ(c.link.range_m, 10.0);
  EXPECT_EQ(c.nodes.travelers, 20u);
  ASSERT_EQ(c.workloads.size(), 1u);
  EXPECT_DOUBLE_EQ(c.workloads[0].target_ratio, 0.50);
  EXPECT_EQ(c.bundle_bytes(c.workloads[0]), 50u * 1024u);
}

TEST(Scenario, RoutingAndContactCap) {
  const auto c = parse_scenario(
      R"({"routing": {"immunity": true}, "link": {"max_contact_s": 120}})");
  EXPECT_TRUE(c.immunity);
  EXPECT_FALSE(c.deliverable_first);
  EXPECT_DOUBLE_EQ(c.link.max_contact_s, 120);
  EXPECT_DOUBLE_EQ(ScenarioConfig::testbed_defaults().link.max_contact_s, 0);
  const auto d = diagnostics_of(R"({"link": {"max_contact_s": -1}})");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].field, "/link/max_contact_s");
}

TEST(Scenario, KilobitSizes) {
  const auto c = parse_scenario(
      R"({"sizes_unit": "Kb", "workloads": [{"class": "audio", "bundle_size": 3000}]})");
  EXPECT_EQ(c.bundle_bytes(c.workloads[0]), 375000u);
}

TEST(Scenario, UnknownFieldIsLineAnchored) {
  const auto d = diagnostics_of("{\n  \"name\": \"x\",\n  \"colour\": 3\n}");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].field, "/colour");
  EXPECT_EQ(d[0].line, 3);
  EXPECT_EQ(d[0].to_string(), "line 3: /colour: unknown field");
}

TEST(Scenario, EveryProblemIsReported) {
  const auto d = diagnostics_of(R"({
  "ttl_s": -1,
  "link": {
    "rate_bps": "fast"
  },
  "workloads": [
    {"class": "smell", "bundle_size": 1},
    {"class": "text", "bundle_size": 1, "window_s": [500, 100]}
  ]
})");
  std::map<std::string, int> lines;
  for (const auto& x : d) {
    lines[x.field] = x.line;
  }
  EXPECT_EQ(lines.at("/ttl_s"), 2);
  EXPECT_EQ(lines.at("/link/rate_bps"), 4);
  EXPECT_EQ(lines.at("/workloads/0/class"), 7);
  EXPECT_EQ(lines.at("/workloads/1/window_s"), 8);
}

TEST(Scenario, SyntaxErrorCarriesLine) {
  const auto d = diagnostics_of("{\n  \"name\": \"x\",\n  \"ttl_s\": ,\n}");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].line, 3);
}

TEST(Scenario, TravelerBounds) {
  const auto d = diagnostics_of(R"({"nodes": {"travelers": 400}})");
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].field.rfind("/nodes", 0), 0u);
}

TEST(Scenario, EffectiveJsonRoundTrips) {
  auto c = ScenarioConfig::riverside_defaults();
  c.name = "odd \"name\"";
  c.link.rate_bps = 123456.5;
  c.day.wake_s = {1.25, 2.5};
  c.sizes_unit = SizeUnit::Kb;
  c.link.max_contact_s = 0;
  c.deliverable_first = true;
  c.immunity = true;
  EXPECT_EQ(parse_scenario(effective_json(c)), c);
  const auto t = ScenarioConfig::testbed_defaults();
  EXPECT_EQ(parse_scenario(effective_json(t)), t);
}

TEST(Scenario, MapPathResolvesAgainstBaseDir) {
  const auto dir = std::filesystem::temp_directory_path() / "riverdtn_scenario_test";
  std::filesystem::create_directories(dir / "maps");
  {
    std::ofstream(dir / "maps" / "m.json")
        << R"({"vertices": [{"name": "PierA", "x": 0, "y": 0}, {"name": "PierB", "x": 8000, "y": 0},
                            {"name": "C1", "x": 2000, "y": 2000}, {"name": "C2", "x": 4000, "y": 2000},
                            {"name": "C3", "x": 6000, "y": 2000}, {"name": "C4", "x": 4000, "y": -2000}],
              "edges": [{"from": "PierA", "to": "C1"}, {"from": "C1", "to": "C2"},
                        {"from": "C2", "to": "C3"}, {"from": "C3", "to": "PierB"},
                        {"from": "C2", "to": "C4"}]})";
  }
  const auto c = parse_scenario(R"({"map": "maps/m.json"})", dir);
  EXPECT_EQ(c.map.vertices().size(), 6u);
  EXPECT_EQ(c.map_source, "maps/m.json");
  EXPECT_THROW(parse_scenario(R"({"map": "maps/none.json"})", dir), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Scenario, DisconnectedMapRejected) {
  const auto d = diagnostics_of(R"({"map": {"vertices": [
      {"name": "PierA", "x": 0, "y": 0}, {"name": "PierB", "x": 1, "y": 0},
      {"name": "C1", "x": 2, "y": 0}, {"name": "C2", "x": 3, "y": 0},
      {"name": "C3", "x": 4, "y": 0}, {"name": "C4", "x": 5, "y": 0}],
      "edges": [{"from": "PierA", "to": "PierB"}]}})");
  EXPECT_FALSE(d.empty());
}

TEST(Scenario, DefaultCalibrationHitsTargets) {
  for (const auto& c : check_calibration(ScenarioConfig::testbed_defaults())) {
    EXPECT_TRUE(c.ok) << c.error;
    EXPECT_NEAR(c.achieved, c.target, 0.03);
  }
}

}  // namespace
}  // namespace riverdtn::sim
