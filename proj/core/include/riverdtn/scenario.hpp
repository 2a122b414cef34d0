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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "riverdtn/compression.hpp"
#include "riverdtn/content.hpp"
#include "riverdtn/convergence.hpp"
#include "riverdtn/error.hpp"
#include "riverdtn/map_graph.hpp"

namespace riverdtn::sim {

enum class ScenarioKind { Riverside, Testbed };
enum class SizeUnit { KB, Kb };  // kilobytes (1024 B) or kilobits (1000 bit)

constexpr double kDay = 86'400.0;
constexpr double kHour = 3'600.0;

/// Closed interval [lo, hi] a parameter is drawn from uniformly.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Range&) const = default;
};

struct TrafficSpec {
  ContentClass content_class = ContentClass::Text;
  double bundle_size = 0.0;  // in ScenarioConfig::sizes_unit
  std::uint32_t per_day = 0;  // bundles per server per day
  double target_ratio = 0.0;  // Deflate savings the synthetic payload is tuned to
  Range window_s{0.0, kDay};  // creation times within each day

  bool operator==(const TrafficSpec&) const = default;
};

/// Daily routine parameters. Travelers commute between their community and
/// a pier; residents stay in their community and are the bundle destinations.
struct WorkingDay {
  Range wake_s{6 * kHour, 8 * kHour};
  Range gathering_dwell_s{900, 1800};
  Range pier_dwell_s{1800, 3600};
  double wait_limit_s = 4 * kHour;  // give up on a boat after this long
  Range evening_dwell_s{1800, 3600};
  Range resident_morning_s{7 * kHour, 9 * kHour};
  Range resident_evening_s{16 * kHour, 18 * kHour};
  Range resident_dwell_s{1800, 3600};
  Range home_radius_m{100, 400};
  double gathering_offset_m = 80.0;
  double gathering_radius_m = 5.0;
  double pier_area_radius_m = 20.0;
  double dock_radius_m = 5.0;

  bool operator==(const WorkingDay&) const = default;
};

struct NodeCounts {
  std::size_t travelers = 150;
  std::size_t residents_per_community = 5;
  std::size_t boats = 10;
  std::size_t min_travelers = 10;
  std::size_t max_travelers = 150;

  bool operator==(const NodeCounts&) const = default;
};

/// Office testbed: every node does a random-waypoint walk inside a square;
/// one source node receives the workload, destinations cycle over the rest.
struct TestbedSpec {
  double side_m = 6.32;
  std::size_t nodes = 6;
  Range pause_s{0.0, 30.0};

  bool operator==(const TestbedSpec&) const = default;
};

struct ScenarioConfig {
  std::string name = "riverside";
  ScenarioKind kind = ScenarioKind::Riverside;
  double duration_s = 10 * kDay;
  std::uint64_t seed = 1;
  NodeCounts nodes;
  net::LinkParams link;
  MapGraph map = MapGraph::default_river();
  std::string map_source = "builtin:river";
  std::vector<TrafficSpec> workloads;
  SizeUnit sizes_unit = SizeUnit::KB;
  compression::CompressionSetting compression;
  double buffer_mb = 1000.0;
  double ttl_s = kDay;
  double tick_s = 1.0;
  Range boarding_s{1200, 1800};
  Range people_speed_mps{0.8, 1.4};
  Range boat_speed_mps{5.0, 7.0};
  Range boat_capacity{1, 10};
  WorkingDay day;
  TestbedSpec testbed;
  std::size_t payload_variants = 4;  // distinct synthetic payloads per class
  bool deliverable_first = false;    // bundles addressed to a peer jump its queue
  bool immunity = false;             // see net::NetworkOptions::immunity

  std::size_t buffer_bytes() const;
  std::size_t bundle_bytes(const TrafficSpec& spec) const;
  /// Total Bluetooth nodes for the current traveler count.
  std::size_t node_count() const;

  static ScenarioConfig riverside_defaults();
  static ScenarioConfig testbed_defaults();
};

/// Semantic checks (ranges, map connectivity, required sites). Line numbers
/// are left 0; parse_scenario fills them in from the document.
std::vector<Diagnostic> check_scenario(const ScenarioConfig& config);

/// Parses a scenario document. Missing fields take the defaults of the
/// preset named by "kind". A "map" string is resolved against base_dir.
/// Throws ConfigInvalid with every problem found, or IoError when a
/// referenced map file cannot be read.
ScenarioConfig parse_scenario(std::string_view json_text,
                              const std::filesystem::path& base_dir = {});

ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Map document: {"vertices": [{"name", "x", "y"}], "edges": [{"from", "to", "length"?}]}.
MapGraph parse_map(std::string_view json_text);

/// The resolved configuration as a scenario document with every default
/// spelled out; parse_scenario(effective_json(c)) == c.
std::string effective_json(const ScenarioConfig& config);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

/// Achieved Deflate savings of a workload's first synthetic payload.
struct CalibrationCheck {
  ContentClass content_class;
  double target = 0.0;
  double achieved = 0.0;
  std::size_t bytes = 0;
  bool ok = false;
  std::string error;
};
std::vector<CalibrationCheck> check_calibration(const ScenarioConfig& config);

}  // namespace riverdtn::sim
