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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "riverdtn/compression.hpp"
#include "riverdtn/content.hpp"
#include "riverdtn/network.hpp"
#include "riverdtn/scenario.hpp"

namespace riverdtn::sim {

struct ClassMetrics {
  std::uint64_t created = 0;
  std::uint64_t delivered = 0;
  double delivery_ratio = 0.0;
  double mean_latency_s = 0.0;
  double bits_transmitted = 0.0;
  double mean_compression_ratio = 0.0;

  bool operator==(const ClassMetrics&) const = default;
};

struct Metrics {
  std::array<ClassMetrics, 3> classes{};
  LinkAudit audit;

  const ClassMetrics& operator[](ContentClass c) const { return classes[index_of(c)]; }
  bool operator==(const Metrics& o) const;
};

Metrics summarize(const std::array<ClassCounters, 3>& counters, const LinkAudit& audit);

/// Per-tick view handed to an observer (tests, trace tools).
struct TickView {
  double now;
  const std::vector<Vec2>& positions;
  const Network& network;
};
using TickObserver = std::function<void(const TickView&)>;

/// Runs a scenario to duration_s. Deterministic in the configuration.
/// Throws ConfigInvalid when check_scenario reports problems.
Metrics run(const ScenarioConfig& config, const TickObserver& observer = {});

/// Six-node office walk with the testbed defaults and the given seed.
Metrics run_testbed_preset(std::uint64_t seed, bool compression = true);

/// Synthetic payload for a workload variant together with its compressed
/// form, shared process-wide.
struct PayloadVariant {
  SharedBytes plain;
  data::PayloadBlock wire;  // what travels: compressed when it helps
  compression::CompressionReport report;
};
const PayloadVariant& payload_variant(ContentClass cls, double target_ratio, std::size_t bytes,
                                      std::size_t variant,
                                      const compression::CompressionSetting& setting);

// ---------------------------------------------------------------------------
// Scripted contact traces.

struct TraceContact {
  std::size_t a = 0;
  std::size_t b = 0;
  double start = 0.0;
  double end = 0.0;  // inclusive
};

struct TraceBundle {
  std::size_t source = 0;
  std::size_t destination = 0;
  double created_at = 0.0;  // whole seconds
  ContentClass content_class = ContentClass::Text;
  std::size_t bytes = 1;
};

struct TraceResult {
  Metrics metrics;
  std::vector<Reception> receptions;
  /// Per bundle (input order), the nodes that ever stored a copy,
  /// including the source.
  std::vector<std::vector<std::size_t>> holders;
};

/// Replays scripted contacts. At each instant, contacts starting then come
/// up first, bundles created then are stored at their source, transfers
/// finishing by then complete, and contacts ending then go down last.
TraceResult replay_trace(std::size_t nodes, std::span<const TraceContact> contacts,
                         std::span<const TraceBundle> bundles, const NetworkOptions& options,
                         double ttl_s, const compression::CompressionSetting& setting);

}  // namespace riverdtn::sim
