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
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "riverdtn/content.hpp"
#include "riverdtn/scenario.hpp"
#include "riverdtn/simulator.hpp"

namespace riverdtn::experiment {

enum class CompressionMode { On, Off, Both };

struct ExperimentMatrix {
  sim::ScenarioConfig scenario;
  std::vector<std::size_t> node_counts{10, 30, 50, 70, 90, 110, 130, 150};
  CompressionMode compression = CompressionMode::Both;
  std::size_t seeds = 100;
  std::size_t jobs = 1;

  /// Seeds, node counts, and jobs checked against the scenario bounds.
  std::vector<Diagnostic> check() const;
};

/// One simulation of the matrix.
struct RunSpec {
  std::uint64_t seed = 0;
  std::size_t node_count = 0;
  bool compression_on = false;
};

struct RunOutcome {
  RunSpec spec;
  sim::Metrics metrics;
};

struct ResultRow {
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::size_t node_count = 0;
  ContentClass content_class = ContentClass::Text;
  bool compression_on = false;
  std::uint64_t created = 0;
  std::uint64_t delivered = 0;
  double delivery_ratio = 0.0;
  double mean_latency_s = 0.0;
  double bits_transmitted = 0.0;
  double mean_compression_ratio = 0.0;
};

/// Every (seed, node count, setting) combination; seed = scenario seed + index.
std::vector<RunSpec> expand(const ExperimentMatrix& matrix);

/// Scenario for one run: traveler count (or testbed size), seed, setting.
sim::ScenarioConfig configure_run(const sim::ScenarioConfig& base, const RunSpec& spec);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every spec on up to `jobs` threads; outcomes come back in spec order.
std::vector<RunOutcome> run_all(const sim::ScenarioConfig& base, const std::vector<RunSpec>& specs,
                                std::size_t jobs, const ProgressFn& progress = {});

/// Rows sorted by (node count, seed, class, compression off before on).
std::vector<ResultRow> to_rows(const std::string& scenario_name,
                               const std::vector<RunOutcome>& outcomes);

/// Six significant digits, as written to the CSV files.
std::string format_number(double value);
std::string format_number(std::uint64_t value);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& value);

extern const std::vector<std::string> kResultColumns;
extern const std::vector<std::string> kSummaryColumns;

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Per (node count, class, setting): seed count plus means with 95% Student-t
/// confidence half-widths. Statistics are computed from the values exactly
/// as results.csv prints them.
void write_summary_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Mean and 95% half-width; half-width is NaN for fewer than two samples.
struct Interval {
  double mean = 0.0;
  double half_width = 0.0;
};
Interval mean_ci95(const std::vector<double>& samples);

/// Writes results.csv and summary.csv under dir (created when missing).
/// Throws IoError.
void write_outputs(const std::filesystem::path& dir, const std::vector<ResultRow>& rows);

}  // namespace riverdtn::experiment
