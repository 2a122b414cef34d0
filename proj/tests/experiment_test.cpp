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

#include "riverdtn/experiment.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "csv_reader.hpp"

namespace riverdtn::experiment {
namespace {

using testing::read_csv;

TEST(Format, SixSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_number(123456789.0), "1.23457e+08");
  EXPECT_EQ(format_number(2.0 / 3.0 * 1000), "666.667");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(std::uint64_t{18446744073709551615ULL}), "18446744073709551615");
}

TEST(Format, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Stats, StudentTInterval) {
  const auto i = mean_ci95({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(i.mean, 3.0);
  // t(0.975, 4) = 2.7764451051977987; s = sqrt(2.5).
  EXPECT_NEAR(i.half_width, 2.7764451051977987 * std::sqrt(2.5) / std::sqrt(5.0), 1e-12);
  const auto two = mean_ci95({10, 12});
  // t(0.975, 1) = 12.706204736174698; s = sqrt(2).
  EXPECT_NEAR(two.half_width, 12.706204736174698 * std::sqrt(2.0) / std::sqrt(2.0), 1e-9);
  EXPECT_DOUBLE_EQ(mean_ci95({4, 4, 4}).half_width, 0.0);
}

TEST(Stats, SingleSampleHasNoInterval) {
  const auto i = mean_ci95({7});
  EXPECT_DOUBLE_EQ(i.mean, 7.0);
  EXPECT_TRUE(std::isnan(i.half_width));
  EXPECT_TRUE(std::isnan(mean_ci95({}).mean));
}

TEST(Matrix, ExpandCoversEveryCombination) {
  ExperimentMatrix m;
  m.scenario = sim::ScenarioConfig::riverside_defaults();
  m.scenario.seed = 40;
  m.node_counts = {10, 30};
  m.seeds = 3;
  const auto specs = expand(m);
  ASSERT_EQ(specs.size(), 12u);
  std::set<std::tuple<std::uint64_t, std::size_t, bool>> seen;
  for (const auto& s : specs) {
    EXPECT_GE(s.seed, 40u);
    EXPECT_LT(s.seed, 43u);
    seen.insert({s.seed, s.node_count, s.compression_on});
  }
  EXPECT_EQ(seen.size(), 12u);
  m.compression = CompressionMode::On;
  EXPECT_EQ(expand(m).size(), 6u);
}

TEST(Matrix, CheckFlagsOutOfRange) {
  ExperimentMatrix m;
  m.scenario = sim::ScenarioConfig::riverside_defaults();
  m.node_counts = {5, 150, 151};
  m.seeds = 0;
  const auto d = m.check();
  EXPECT_EQ(d.size(), 3u);
}

TEST(Matrix, ConfigureRun) {
  const auto base = sim::ScenarioConfig::riverside_defaults();
  const auto c = configure_run(base, {77, 30, false});
  EXPECT_EQ(c.seed, 77u);
  EXPECT_EQ(c.nodes.travelers, 30u);
  EXPECT_FALSE(c.compression.enabled);
  const auto t = configure_run(sim::ScenarioConfig::testbed_defaults(), {1, 4, true});
  EXPECT_EQ(t.testbed.nodes, 4u);
  EXPECT_TRUE(t.compression.enabled);
}

std::vector<RunOutcome> fake_outcomes() {
  std::vector<RunOutcome> out;
  std::uint64_t k = 1;
  for (std::uint64_t seed : {3, 1, 2}) {
    for (std::size_t nodes : {30, 10}) {
      for (bool on : {true, false}) {
        RunOutcome o{{seed, nodes, on}, {}};
        for (std::size_t c = 0; c < 3; ++c) {
          auto& m = o.metrics.classes[c];
          m.created = 40;
          m.delivered = (k * 7 + c * 3) % 41;
          m.delivery_ratio = static_cast<double>(m.delivered) / 40.0;
          m.mean_latency_s = 1000.0 / static_cast<double>(k + c);
          m.bits_transmitted = 1e9 / static_cast<double>(k);
          m.mean_compression_ratio = on ? 0.123456789 * static_cast<double>(c + 1) : 0.0;
          ++k;
        }
        out.push_back(o);
      }
    }
  }
  return out;
}

TEST(Csv, ResultsHaveFixedColumnsAndSortedRows) {
  const auto rows = to_rows("a,b", fake_outcomes());
  ASSERT_EQ(rows.size(), 36u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto key = [](const ResultRow& r) {
      return std::tuple(r.node_count, r.seed, index_of(r.content_class), r.compression_on);
    };
    EXPECT_LT(key(rows[i - 1]), key(rows[i]));
  }
  std::ostringstream out;
  write_results_csv(out, rows);
  const auto text = out.str();
  EXPECT_NE(text.find("\r\n"), std::string::npos);
  const auto table = read_csv(text);
  ASSERT_EQ(table.size(), 37u);
  EXPECT_EQ(table[0], kResultColumns);
  for (const auto& r : table) {
    EXPECT_EQ(r.size(), kResultColumns.size());
  }
  EXPECT_EQ(table[1][0], "a,b");
  EXPECT_EQ(table[1][1], "1");
  EXPECT_EQ(table[1][2], "10");
  EXPECT_EQ(table[1][3], "text");
  EXPECT_EQ(table[1][4], "off");
}

TEST(Csv, SummaryRecomputesFromResults) {
  const auto rows = to_rows("s", fake_outcomes());
  std::ostringstream results;
  std::ostringstream summary;
  write_results_csv(results, rows);
  write_summary_csv(summary, rows);
  const auto r = read_csv(results.str());
  const auto s = read_csv(summary.str());
  EXPECT_EQ(s[0], kSummaryColumns);
  ASSERT_EQ(s.size(), 1u + 2 * 3 * 2);

  std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::vector<double>>> g;
  for (std::size_t i = 1; i < r.size(); ++i) {
    auto& v = g[{r[i][2], r[i][3], r[i][4]}];
    v.push_back({std::stod(r[i][5]), std::stod(r[i][6]), std::stod(r[i][7]), std::stod(r[i][8]),
                 std::stod(r[i][9]), std::stod(r[i][10])});
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    const auto& row = s[i];
    ASSERT_EQ(row.size(), kSummaryColumns.size());
    const auto& samples = g.at({row[1], row[2], row[3]});
    EXPECT_EQ(row[4], std::to_string(samples.size()));
    auto column = [&](std::size_t k) {
      std::vector<double> out;
      for (const auto& x : samples) {
        out.push_back(x[k]);
      }
      return out;
    };
    EXPECT_EQ(row[5], format_number(mean_ci95(column(0)).mean));
    EXPECT_EQ(row[6], format_number(mean_ci95(column(1)).mean));
    EXPECT_EQ(row[7], format_number(mean_ci95(column(1)).half_width));
    EXPECT_EQ(row[8], format_number(mean_ci95(column(2)).mean));
    EXPECT_EQ(row[10], format_number(mean_ci95(column(3)).mean));
    EXPECT_EQ(row[12], format_number(mean_ci95(column(4)).mean));
    EXPECT_EQ(row[14], format_number(mean_ci95(column(5)).mean));
  }
}

TEST(Csv, WriteOutputsReportsIoError) {
  EXPECT_THROW(write_outputs("/proc/riverdtn-cannot-exist/out", {}), IoError);
}

TEST(RunAll, ParallelMatchesSerial) {
  auto base = sim::ScenarioConfig::testbed_defaults();
  base.duration_s = 900;
  ExperimentMatrix m;
  m.scenario = base;
  m.node_counts = {3, 6};
  m.seeds = 2;
  const auto specs = expand(m);
  std::size_t calls = 0;
  const auto serial = run_all(base, specs, 1, [&](std::size_t, std::size_t) { ++calls; });
  const auto parallel = run_all(base, specs, 3);
  EXPECT_EQ(calls, specs.size());
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].metrics, parallel[i].metrics);
    EXPECT_EQ(serial[i].spec.seed, specs[i].seed);
  }
}

}  // namespace
}  // namespace riverdtn::experiment
