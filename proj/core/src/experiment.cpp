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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>

#include "riverdtn/log.hpp"

namespace riverdtn::experiment {

namespace {

constexpr const char* kEol = "\r\n";

double reparse(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      out << ',';
    }
    out << csv_field(fields[i]);
  }
  out << kEol;
}

}  // namespace

const std::vector<std::string> kResultColumns = {
    "scenario_name", "seed",           "node_count",       "content_class",
    "compression_on", "created",       "delivered",        "delivery_ratio",
    "mean_latency_s", "bits_transmitted", "mean_compression_ratio"};

const std::vector<std::string> kSummaryColumns = {
    "scenario_name",         "node_count",          "content_class",
    "compression_on",        "seeds",               "created_mean",
    "delivered_mean",        "delivered_ci95",      "delivery_ratio_mean",
    "delivery_ratio_ci95",   "mean_latency_s_mean", "mean_latency_s_ci95",
    "bits_transmitted_mean", "bits_transmitted_ci95", "mean_compression_ratio_mean"};

std::vector<Diagnostic> ExperimentMatrix::check() const {
  std::vector<Diagnostic> out;
  if (seeds == 0) {
    out.push_back({"--seeds", 0, "must be at least 1"});
  }
  if (jobs == 0) {
    out.push_back({"--jobs", 0, "must be at least 1"});
  }
  if (node_counts.empty()) {
    out.push_back({"--nodes", 0, "needs at least one node count"});
  }
  for (auto n : node_counts) {
    if (scenario.kind == sim::ScenarioKind::Riverside) {
      if (n < scenario.nodes.min_travelers || n > scenario.nodes.max_travelers) {
        out.push_back({"--nodes", 0,
                       "node count " + std::to_string(n) + " outside scenario bounds [" +
                           std::to_string(scenario.nodes.min_travelers) + ", " +
                           std::to_string(scenario.nodes.max_travelers) + "]"});
      }
    } else if (n < 2) {
      out.push_back({"--nodes", 0, "testbed needs at least 2 nodes"});
    }
  }
  return out;
}

std::vector<RunSpec> expand(const ExperimentMatrix& matrix) {
  std::vector<bool> settings;
  if (matrix.compression != CompressionMode::On) {
    settings.push_back(false);
  }
  if (matrix.compression != CompressionMode::Off) {
    settings.push_back(true);
  }
  std::vector<RunSpec> specs;
  for (auto n : matrix.node_counts) {
    for (std::size_t i = 0; i < matrix.seeds; ++i) {
      for (bool on : settings) {
        specs.push_back({matrix.scenario.seed + i, n, on});
      }
    }
  }
  return specs;
}

sim::ScenarioConfig configure_run(const sim::ScenarioConfig& base, const RunSpec& spec) {
  auto c = base;
  c.seed = spec.seed;
  c.compression.enabled = spec.compression_on;
  if (c.kind == sim::ScenarioKind::Riverside) {
    c.nodes.travelers = spec.node_count;
  } else {
    c.testbed.nodes = spec.node_count;
  }
  return c;
}

std::vector<RunOutcome> run_all(const sim::ScenarioConfig& base, const std::vector<RunSpec>& specs,
                                std::size_t jobs, const ProgressFn& progress) {
  std::vector<RunOutcome> outcomes(specs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) {
        return;
      }
      try {
        const auto config = configure_run(base, specs[i]);
        outcomes[i] = {specs[i], sim::run(config)};
        log_debug("run seed=" + std::to_string(specs[i].seed) +
                  " nodes=" + std::to_string(specs[i].node_count) +
                  " compression=" + (specs[i].compression_on ? "on" : "off") + " done");
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = specs.size();
        return;
      }
      const auto finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, specs.size());
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, specs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return outcomes;
}

std::vector<ResultRow> to_rows(const std::string& scenario_name,
                               const std::vector<RunOutcome>& outcomes) {
  std::vector<ResultRow> rows;
  for (const auto& o : outcomes) {
    for (auto cls : kAllContentClasses) {
      const auto& m = o.metrics[cls];
      rows.push_back({scenario_name, o.spec.seed, o.spec.node_count, cls, o.spec.compression_on,
                      m.created, m.delivered, m.delivery_ratio, m.mean_latency_s,
                      m.bits_transmitted, m.mean_compression_ratio});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tuple(a.node_count, a.seed, index_of(a.content_class), a.compression_on) <
           std::tuple(b.node_count, b.seed, index_of(b.content_class), b.compression_on);
  });
  return rows;
}

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (value == 0.0) {
    return "0";  // also folds -0
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_number(std::uint64_t value) { return std::to_string(value); }

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) {
    return value;
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  write_line(out, kResultColumns);
  for (const auto& r : rows) {
    write_line(out, {r.scenario_name, format_number(r.seed),
                     format_number(static_cast<std::uint64_t>(r.node_count)),
                     std::string(to_string(r.content_class)), r.compression_on ? "on" : "off",
                     format_number(r.created), format_number(r.delivered),
                     format_number(r.delivery_ratio), format_number(r.mean_latency_s),
                     format_number(r.bits_transmitted), format_number(r.mean_compression_ratio)});
  }
}

Interval mean_ci95(const std::vector<double>& samples) {
  Interval out;
  const auto n = samples.size();
  if (n == 0) {
    out.mean = std::nan("");
    out.half_width = std::nan("");
    return out;
  }
  double sum = 0.0;
  for (double x : samples) {
    sum += x;
  }
  out.mean = sum / static_cast<double>(n);
  if (n < 2) {
    out.half_width = std::nan("");
    return out;
  }
  double ss = 0.0;
  for (double x : samples) {
    ss += (x - out.mean) * (x - out.mean);
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  out.half_width = t * sd / std::sqrt(static_cast<double>(n));
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  struct Samples {
    std::vector<double> created, delivered, ratio, latency, bits, compression;
  };
  using Key = std::tuple<std::string, std::size_t, std::size_t, bool>;
  std::map<Key, Samples> groups;
  for (const auto& r : rows) {
    auto& g = groups[{r.scenario_name, r.node_count, index_of(r.content_class), r.compression_on}];
    // Statistics over the printed values.
    g.created.push_back(reparse(format_number(r.created)));
    g.delivered.push_back(reparse(format_number(r.delivered)));
    g.ratio.push_back(reparse(format_number(r.delivery_ratio)));
    g.latency.push_back(reparse(format_number(r.mean_latency_s)));
    g.bits.push_back(reparse(format_number(r.bits_transmitted)));
    g.compression.push_back(reparse(format_number(r.mean_compression_ratio)));
  }
  write_line(out, kSummaryColumns);
  for (const auto& [key, g] : groups) {
    const auto& [name, nodes, cls, on] = key;
    const auto delivered = mean_ci95(g.delivered);
    const auto ratio = mean_ci95(g.ratio);
    const auto latency = mean_ci95(g.latency);
    const auto bits = mean_ci95(g.bits);
    write_line(out, {name, format_number(static_cast<std::uint64_t>(nodes)),
                     std::string(to_string(kAllContentClasses[cls])), on ? "on" : "off",
                     format_number(static_cast<std::uint64_t>(g.delivered.size())),
                     format_number(mean_ci95(g.created).mean), format_number(delivered.mean),
                     format_number(delivered.half_width), format_number(ratio.mean),
                     format_number(ratio.half_width), format_number(latency.mean),
                     format_number(latency.half_width), format_number(bits.mean),
                     format_number(bits.half_width), format_number(mean_ci95(g.compression).mean)});
  }
}

void write_outputs(const std::filesystem::path& dir, const std::vector<ResultRow>& rows) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  auto write = [&](const char* name, auto&& fn) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write " + path.string());
    }
    fn(out);
    out.flush();
    if (!out) {
      throw IoError("error writing " + path.string());
    }
  };
  write("results.csv", [&](std::ostream& o) { write_results_csv(o, rows); });
  write("summary.csv", [&](std::ostream& o) { write_summary_csv(o, rows); });
}

}  // namespace riverdtn::experiment
