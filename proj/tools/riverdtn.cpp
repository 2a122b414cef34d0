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

// riverdtn: experiment driver and bundle codec tool.
//
//   riverdtn run --scenario <file> --nodes <list> --compression on|off|both
//                --seeds <n> --jobs <n> --out <dir>
//   riverdtn validate --scenario <file>
//   riverdtn codec encode <description.json> <out.bundle>
//   riverdtn codec decode <in.bundle> [out.txt]
//   riverdtn codec compress <in.bundle> <out.bundle> [--level n]
//
// Exit status: 0 success, 2 invalid configuration or input, 3 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "riverdtn/bundle.hpp"
#include "riverdtn/compression.hpp"
#include "riverdtn/error.hpp"
#include "riverdtn/experiment.hpp"
#include "riverdtn/log.hpp"
#include "riverdtn/scenario.hpp"
#include "riverdtn/sdnv.hpp"

namespace {

using namespace riverdtn;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

/// Input the user can fix; exits 2.
class BadInput : public Error {
public:
  using Error::Error;
};

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read " + path);
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("cannot write " + path);
  }
}

void print_diagnostics(const std::string& source, const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.line > 0) {
      std::cerr << source << ":" << d.line << ": ";
    } else {
      std::cerr << source << ": ";
    }
    std::cerr << (d.field.empty() ? "/" : d.field) << ": " << d.message << "\n";
  }
}

std::vector<std::size_t> parse_node_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw ConfigInvalid({{"--nodes", 0, "'" + item + "' is not a node count"}});
    }
    out.push_back(static_cast<std::size_t>(n));
  }
  return out;
}

// --- run ------------------------------------------------------------------

struct RunArgs {
  std::string scenario;
  std::string nodes;
  std::string compression = "both";
  std::size_t seeds = 100;
  std::size_t jobs = 1;
  std::string out = "results";
};

void print_summary(const std::vector<experiment::ResultRow>& rows) {
  std::map<std::tuple<std::size_t, std::size_t, bool>, std::pair<double, std::size_t>> sums;
  for (const auto& r : rows) {
    auto& s = sums[{r.node_count, index_of(r.content_class), r.compression_on}];
    s.first += static_cast<double>(r.delivered);
    ++s.second;
  }
  std::cout << fmt::format("{:>6}  {:<6}  {:>12}  {:>12}  {:>7}\n", "nodes", "class",
                           "delivered/off", "delivered/on", "on/off");
  for (const auto& [key, value] : sums) {
    const auto& [nodes, cls, on] = key;
    if (on) {
      continue;
    }
    const double off_mean = value.first / static_cast<double>(value.second);
    auto it = sums.find({nodes, cls, true});
    if (it == sums.end()) {
      std::cout << fmt::format("{:>6}  {:<6}  {:>12.1f}  {:>12}  {:>7}\n", nodes,
                               to_string(kAllContentClasses[cls]), off_mean, "-", "-");
      continue;
    }
    const double on_mean = it->second.first / static_cast<double>(it->second.second);
    const std::string ratio = off_mean > 0 ? fmt::format("{:.3f}", on_mean / off_mean) : "-";
    std::cout << fmt::format("{:>6}  {:<6}  {:>12.1f}  {:>12.1f}  {:>7}\n", nodes,
                             to_string(kAllContentClasses[cls]), off_mean, on_mean, ratio);
  }
}

int cmd_run(const RunArgs& args) {
  experiment::ExperimentMatrix matrix;
  matrix.scenario = sim::load_scenario(args.scenario);
  if (!args.nodes.empty()) {
    matrix.node_counts = parse_node_list(args.nodes);
  } else if (matrix.scenario.kind == sim::ScenarioKind::Testbed) {
    matrix.node_counts = {matrix.scenario.testbed.nodes};
  }
  if (args.compression == "on") {
    matrix.compression = experiment::CompressionMode::On;
  } else if (args.compression == "off") {
    matrix.compression = experiment::CompressionMode::Off;
  } else {
    matrix.compression = experiment::CompressionMode::Both;
  }
  matrix.seeds = args.seeds;
  matrix.jobs = args.jobs;
  if (auto problems = matrix.check(); !problems.empty()) {
    throw ConfigInvalid(std::move(problems));
  }
  const auto specs = experiment::expand(matrix);
  log_info(fmt::format("{} runs on {} worker(s)", specs.size(), matrix.jobs));
  const auto outcomes = experiment::run_all(
      matrix.scenario, specs, matrix.jobs, [](std::size_t done, std::size_t total) {
        log_info(fmt::format("finished {}/{}", done, total));
      });
  const auto rows = experiment::to_rows(matrix.scenario.name, outcomes);
  experiment::write_outputs(args.out, rows);
  print_summary(rows);
  std::cout << "wrote " << (std::filesystem::path(args.out) / "results.csv").string() << " and "
            << (std::filesystem::path(args.out) / "summary.csv").string() << "\n";
  return kExitOk;
}

// --- validate -------------------------------------------------------------

int cmd_validate(const std::string& path) {
  const auto config = sim::load_scenario(path);
  bool calibrated = true;
  std::cout << "scenario " << path << ": schema ok\n";
  std::cout << "payload calibration (tolerance 0.03):\n";
  for (const auto& check : sim::check_calibration(config)) {
    if (check.ok) {
      std::cout << fmt::format("  {:<6} {:>8} bytes  target {:.3f}  achieved {:.4f}  ok\n",
                               to_string(check.content_class), check.bytes, check.target,
                               check.achieved);
    } else {
      calibrated = false;
      std::cout << fmt::format("  {:<6} {:>8} bytes  target {:.3f}  FAILED: {}\n",
                               to_string(check.content_class), check.bytes, check.target,
                               check.error);
    }
  }
  std::cout << "effective configuration:\n" << sim::effective_json(config);
  if (!calibrated) {
    std::cerr << path << ": payload calibration failed\n";
    return kExitInvalid;
  }
  return kExitOk;
}

// --- codec ----------------------------------------------------------------

std::string hex(std::span<const std::uint8_t> bytes, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < bytes.size() && i < limit; ++i) {
    out += fmt::format("{:02x}", bytes[i]);
  }
  if (bytes.size() > limit) {
    out += "...";
  }
  return out;
}

std::string printable_dictionary(const std::vector<std::uint8_t>& dict) {
  std::string out;
  for (auto b : dict) {
    out += b == 0 ? std::string("\\0") : std::string(1, static_cast<char>(b));
  }
  return out;
}

int codec_encode(const std::string& in_path, const std::string& out_path) {
  const auto raw = read_bytes(in_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw.begin(), raw.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw BadInput(in_path + ": " + e.what());
  }
  auto field = [&](const char* key) -> const nlohmann::json& {
    if (!doc.is_object() || !doc.contains(key)) {
      throw BadInput(in_path + ": missing field '" + key + "'");
    }
    return doc[key];
  };
  auto eid = [&](const char* key) {
    if (doc.is_object() && !doc.contains(key)) {
      return data::EndpointId::null();
    }
    const auto& v = field(key);
    if (!v.is_string()) {
      throw BadInput(in_path + ": '" + key + "' must be a string");
    }
    return data::EndpointId::parse(v.get<std::string>());
  };
  auto number = [&](const char* key, std::uint64_t fallback) -> std::uint64_t {
    if (doc.is_object() && !doc.contains(key)) {
      return fallback;
    }
    const auto& v = field(key);
    if (!v.is_number_unsigned()) {
      throw BadInput(in_path + ": '" + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };

  data::Bundle bundle;
  bundle.primary = data::PrimaryBlock::make(eid("destination"), eid("source"), eid("report_to"),
                                            eid("custodian"), number("creation_time", 0),
                                            number("creation_seq", 0), number("lifetime", 0));
  std::vector<std::uint8_t> payload;
  if (doc.contains("payload_file")) {
    const auto rel = doc["payload_file"].get<std::string>();
    payload = read_bytes((std::filesystem::path(in_path).parent_path() / rel).string());
  } else if (doc.contains("payload_text")) {
    const auto text = doc["payload_text"].get<std::string>();
    payload.assign(text.begin(), text.end());
  }
  bundle.payload.data = SharedBytes(std::move(payload));
  const auto bytes = data::serialize_bundle(bundle);
  write_bytes(out_path, bytes);
  std::cout << "encoded " << bytes.size() << " bytes to " << out_path << "\n";
  return kExitOk;
}

int codec_decode(const std::string& in_path, const std::string& out_path) {
  const auto bytes = read_bytes(in_path);
  const auto bundle = data::deserialize_bundle(bytes);
  const auto& p = bundle.primary;
  const auto flags = data::decode_sdnv(bytes, 1);
  const auto block_length = data::decode_sdnv(bytes, 1 + flags.consumed);

  std::ostringstream out;
  out << "bundle " << bundle.id().str() << " (" << bytes.size() << " bytes)\n";
  out << fmt::format("  version       {}\n", p.version);
  out << fmt::format("  flags         {:#x}\n", p.flags);
  out << fmt::format("  block length  {}\n", block_length.value);
  for (auto [name, role] : {std::pair{"destination", data::EidRole::Destination},
                            std::pair{"source", data::EidRole::Source},
                            std::pair{"report_to", data::EidRole::ReportTo},
                            std::pair{"custodian", data::EidRole::Custodian}}) {
    const auto& ref = p.ref(role);
    out << fmt::format("  {:<12}  {} (offsets {}, {})\n", name, p.eid(role).str(),
                       ref.scheme_offset, ref.ssp_offset);
  }
  out << fmt::format("  creation      time {} seq {}\n", p.creation_time, p.creation_seq);
  out << fmt::format("  lifetime      {} s\n", p.lifetime_s);
  out << fmt::format("  dictionary    {} bytes \"{}\"\n", p.dictionary.size(),
                     printable_dictionary(p.dictionary));
  out << fmt::format("  payload       {} bytes, flags {:#x}{}\n", bundle.payload.data.size(),
                     bundle.payload.flags, bundle.payload.compressed() ? " (deflate)" : "");
  out << fmt::format("  payload head  {}\n", hex(bundle.payload.data.span(), 32));
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    const auto s = out.str();
    write_bytes(out_path, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }
  return kExitOk;
}

int codec_compress(const std::string& in_path, const std::string& out_path, int level) {
  const auto bytes = read_bytes(in_path);
  const auto bundle = data::deserialize_bundle(bytes);
  compression::CompressionSetting setting{true, level};
  try {
    setting.validate();
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  const auto [packed, report] = compression::compress_bundle(bundle, setting);
  const auto out = data::serialize_bundle(packed);
  write_bytes(out_path, out);
  std::cout << fmt::format("original {} bytes, compressed {} bytes, ratio {:.4f}{}\n",
                           report.original_bytes, report.compressed_bytes, report.ratio,
                           packed.payload.compressed() ? "" : " (stored uncompressed)");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging_from_env();

  CLI::App app{"riverdtn: Bluetooth DTN simulator and bundle codec"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run an experiment matrix and write CSV results");
  run->add_option("--scenario", run_args.scenario, "scenario JSON file")->required();
  run->add_option("--nodes", run_args.nodes, "comma-separated node counts");
  run->add_option("--compression", run_args.compression, "on|off|both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  run->add_option("--seeds", run_args.seeds, "seeds per configuration");
  run->add_option("--jobs", run_args.jobs, "parallel workers");
  run->add_option("--out", run_args.out, "output directory");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a scenario and print its resolved form");
  validate->add_option("--scenario", validate_path, "scenario JSON file")->required();

  auto* codec = app.add_subcommand("codec", "bundle codec tools");
  codec->require_subcommand(1);
  std::string encode_in;
  std::string encode_out;
  auto* encode = codec->add_subcommand("encode", "build a bundle from a JSON description");
  encode->add_option("in", encode_in, "description JSON")->required();
  encode->add_option("out", encode_out, "output bundle file")->required();
  std::string decode_in;
  std::string decode_out;
  auto* decode = codec->add_subcommand("decode", "pretty-print a serialized bundle");
  decode->add_option("in", decode_in, "bundle file")->required();
  decode->add_option("out", decode_out, "write the listing here instead of stdout");
  std::string compress_in;
  std::string compress_out;
  int level = compression::kDefaultLevel;
  auto* compress = codec->add_subcommand("compress", "deflate a bundle's payload");
  compress->add_option("in", compress_in, "bundle file")->required();
  compress->add_option("out", compress_out, "output bundle file")->required();
  compress->add_option("--level", level, "deflate level 1..9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  std::string source;
  try {
    if (*run) {
      source = run_args.scenario;
      return cmd_run(run_args);
    }
    if (*validate) {
      source = validate_path;
      return cmd_validate(validate_path);
    }
    if (*encode) {
      return codec_encode(encode_in, encode_out);
    }
    if (*decode) {
      return codec_decode(decode_in, decode_out);
    }
    if (*compress) {
      return codec_compress(compress_in, compress_out, level);
    }
  } catch (const ConfigInvalid& e) {
    print_diagnostics(source.empty() ? "riverdtn" : source, e.diagnostics());
    return kExitInvalid;
  } catch (const IoError& e) {
    std::cerr << "riverdtn: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    // Malformed bundles, bad EIDs, corrupt payloads, bad descriptions.
    std::cerr << "riverdtn: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "riverdtn: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "riverdtn: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
