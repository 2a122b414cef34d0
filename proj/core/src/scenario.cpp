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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "json.hpp"
#include "riverdtn/payload.hpp"
#include "riverdtn/random.hpp"

namespace riverdtn {

std::string Diagnostic::to_string() const {
  std::string out;
  if (line > 0) {
    out = "line " + std::to_string(line) + ": ";
  }
  out += (field.empty() ? "/" : field) + ": " + message;
  return out;
}

namespace {
std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out = "invalid scenario";
  for (const auto& d : diagnostics) {
    out += "\n  " + d.to_string();
  }
  return out;
}
}  // namespace

ConfigInvalid::ConfigInvalid(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace riverdtn

namespace riverdtn::sim {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Line tracking. The document is parsed a second time through SAX with an
// iterator that remembers how far the lexer has read, which gives the line
// of every key and array element.

class LineIndex {
public:
  explicit LineIndex(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') {
        newlines_.push_back(i);
      }
    }
  }

  int line_at(std::size_t byte) const {
    return static_cast<int>(std::lower_bound(newlines_.begin(), newlines_.end(), byte) -
                            newlines_.begin()) +
           1;
  }

  void record(const std::string& pointer, int line) { lines_.emplace(pointer, line); }

  /// Line of pointer, or of its nearest recorded ancestor.
  int line_of(std::string pointer) const {
    while (true) {
      auto it = lines_.find(pointer);
      if (it != lines_.end()) {
        return it->second;
      }
      if (pointer.empty()) {
        return 0;
      }
      pointer.erase(pointer.rfind('/'));
    }
  }

private:
  std::vector<std::size_t> newlines_;
  std::map<std::string, int> lines_;
};

class TrackingIterator {
public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator(const char* p, std::size_t* furthest, const char* base)
      : p_(p), furthest_(furthest), base_(base) {}

  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    ++p_;
    *furthest_ = std::max(*furthest_, static_cast<std::size_t>(p_ - base_));
    return *this;
  }
  TrackingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const TrackingIterator& o) const { return p_ == o.p_; }

private:
  const char* p_;
  std::size_t* furthest_;
  const char* base_;
};

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class LineRecorder : public nlohmann::json_sax<json> {
public:
  LineRecorder(LineIndex& index, const std::size_t& furthest) : index_(index), furthest_(furthest) {}

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t&) override { return scalar(); }
  bool binary(binary_t&) override { return scalar(); }
  bool start_object(std::size_t) override { return open(true); }
  bool key(string_t& k) override {
    auto& top = stack_.back();
    top.key = escape_token(k);
    index_.record(top.pointer + "/" + top.key, line());
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(false); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    return false;
  }

private:
  struct Frame {
    std::string pointer;
    bool object;
    std::size_t index = 0;
    std::string key;
  };

  int line() const { return index_.line_at(furthest_ == 0 ? 0 : furthest_ - 1); }

  std::string current() const {
    if (stack_.empty()) {
      return "";
    }
    const auto& top = stack_.back();
    return top.pointer + "/" + (top.object ? top.key : std::to_string(top.index));
  }

  // Array elements move the index on once complete.
  void next_element() {
    if (!stack_.empty() && !stack_.back().object) {
      ++stack_.back().index;
    }
  }

  bool scalar() {
    index_.record(current(), line());
    next_element();
    return true;
  }
  bool open(bool object) {
    auto ptr = current();
    index_.record(ptr, line());
    stack_.push_back({std::move(ptr), object, 0, {}});
    return true;
  }
  bool close() {
    stack_.pop_back();
    next_element();
    return true;
  }

  LineIndex& index_;
  const std::size_t& furthest_;
  std::vector<Frame> stack_;
};

LineIndex index_lines(std::string_view text) {
  LineIndex index(text);
  std::size_t furthest = 0;
  LineRecorder recorder(index, furthest);
  TrackingIterator first(text.data(), &furthest, text.data());
  TrackingIterator last(text.data() + text.size(), &furthest, text.data());
  json::sax_parse(first, last, &recorder);
  return index;
}

// ---------------------------------------------------------------------------
// Typed field access collecting diagnostics instead of throwing.

class Reader {
public:
  Reader(const LineIndex& lines, std::vector<Diagnostic>& diags) : lines_(lines), diags_(diags) {}

  void error(const std::string& pointer, std::string message) {
    diags_.push_back({pointer, lines_.line_of(pointer), std::move(message)});
  }

  /// Checks obj is an object and reports keys outside allowed.
  bool object(const json& obj, const std::string& ptr,
              std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
      error(ptr, "must be an object");
      return false;
    }
    for (const auto& [k, v] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        error(ptr + "/" + escape_token(k), "unknown field");
      }
    }
    return true;
  }

  void number(const json& obj, const std::string& ptr, const char* key, double& out) {
    if (!obj.contains(key)) {
      return;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      error(ptr + "/" + key, "must be a number");
      return;
    }
    out = v.get<double>();
    if (!std::isfinite(out)) {
      error(ptr + "/" + key, "must be finite");
    }
  }

  template <typename T>
  void count(const json& obj, const std::string& ptr, const char* key, T& out) {
    if (!obj.contains(key)) {
      return;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned())) {
      error(ptr + "/" + key, "must be a non-negative integer");
      return;
    }
    out = static_cast<T>(v.get<std::uint64_t>());
  }

  void text(const json& obj, const std::string& ptr, const char* key, std::string& out) {
    if (!obj.contains(key)) {
      return;
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
      error(ptr + "/" + key, "must be a string");
      return;
    }
    out = v.get<std::string>();
  }

  void flag(const json& obj, const std::string& ptr, const char* key, bool& out) {
    if (!obj.contains(key)) {
      return;
    }
    const auto& v = obj.at(key);
    if (!v.is_boolean()) {
      error(ptr + "/" + key, "must be true or false");
      return;
    }
    out = v.get<bool>();
  }

  void range(const json& obj, const std::string& ptr, const char* key, Range& out) {
    if (!obj.contains(key)) {
      return;
    }
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      error(ptr + "/" + key, "must be a [low, high] pair of numbers");
      return;
    }
    out = {v[0].get<double>(), v[1].get<double>()};
  }

private:
  const LineIndex& lines_;
  std::vector<Diagnostic>& diags_;
};

void check_range(std::vector<Diagnostic>& d, const std::string& ptr, const Range& r,
                 bool positive) {
  if (!(r.lo <= r.hi)) {
    d.push_back({ptr, 0, "range is empty (low > high)"});
  } else if (positive ? !(r.lo > 0.0) : !(r.lo >= 0.0)) {
    d.push_back({ptr, 0, positive ? "must be positive" : "must not be negative"});
  }
}

std::string_view kind_name(ScenarioKind k) {
  return k == ScenarioKind::Riverside ? "riverside" : "testbed";
}

std::vector<TrafficSpec> default_riverside_workloads() {
  return {
      {ContentClass::Text, 100, 20, 0.50, {6 * kHour, 18 * kHour}},
      {ContentClass::Audio, 3000, 10, 0.07, {6 * kHour, 18 * kHour}},
      {ContentClass::Video, 5000, 10, 0.05, {6 * kHour, 18 * kHour}},
  };
}

MapGraph map_from_json(const json& doc, Reader& r, const std::string& ptr) {
  MapGraph g;
  if (!r.object(doc, ptr, {"vertices", "edges"})) {
    return g;
  }
  const auto vptr = ptr + "/vertices";
  const auto eptr = ptr + "/edges";
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
    r.error(vptr, "must be an array of {name, x, y}");
    return g;
  }
  std::size_t i = 0;
  for (const auto& v : doc["vertices"]) {
    const auto p = vptr + "/" + std::to_string(i++);
    if (!r.object(v, p, {"name", "x", "y"})) {
      continue;
    }
    std::string name;
    Vec2 pos{std::nan(""), std::nan("")};
    r.text(v, p, "name", name);
    r.number(v, p, "x", pos.x);
    r.number(v, p, "y", pos.y);
    if (name.empty()) {
      r.error(p + "/name", "vertex needs a non-empty name");
    } else if (std::isnan(pos.x) || std::isnan(pos.y)) {
      r.error(p, "vertex needs x and y");
    } else if (g.find(name)) {
      r.error(p + "/name", "duplicate vertex " + name);
    } else {
      g.add_vertex(name, pos);
    }
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    r.error(eptr, "must be an array of {from, to}");
    return g;
  }
  i = 0;
  for (const auto& e : doc["edges"]) {
    const auto p = eptr + "/" + std::to_string(i++);
    if (!r.object(e, p, {"from", "to", "length"})) {
      continue;
    }
    std::string from;
    std::string to;
    double length = 0.0;
    r.text(e, p, "from", from);
    r.text(e, p, "to", to);
    r.number(e, p, "length", length);
    const auto a = g.find(from);
    const auto b = g.find(to);
    if (!a) {
      r.error(p + "/from", "unknown vertex '" + from + "'");
    } else if (!b) {
      r.error(p + "/to", "unknown vertex '" + to + "'");
    } else if (*a == *b) {
      r.error(p, "edge joins a vertex to itself");
    } else if (length < 0.0) {
      r.error(p + "/length", "must not be negative");
    } else {
      g.add_edge(*a, *b, length);
    }
  }
  return g;
}

json parse_json(std::string_view text, std::vector<Diagnostic>& diags, const LineIndex& lines) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::string what = e.what();
    // Drop the library prefix "[json.exception.parse_error.101] ".
    if (auto pos = what.find("] "); pos != std::string::npos) {
      what = what.substr(pos + 2);
    }
    diags.push_back({"", lines.line_at(byte), what});
    return json();
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("error reading " + path.string());
  }
  return ss.str();
}

void finish_map(MapGraph& g) {
  if (g.connected()) {
    g.finalize();
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t ScenarioConfig::buffer_bytes() const {
  return static_cast<std::size_t>(std::llround(buffer_mb * 1024.0 * 1024.0));
}

std::size_t ScenarioConfig::bundle_bytes(const TrafficSpec& spec) const {
  const double bytes =
      sizes_unit == SizeUnit::KB ? spec.bundle_size * 1024.0 : spec.bundle_size * 1000.0 / 8.0;
  return static_cast<std::size_t>(std::llround(bytes));
}

std::size_t ScenarioConfig::node_count() const {
  if (kind == ScenarioKind::Testbed) {
    return testbed.nodes;
  }
  return nodes.travelers + nodes.residents_per_community * std::size(kCommunities);
}

ScenarioConfig ScenarioConfig::riverside_defaults() {
  ScenarioConfig c;
  c.workloads = default_riverside_workloads();
  return c;
}

ScenarioConfig ScenarioConfig::testbed_defaults() {
  ScenarioConfig c;
  c.name = "testbed";
  c.kind = ScenarioKind::Testbed;
  c.duration_s = 3600.0;
  c.ttl_s = 3038.0;
  c.nodes = NodeCounts{0, 0, 0, 0, 0};
  c.map = MapGraph{};
  c.map_source = "none";
  c.link.max_contact_s = 0.0;
  c.workloads = {
      {ContentClass::Text, 100, 10, 0.50, {0, 600}},
      {ContentClass::Audio, 3000, 2, 0.07, {0, 600}},
      {ContentClass::Video, 5000, 2, 0.05, {0, 600}},
  };
  return c;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  auto same_map = [](const MapGraph& x, const MapGraph& y) {
    if (x.vertices().size() != y.vertices().size() || x.edges().size() != y.edges().size()) {
      return false;
    }
    for (std::size_t i = 0; i < x.vertices().size(); ++i) {
      if (x.vertices()[i].name != y.vertices()[i].name ||
          !(x.vertices()[i].pos == y.vertices()[i].pos)) {
        return false;
      }
    }
    for (std::size_t i = 0; i < x.edges().size(); ++i) {
      const auto& e = x.edges()[i];
      const auto& f = y.edges()[i];
      if (e.a != f.a || e.b != f.b || e.length != f.length) {
        return false;
      }
    }
    return true;
  };
  return a.name == b.name && a.kind == b.kind && a.duration_s == b.duration_s &&
         a.seed == b.seed && a.nodes == b.nodes && a.link == b.link && same_map(a.map, b.map) &&
         a.workloads == b.workloads && a.sizes_unit == b.sizes_unit &&
         a.compression == b.compression && a.buffer_mb == b.buffer_mb && a.ttl_s == b.ttl_s &&
         a.tick_s == b.tick_s && a.boarding_s == b.boarding_s &&
         a.people_speed_mps == b.people_speed_mps && a.boat_speed_mps == b.boat_speed_mps &&
         a.boat_capacity == b.boat_capacity && a.day == b.day && a.testbed == b.testbed &&
         a.payload_variants == b.payload_variants && a.deliverable_first == b.deliverable_first &&
         a.immunity == b.immunity;
}

std::vector<Diagnostic> check_scenario(const ScenarioConfig& c) {
  std::vector<Diagnostic> d;
  auto positive = [&](const char* ptr, double v) {
    if (!(v > 0.0)) {
      d.push_back({ptr, 0, "must be positive"});
    }
  };
  if (c.name.empty()) {
    d.push_back({"/name", 0, "must not be empty"});
  }
  if (!(c.duration_s >= 0.0)) {
    d.push_back({"/duration_s", 0, "must not be negative"});
  }
  positive("/ttl_s", c.ttl_s);
  positive("/tick_s", c.tick_s);
  positive("/buffer_mb", c.buffer_mb);
  positive("/link/range_m", c.link.range_m);
  positive("/link/rate_bps", c.link.rate_bps);
  positive("/link/discovery_interval_s", c.link.discovery_interval_s);
  positive("/link/inquiry_latency_s", c.link.inquiry_latency_s);
  if (!(c.link.max_contact_s >= 0.0)) {
    d.push_back({"/link/max_contact_s", 0, "must not be negative"});
  }
  if (c.compression.level < 1 || c.compression.level > 9) {
    d.push_back({"/compression/level", 0, "must be between 1 and 9"});
  }
  if (c.payload_variants == 0) {
    d.push_back({"/payload_variants", 0, "must be at least 1"});
  }
  check_range(d, "/people_speed_mps", c.people_speed_mps, true);
  if (c.workloads.empty()) {
    d.push_back({"/workloads", 0, "at least one workload is required"});
  }
  for (std::size_t i = 0; i < c.workloads.size(); ++i) {
    const auto& w = c.workloads[i];
    const auto p = "/workloads/" + std::to_string(i);
    if (!(w.bundle_size > 0.0) || c.bundle_bytes(w) == 0) {
      d.push_back({p + "/bundle_size", 0, "must be positive"});
    }
    if (!(w.target_ratio >= 0.0 && w.target_ratio < 1.0)) {
      d.push_back({p + "/target_ratio", 0, "must be in [0, 1)"});
    }
    if (!(w.window_s.lo >= 0.0 && w.window_s.lo < w.window_s.hi && w.window_s.hi <= kDay)) {
      d.push_back({p + "/window_s", 0, "must satisfy 0 <= low < high <= 86400"});
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (c.workloads[j].content_class == w.content_class) {
        d.push_back({p + "/class", 0, "duplicate workload class"});
      }
    }
  }

  if (c.kind == ScenarioKind::Testbed) {
    positive("/testbed/side_m", c.testbed.side_m);
    if (c.testbed.nodes < 2) {
      d.push_back({"/testbed/nodes", 0, "needs at least 2 nodes"});
    }
    check_range(d, "/testbed/pause_s", c.testbed.pause_s, false);
    return d;
  }

  const auto& n = c.nodes;
  if (n.min_travelers > n.max_travelers) {
    d.push_back({"/nodes/min_travelers", 0, "exceeds max_travelers"});
  } else if (n.travelers < n.min_travelers || n.travelers > n.max_travelers) {
    d.push_back({"/nodes/travelers", 0,
                 "must be within [" + std::to_string(n.min_travelers) + ", " +
                     std::to_string(n.max_travelers) + "]"});
  }
  if (n.residents_per_community == 0) {
    d.push_back({"/nodes/residents_per_community", 0, "must be at least 1"});
  }
  if (n.boats == 0) {
    d.push_back({"/nodes/boats", 0, "must be at least 1"});
  }
  check_range(d, "/boarding_s", c.boarding_s, false);
  check_range(d, "/boat_speed_mps", c.boat_speed_mps, true);
  check_range(d, "/boat_capacity", c.boat_capacity, true);
  if (c.boat_capacity.lo != std::floor(c.boat_capacity.lo) ||
      c.boat_capacity.hi != std::floor(c.boat_capacity.hi)) {
    d.push_back({"/boat_capacity", 0, "bounds must be whole numbers"});
  }
  const auto& w = c.day;
  check_range(d, "/day/wake_s", w.wake_s, false);
  check_range(d, "/day/gathering_dwell_s", w.gathering_dwell_s, false);
  check_range(d, "/day/pier_dwell_s", w.pier_dwell_s, false);
  check_range(d, "/day/evening_dwell_s", w.evening_dwell_s, false);
  check_range(d, "/day/resident_morning_s", w.resident_morning_s, false);
  check_range(d, "/day/resident_evening_s", w.resident_evening_s, false);
  check_range(d, "/day/resident_dwell_s", w.resident_dwell_s, false);
  check_range(d, "/day/home_radius_m", w.home_radius_m, false);
  for (auto [ptr, r] : {std::pair{"/day/wake_s", w.wake_s},
                        std::pair{"/day/resident_morning_s", w.resident_morning_s},
                        std::pair{"/day/resident_evening_s", w.resident_evening_s}}) {
    if (r.hi >= kDay) {
      d.push_back({ptr, 0, "must fall within a day"});
    }
  }
  positive("/day/wait_limit_s", w.wait_limit_s);
  if (!(w.gathering_offset_m >= 0.0)) {
    d.push_back({"/day/gathering_offset_m", 0, "must not be negative"});
  }
  if (!(w.gathering_radius_m >= 0.0)) {
    d.push_back({"/day/gathering_radius_m", 0, "must not be negative"});
  }
  if (!(w.pier_area_radius_m >= 0.0)) {
    d.push_back({"/day/pier_area_radius_m", 0, "must not be negative"});
  }
  if (!(w.dock_radius_m >= 0.0)) {
    d.push_back({"/day/dock_radius_m", 0, "must not be negative"});
  }

  const auto& m = c.map;
  if (m.vertices().empty()) {
    d.push_back({"/map", 0, "map has no vertices"});
  } else if (!m.connected()) {
    d.push_back({"/map", 0, "map not connected"});
  }
  std::vector<std::string_view> sites{kPierA, kPierB};
  sites.insert(sites.end(), std::begin(kCommunities), std::end(kCommunities));
  for (auto s : sites) {
    if (!m.find(s)) {
      d.push_back({"/map", 0, "map lacks required site " + std::string(s)});
    }
  }
  return d;
}

MapGraph parse_map(std::string_view text) {
  std::vector<Diagnostic> diags;
  const auto lines = index_lines(text);
  const auto doc = parse_json(text, diags, lines);
  if (!diags.empty()) {
    throw ConfigInvalid(std::move(diags));
  }
  Reader r(lines, diags);
  auto g = map_from_json(doc, r, "");
  if (diags.empty() && !g.connected()) {
    diags.push_back({"", lines.line_of(""), "map not connected"});
  }
  if (!diags.empty()) {
    throw ConfigInvalid(std::move(diags));
  }
  g.finalize();
  return g;
}

ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<Diagnostic> diags;
  const auto lines = index_lines(text);
  const auto doc = parse_json(text, diags, lines);
  if (!diags.empty()) {
    throw ConfigInvalid(std::move(diags));
  }
  Reader r(lines, diags);
  if (!r.object(doc, "",
                {"name", "kind", "duration_s", "seed", "nodes", "link", "map", "workloads",
                 "sizes_unit", "compression", "buffer_mb", "ttl_s", "tick_s", "boarding_s",
                 "people_speed_mps", "boat_speed_mps", "boat_capacity", "day", "testbed",
                 "payload_variants", "routing"})) {
    throw ConfigInvalid(std::move(diags));
  }

  ScenarioConfig c = ScenarioConfig::riverside_defaults();
  if (doc.contains("kind")) {
    std::string kind;
    r.text(doc, "", "kind", kind);
    if (kind == "testbed") {
      c = ScenarioConfig::testbed_defaults();
    } else if (kind != "riverside") {
      r.error("/kind", "must be \"riverside\" or \"testbed\"");
    }
  }
  r.text(doc, "", "name", c.name);
  r.number(doc, "", "duration_s", c.duration_s);
  r.count(doc, "", "seed", c.seed);
  r.number(doc, "", "buffer_mb", c.buffer_mb);
  r.number(doc, "", "ttl_s", c.ttl_s);
  r.number(doc, "", "tick_s", c.tick_s);
  r.range(doc, "", "boarding_s", c.boarding_s);
  r.range(doc, "", "people_speed_mps", c.people_speed_mps);
  r.range(doc, "", "boat_speed_mps", c.boat_speed_mps);
  r.range(doc, "", "boat_capacity", c.boat_capacity);
  r.count(doc, "", "payload_variants", c.payload_variants);

  if (doc.contains("sizes_unit")) {
    std::string unit;
    r.text(doc, "", "sizes_unit", unit);
    if (unit == "KB") {
      c.sizes_unit = SizeUnit::KB;
    } else if (unit == "Kb") {
      c.sizes_unit = SizeUnit::Kb;
    } else {
      r.error("/sizes_unit", "must be \"KB\" or \"Kb\"");
    }
  }

  if (doc.contains("nodes") && r.object(doc["nodes"], "/nodes",
                                        {"travelers", "residents_per_community", "boats",
                                         "min_travelers", "max_travelers"})) {
    const auto& n = doc["nodes"];
    r.count(n, "/nodes", "travelers", c.nodes.travelers);
    r.count(n, "/nodes", "residents_per_community", c.nodes.residents_per_community);
    r.count(n, "/nodes", "boats", c.nodes.boats);
    r.count(n, "/nodes", "min_travelers", c.nodes.min_travelers);
    r.count(n, "/nodes", "max_travelers", c.nodes.max_travelers);
  }

  if (doc.contains("link") &&
      r.object(doc["link"], "/link",
               {"range_m", "rate_bps", "discovery_interval_s", "inquiry_latency_s",
                "max_contact_s"})) {
    const auto& l = doc["link"];
    r.number(l, "/link", "range_m", c.link.range_m);
    r.number(l, "/link", "rate_bps", c.link.rate_bps);
    r.number(l, "/link", "discovery_interval_s", c.link.discovery_interval_s);
    r.number(l, "/link", "inquiry_latency_s", c.link.inquiry_latency_s);
    r.number(l, "/link", "max_contact_s", c.link.max_contact_s);
  }

  if (doc.contains("routing") &&
      r.object(doc["routing"], "/routing", {"deliverable_first", "immunity"})) {
    r.flag(doc["routing"], "/routing", "deliverable_first", c.deliverable_first);
    r.flag(doc["routing"], "/routing", "immunity", c.immunity);
  }

  if (doc.contains("compression") &&
      r.object(doc["compression"], "/compression", {"enabled", "level"})) {
    const auto& z = doc["compression"];
    r.flag(z, "/compression", "enabled", c.compression.enabled);
    if (z.contains("level")) {
      std::uint32_t level = 0;
      r.count(z, "/compression", "level", level);
      c.compression.level = static_cast<int>(level);
    }
  }

  if (doc.contains("day")) {
    const auto& dj = doc["day"];
    if (r.object(dj, "/day",
                 {"wake_s", "gathering_dwell_s", "pier_dwell_s", "wait_limit_s",
                  "evening_dwell_s", "resident_morning_s", "resident_evening_s",
                  "resident_dwell_s", "home_radius_m", "gathering_offset_m",
                  "gathering_radius_m", "pier_area_radius_m", "dock_radius_m"})) {
      auto& w = c.day;
      r.range(dj, "/day", "wake_s", w.wake_s);
      r.range(dj, "/day", "gathering_dwell_s", w.gathering_dwell_s);
      r.range(dj, "/day", "pier_dwell_s", w.pier_dwell_s);
      r.number(dj, "/day", "wait_limit_s", w.wait_limit_s);
      r.range(dj, "/day", "evening_dwell_s", w.evening_dwell_s);
      r.range(dj, "/day", "resident_morning_s", w.resident_morning_s);
      r.range(dj, "/day", "resident_evening_s", w.resident_evening_s);
      r.range(dj, "/day", "resident_dwell_s", w.resident_dwell_s);
      r.range(dj, "/day", "home_radius_m", w.home_radius_m);
      r.number(dj, "/day", "gathering_offset_m", w.gathering_offset_m);
      r.number(dj, "/day", "gathering_radius_m", w.gathering_radius_m);
      r.number(dj, "/day", "pier_area_radius_m", w.pier_area_radius_m);
      r.number(dj, "/day", "dock_radius_m", w.dock_radius_m);
    }
  }

  if (doc.contains("testbed") &&
      r.object(doc["testbed"], "/testbed", {"side_m", "nodes", "pause_s"})) {
    const auto& t = doc["testbed"];
    r.number(t, "/testbed", "side_m", c.testbed.side_m);
    r.count(t, "/testbed", "nodes", c.testbed.nodes);
    r.range(t, "/testbed", "pause_s", c.testbed.pause_s);
  }

  if (doc.contains("workloads")) {
    const auto& wl = doc["workloads"];
    if (!wl.is_array()) {
      r.error("/workloads", "must be an array");
    } else {
      c.workloads.clear();
      for (std::size_t i = 0; i < wl.size(); ++i) {
        const auto p = "/workloads/" + std::to_string(i);
        if (!r.object(wl[i], p,
                      {"class", "bundle_size", "per_day", "target_ratio", "window_s"})) {
          continue;
        }
        TrafficSpec t;
        std::string cls;
        r.text(wl[i], p, "class", cls);
        if (auto parsed = parse_content_class(cls)) {
          t.content_class = *parsed;
          t.target_ratio = default_target_ratio(*parsed);
        } else {
          r.error(p + "/class", "must be one of text, audio, video");
        }
        if (!wl[i].contains("bundle_size")) {
          r.error(p, "missing bundle_size");
        }
        r.number(wl[i], p, "bundle_size", t.bundle_size);
        r.count(wl[i], p, "per_day", t.per_day);
        r.number(wl[i], p, "target_ratio", t.target_ratio);
        r.range(wl[i], p, "window_s", t.window_s);
        c.workloads.push_back(t);
      }
    }
  }

  if (doc.contains("map")) {
    const auto& mj = doc["map"];
    if (mj.is_string()) {
      const auto ref = mj.get<std::string>();
      if (ref == "builtin:river") {
        c.map = MapGraph::default_river();
        c.map_source = ref;
      } else {
        const auto path = base_dir / ref;
        const auto map_text = read_file(path);
        try {
          c.map = parse_map(map_text);
          c.map_source = ref;
        } catch (const ConfigInvalid& e) {
          for (const auto& md : e.diagnostics()) {
            diags.push_back({"/map", lines.line_of("/map"),
                             ref + (md.line > 0 ? " line " + std::to_string(md.line) : "") +
                                 ": " + (md.field.empty() ? "" : md.field + ": ") + md.message});
          }
        }
      }
    } else if (mj.is_object()) {
      c.map = map_from_json(mj, r, "/map");
      c.map_source = "inline";
      finish_map(c.map);
    } else {
      r.error("/map", "must be a map file path or an inline {vertices, edges} object");
    }
  }

  for (auto& d : check_scenario(c)) {
    // Prefer the more specific syntax errors already reported for a field.
    const bool seen = std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& x) {
      return x.field == d.field;
    });
    if (!seen) {
      d.line = lines.line_of(d.field);
      diags.push_back(std::move(d));
    }
  }
  if (!diags.empty()) {
    throw ConfigInvalid(std::move(diags));
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  const auto text = read_file(path);
  return parse_scenario(text, path.parent_path());
}

std::string effective_json(const ScenarioConfig& c) {
  auto range = [](const Range& r) { return ojson::array({r.lo, r.hi}); };
  ojson doc;
  doc["name"] = c.name;
  doc["kind"] = kind_name(c.kind);
  doc["duration_s"] = c.duration_s;
  doc["seed"] = c.seed;
  doc["nodes"] = {{"travelers", c.nodes.travelers},
                  {"residents_per_community", c.nodes.residents_per_community},
                  {"boats", c.nodes.boats},
                  {"min_travelers", c.nodes.min_travelers},
                  {"max_travelers", c.nodes.max_travelers}};
  doc["link"] = {{"range_m", c.link.range_m},
                 {"rate_bps", c.link.rate_bps},
                 {"discovery_interval_s", c.link.discovery_interval_s},
                 {"inquiry_latency_s", c.link.inquiry_latency_s},
                 {"max_contact_s", c.link.max_contact_s}};
  ojson vertices = ojson::array();
  for (const auto& v : c.map.vertices()) {
    vertices.push_back({{"name", v.name}, {"x", v.pos.x}, {"y", v.pos.y}});
  }
  ojson edges = ojson::array();
  for (const auto& e : c.map.edges()) {
    edges.push_back({{"from", c.map.vertices()[e.a].name},
                     {"to", c.map.vertices()[e.b].name},
                     {"length", e.length}});
  }
  doc["map"] = {{"vertices", vertices}, {"edges", edges}};
  ojson workloads = ojson::array();
  for (const auto& w : c.workloads) {
    workloads.push_back({{"class", to_string(w.content_class)},
                         {"bundle_size", w.bundle_size},
                         {"per_day", w.per_day},
                         {"target_ratio", w.target_ratio},
                         {"window_s", range(w.window_s)}});
  }
  doc["workloads"] = workloads;
  doc["sizes_unit"] = c.sizes_unit == SizeUnit::KB ? "KB" : "Kb";
  doc["compression"] = {{"enabled", c.compression.enabled}, {"level", c.compression.level}};
  doc["buffer_mb"] = c.buffer_mb;
  doc["ttl_s"] = c.ttl_s;
  doc["tick_s"] = c.tick_s;
  doc["boarding_s"] = range(c.boarding_s);
  doc["people_speed_mps"] = range(c.people_speed_mps);
  doc["boat_speed_mps"] = range(c.boat_speed_mps);
  doc["boat_capacity"] = range(c.boat_capacity);
  const auto& w = c.day;
  doc["day"] = {{"wake_s", range(w.wake_s)},
                {"gathering_dwell_s", range(w.gathering_dwell_s)},
                {"pier_dwell_s", range(w.pier_dwell_s)},
                {"wait_limit_s", w.wait_limit_s},
                {"evening_dwell_s", range(w.evening_dwell_s)},
                {"resident_morning_s", range(w.resident_morning_s)},
                {"resident_evening_s", range(w.resident_evening_s)},
                {"resident_dwell_s", range(w.resident_dwell_s)},
                {"home_radius_m", range(w.home_radius_m)},
                {"gathering_offset_m", w.gathering_offset_m},
                {"gathering_radius_m", w.gathering_radius_m},
                {"pier_area_radius_m", w.pier_area_radius_m},
                {"dock_radius_m", w.dock_radius_m}};
  doc["testbed"] = {{"side_m", c.testbed.side_m},
                    {"nodes", c.testbed.nodes},
                    {"pause_s", range(c.testbed.pause_s)}};
  doc["payload_variants"] = c.payload_variants;
  doc["routing"] = {{"deliverable_first", c.deliverable_first}, {"immunity", c.immunity}};
  return doc.dump(2) + "\n";
}

std::vector<CalibrationCheck> check_calibration(const ScenarioConfig& config) {
  std::vector<CalibrationCheck> out;
  for (const auto& w : config.workloads) {
    CalibrationCheck check{w.content_class, w.target_ratio, 0.0, config.bundle_bytes(w), false, {}};
    try {
      const auto bytes = synthesize_payload(w.target_ratio, check.bytes,
                                            payload_seed(w.content_class, 0),
                                            config.compression.level);
      check.achieved = deflate_ratio(bytes, config.compression.level);
      check.ok = std::abs(check.achieved - w.target_ratio) <= kRatioTolerance;
      if (!check.ok) {
        check.error = "achieved ratio outside tolerance";
      }
    } catch (const Error& e) {
      check.error = e.what();
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace riverdtn::sim
