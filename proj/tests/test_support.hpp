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

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "riverdtn/bundle.hpp"
#include "riverdtn/random.hpp"

namespace riverdtn::testing {

/// Reads whitespace-separated hex byte pairs; '#' starts a comment.
inline std::vector<std::uint8_t> read_hex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::vector<std::uint8_t> out;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      out.push_back(static_cast<std::uint8_t>(std::stoul(w, nullptr, 16)));
    }
  }
  return out;
}

inline std::string golden(const std::string& name) {
  return std::string(RIVERDTN_GOLDEN_DIR) + "/" + name;
}

inline std::string random_ascii(Rng& rng, std::size_t min_len, std::size_t max_len) {
  static constexpr char kAlphabet[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_./:~";
  const auto len = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(max_len)));
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    s += kAlphabet[rng.uniform_int(0, sizeof kAlphabet - 2)];
  }
  return s;
}

/// Endpoint drawn from a small pool of schemes and hosts.
inline data::EndpointId random_eid(Rng& rng) {
  static const char* kSchemes[] = {"dtn", "ipn", "x"};
  if (rng.uniform_int(0, 5) == 0) {
    return data::EndpointId::null();
  }
  const std::string scheme = kSchemes[rng.uniform_int(0, 2)];
  if (rng.uniform_int(0, 2) == 0) {
    return {scheme, "//node-" + std::to_string(rng.uniform_int(0, 3))};
  }
  return {scheme, random_ascii(rng, 1, 40)};
}

inline std::uint64_t random_u64(Rng& rng) {
  // Small values mixed with boundary and full-width ones.
  switch (rng.uniform_int(0, 3)) {
    case 0: return static_cast<std::uint64_t>(rng.uniform_int(0, 200));
    case 1: return static_cast<std::uint64_t>(1) << rng.uniform_int(0, 63);
    case 2: return (static_cast<std::uint64_t>(1) << rng.uniform_int(1, 63)) - 1;
    default: return rng.next();
  }
}

inline std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) {
    b = static_cast<std::uint8_t>(rng.next());
  }
  return out;
}

/// Payload with a random mix of literal noise and repeated runs.
inline std::vector<std::uint8_t> random_payload(Rng& rng, std::size_t max_len) {
  const auto n = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_len)));
  std::vector<std::uint8_t> out;
  out.reserve(n);
  while (out.size() < n) {
    const auto run = static_cast<std::size_t>(rng.uniform_int(1, 64));
    if (rng.uniform_int(0, 1) == 0) {
      const auto b = static_cast<std::uint8_t>(rng.next());
      out.insert(out.end(), run, b);
    } else {
      for (std::size_t i = 0; i < run; ++i) {
        out.push_back(static_cast<std::uint8_t>(rng.next()));
      }
    }
  }
  out.resize(n);
  return out;
}

inline data::Bundle random_bundle(Rng& rng, std::size_t max_payload = 2048) {
  data::Bundle b;
  std::uint64_t lifetime = random_u64(rng);
  if (lifetime == 0) {
    lifetime = 1;
  }
  b.primary = data::PrimaryBlock::make(random_eid(rng), random_eid(rng), random_eid(rng),
                                       random_eid(rng), random_u64(rng), random_u64(rng),
                                       lifetime);
  b.payload.data = SharedBytes(random_payload(rng, max_payload));
  return b;
}

}  // namespace riverdtn::testing
