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
#include <span>
#include <vector>

#include "riverdtn/compression.hpp"
#include "riverdtn/content.hpp"
#include "riverdtn/random.hpp"

namespace riverdtn::sim {

/// Synthetic payloads interleave fixed-size segments of seeded random bytes
/// (incompressible) with segments of a phrase stream (highly compressible).
/// The share of random segments is tuned per target ratio by bisection.
constexpr std::size_t kPayloadSegment = 64;

/// Accepted distance between a synthesized payload's Deflate savings and
/// its target.
constexpr double kRatioTolerance = 0.03;

/// Seed of the variant-th synthetic payload of a class. Fixed across runs.
constexpr std::uint64_t payload_seed(ContentClass cls, std::size_t variant) noexcept {
  return mix_seed(0x7061796C6F6164ULL + index_of(cls), variant);
}

/// Builds size bytes with the given share of random segments. Deterministic
/// in (size, random_fraction, seed).
std::vector<std::uint8_t> mix_payload(std::size_t size, double random_fraction,
                                      std::uint64_t seed);

/// Deflate savings of bytes at level; 0 for empty input.
double deflate_ratio(std::span<const std::uint8_t> bytes, int level);

/// Random-segment share whose payloads deflate to target_ratio. Results are
/// memoized per (target, size bucket, level). Throws CalibrationFailed when
/// the target lies outside what the construction can reach.
double calibrate_random_fraction(double target_ratio, std::size_t size,
                                 int level = compression::kDefaultLevel);

/// Payload of size bytes whose Deflate ratio sits within a few hundredths of
/// target_ratio. Throws std::invalid_argument for size 0.
std::vector<std::uint8_t> synthesize_payload(double target_ratio, std::size_t size,
                                             std::uint64_t seed,
                                             int level = compression::kDefaultLevel);

inline std::vector<std::uint8_t> synthesize_payload(ContentClass cls, std::size_t size,
                                                    std::uint64_t seed) {
  return synthesize_payload(default_target_ratio(cls), size, seed);
}

}  // namespace riverdtn::sim
