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
#include <utility>
#include <vector>

#include "riverdtn/bundle.hpp"

namespace riverdtn::compression {

constexpr int kDefaultLevel = 6;

struct CompressionSetting {
  bool enabled = true;
  int level = kDefaultLevel;  // Deflate effort, 1..9

  /// Throws std::invalid_argument when level is outside [1, 9].
  void validate() const;

  bool operator==(const CompressionSetting&) const = default;
};

struct CompressionReport {
  std::size_t original_bytes = 0;
  std::size_t compressed_bytes = 0;
  double ratio = 0.0;  // 1 - compressed/original; 0 for an empty payload

  static CompressionReport of(std::size_t original, std::size_t compressed);
};

/// Raw RFC 1951 stream (no zlib or gzip wrapper).
std::vector<std::uint8_t> deflate_raw(std::span<const std::uint8_t> input, int level);

/// Inverse of deflate_raw. Throws CorruptPayload on an invalid or truncated
/// stream, or on trailing garbage after the final block.
std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> input);

/// Deflates the payload when enabled and the result is strictly smaller;
/// otherwise returns the bundle unchanged. The primary block is never touched.
/// Throws AlreadyCompressed when the payload flag is already set.
std::pair<data::Bundle, CompressionReport> compress_bundle(const data::Bundle& bundle,
                                                           const CompressionSetting& setting);

/// Inflates a compressed payload and clears the flag; identity otherwise.
data::Bundle decompress_bundle(const data::Bundle& bundle);

/// Mean ratio over reports. Throws EmptyInput for an empty list.
double classify_savings(std::span<const CompressionReport> reports);

}  // namespace riverdtn::compression
