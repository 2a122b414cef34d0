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

namespace riverdtn::data {

/// Self-delimiting numeric value: big-endian base-128 groups, high bit set on
/// every byte but the last. Encodings are always minimal.
constexpr std::size_t kMaxSdnvLength = 10;

struct SdnvValue {
  std::uint64_t value = 0;
  std::size_t consumed = 0;
};

/// Number of bytes encode_sdnv(value) produces.
std::size_t sdnv_length(std::uint64_t value) noexcept;

std::vector<std::uint8_t> encode_sdnv(std::uint64_t value);

/// Appends the encoding of value to out.
void append_sdnv(std::vector<std::uint8_t>& out, std::uint64_t value);

/// Decodes one SDNV starting at bytes[cursor]. Throws MalformedSdnv when the
/// input ends mid-value, when no terminator appears within kMaxSdnvLength
/// bytes, or when the value does not fit in 64 bits.
SdnvValue decode_sdnv(std::span<const std::uint8_t> bytes, std::size_t cursor = 0);

}  // namespace riverdtn::data
