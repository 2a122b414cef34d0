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

#include "riverdtn/sdnv.hpp"

#include "riverdtn/error.hpp"

namespace riverdtn::data {

std::size_t sdnv_length(std::uint64_t value) noexcept {
  std::size_t n = 1;
  while (value >>= 7) {
    ++n;
  }
  return n;
}

void append_sdnv(std::vector<std::uint8_t>& out, std::uint64_t value) {
  const std::size_t n = sdnv_length(value);
  for (std::size_t i = n; i-- > 0;) {
    auto group = static_cast<std::uint8_t>((value >> (7 * i)) & 0x7F);
    if (i != 0) {
      group |= 0x80;
    }
    out.push_back(group);
  }
}

std::vector<std::uint8_t> encode_sdnv(std::uint64_t value) {
  std::vector<std::uint8_t> out;
  out.reserve(sdnv_length(value));
  append_sdnv(out, value);
  return out;
}

SdnvValue decode_sdnv(std::span<const std::uint8_t> bytes, std::size_t cursor) {
  if (cursor >= bytes.size()) {
    throw MalformedSdnv(cursor, "input exhausted");
  }
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < kMaxSdnvLength; ++i) {
    const std::size_t pos = cursor + i;
    if (pos >= bytes.size()) {
      throw MalformedSdnv(pos, "input exhausted mid-value");
    }
    const std::uint8_t byte = bytes[pos];
    if (value >> 57) {
      throw MalformedSdnv(cursor, "value exceeds 64 bits");
    }
    value = (value << 7) | (byte & 0x7F);
    if ((byte & 0x80) == 0) {
      return {value, i + 1};
    }
  }
  throw MalformedSdnv(cursor, "no terminator within 10 bytes");
}

}  // namespace riverdtn::data
