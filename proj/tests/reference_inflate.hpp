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

// Small RFC 1951 decoder used as an independent oracle for the zlib-backed
// codec. Slow and strict; throws std::runtime_error on malformed input.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace riverdtn::testing {

class ReferenceInflater {
public:
  explicit ReferenceInflater(std::span<const std::uint8_t> in) : in_(in) {}

  std::vector<std::uint8_t> run() {
    bool last = false;
    while (!last) {
      last = bits(1) == 1;
      switch (bits(2)) {
        case 0: stored(); break;
        case 1: fixed(); break;
        case 2: dynamic(); break;
        default: throw std::runtime_error("reserved block type");
      }
    }
    if (pos_ != in_.size()) {
      throw std::runtime_error("trailing bytes");
    }
    return out_;
  }

private:
  struct Huffman {
    std::array<std::uint16_t, 16> count{};
    std::vector<std::uint16_t> symbol;
  };

  std::uint32_t bits(int need) {
    std::uint32_t v = bitbuf_;
    while (bitcnt_ < need) {
      if (pos_ >= in_.size()) {
        throw std::runtime_error("input exhausted");
      }
      v |= static_cast<std::uint32_t>(in_[pos_++]) << bitcnt_;
      bitcnt_ += 8;
    }
    bitbuf_ = v >> need;
    bitcnt_ -= need;
    return v & ((1u << need) - 1);
  }

  void stored() {
    bitbuf_ = 0;
    bitcnt_ = 0;
    if (pos_ + 4 > in_.size()) {
      throw std::runtime_error("stored header truncated");
    }
    const unsigned len = in_[pos_] | (in_[pos_ + 1] << 8);
    const unsigned nlen = in_[pos_ + 2] | (in_[pos_ + 3] << 8);
    pos_ += 4;
    if (len != (~nlen & 0xFFFFu)) {
      throw std::runtime_error("stored length mismatch");
    }
    if (pos_ + len > in_.size()) {
      throw std::runtime_error("stored block truncated");
    }
    out_.insert(out_.end(), in_.begin() + pos_, in_.begin() + pos_ + len);
    pos_ += len;
  }

  int decode(const Huffman& h) {
    int code = 0;
    int first = 0;
    int index = 0;
    for (int len = 1; len <= 15; ++len) {
      code |= static_cast<int>(bits(1));
      const int count = h.count[len];
      if (code - count < first) {
        return h.symbol[index + (code - first)];
      }
      index += count;
      first += count;
      first <<= 1;
      code <<= 1;
    }
    throw std::runtime_error("bad code");
  }

  static Huffman build(const std::vector<std::uint8_t>& lengths) {
    Huffman h;
    for (auto l : lengths) {
      h.count[l]++;
    }
    h.count[0] = 0;
    std::array<std::uint16_t, 16> offs{};
    for (int len = 1; len < 15; ++len) {
      offs[len + 1] = offs[len] + h.count[len];
    }
    h.symbol.assign(lengths.size(), 0);
    for (std::size_t s = 0; s < lengths.size(); ++s) {
      if (lengths[s] != 0) {
        h.symbol[offs[lengths[s]]++] = static_cast<std::uint16_t>(s);
      }
    }
    return h;
  }

  void codes(const Huffman& lencode, const Huffman& distcode) {
    static constexpr std::uint16_t kLenBase[] = {3,  4,  5,  6,  7,  8,  9,  10,  11,  13,
                                                 15, 17, 19, 23, 27, 31, 35, 43,  51,  59,
                                                 67, 83, 99, 115, 131, 163, 195, 227, 258};
    static constexpr std::uint8_t kLenExtra[] = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2,
                                                 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};
    static constexpr std::uint16_t kDistBase[] = {
        1,   2,   3,   4,   5,   7,    9,    13,   17,   25,   33,   49,   65,    97,    129,
        193, 257, 385, 513, 769, 1025, 1537, 2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577};
    static constexpr std::uint8_t kDistExtra[] = {0, 0, 0, 0, 1, 1, 2,  2,  3,  3,  4,  4,  5,  5,  6,
                                                  6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};
    while (true) {
      int sym = decode(lencode);
      if (sym < 256) {
        out_.push_back(static_cast<std::uint8_t>(sym));
      } else if (sym == 256) {
        return;
      } else {
        sym -= 257;
        if (sym >= 29) {
          throw std::runtime_error("bad length symbol");
        }
        const std::size_t len = kLenBase[sym] + bits(kLenExtra[sym]);
        const int dsym = decode(distcode);
        if (dsym >= 30) {
          throw std::runtime_error("bad distance symbol");
        }
        const std::size_t dist = kDistBase[dsym] + bits(kDistExtra[dsym]);
        if (dist > out_.size()) {
          throw std::runtime_error("distance too far back");
        }
        for (std::size_t i = 0; i < len; ++i) {
          out_.push_back(out_[out_.size() - dist]);
        }
      }
    }
  }

  void fixed() {
    std::vector<std::uint8_t> lengths(288);
    for (int s = 0; s < 144; ++s) lengths[s] = 8;
    for (int s = 144; s < 256; ++s) lengths[s] = 9;
    for (int s = 256; s < 280; ++s) lengths[s] = 7;
    for (int s = 280; s < 288; ++s) lengths[s] = 8;
    const std::vector<std::uint8_t> dist(30, 5);
    codes(build(lengths), build(dist));
  }

  void dynamic() {
    static constexpr std::uint8_t kOrder[19] = {16, 17, 18, 0, 8,  7, 9,  6, 10, 5,
                                                11, 4,  12, 3, 13, 2, 14, 1, 15};
    const int nlen = static_cast<int>(bits(5)) + 257;
    const int ndist = static_cast<int>(bits(5)) + 1;
    const int ncode = static_cast<int>(bits(4)) + 4;
    std::vector<std::uint8_t> cl(19, 0);
    for (int i = 0; i < ncode; ++i) {
      cl[kOrder[i]] = static_cast<std::uint8_t>(bits(3));
    }
    const auto clcode = build(cl);
    std::vector<std::uint8_t> lengths;
    while (static_cast<int>(lengths.size()) < nlen + ndist) {
      const int sym = decode(clcode);
      if (sym < 16) {
        lengths.push_back(static_cast<std::uint8_t>(sym));
        continue;
      }
      std::uint8_t value = 0;
      std::size_t repeat = 0;
      if (sym == 16) {
        if (lengths.empty()) {
          throw std::runtime_error("repeat with no previous length");
        }
        value = lengths.back();
        repeat = 3 + bits(2);
      } else if (sym == 17) {
        repeat = 3 + bits(3);
      } else {
        repeat = 11 + bits(7);
      }
      lengths.insert(lengths.end(), repeat, value);
    }
    if (static_cast<int>(lengths.size()) != nlen + ndist) {
      throw std::runtime_error("too many lengths");
    }
    const std::vector<std::uint8_t> lit(lengths.begin(), lengths.begin() + nlen);
    const std::vector<std::uint8_t> dist(lengths.begin() + nlen, lengths.end());
    codes(build(lit), build(dist));
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t bitbuf_ = 0;
  int bitcnt_ = 0;
  std::vector<std::uint8_t> out_;
};

inline std::vector<std::uint8_t> reference_inflate(std::span<const std::uint8_t> in) {
  return ReferenceInflater(in).run();
}

}  // namespace riverdtn::testing
