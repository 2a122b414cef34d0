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

#include "riverdtn/compression.hpp"

#include <zlib.h>

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "riverdtn/error.hpp"

namespace riverdtn::compression {

namespace {

constexpr int kRawWindowBits = -15;
constexpr int kMemLevel = 8;

}  // namespace

void CompressionSetting::validate() const {
  if (level < 1 || level > 9) {
    throw std::invalid_argument("compression level must be in [1, 9], got " +
                                std::to_string(level));
  }
}

CompressionReport CompressionReport::of(std::size_t original, std::size_t compressed) {
  CompressionReport r{original, compressed, 0.0};
  if (original > 0) {
    r.ratio = 1.0 - static_cast<double>(compressed) / static_cast<double>(original);
  }
  return r;
}

std::vector<std::uint8_t> deflate_raw(std::span<const std::uint8_t> input, int level) {
  if (input.size() > std::numeric_limits<uInt>::max()) {
    throw std::length_error("deflate input larger than 4 GiB");
  }
  z_stream zs{};
  if (deflateInit2(&zs, level, Z_DEFLATED, kRawWindowBits, kMemLevel, Z_DEFAULT_STRATEGY) !=
      Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(input.size())));
  zs.next_in = const_cast<Bytef*>(input.data());
  zs.avail_in = static_cast<uInt>(input.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) {
    throw std::runtime_error("deflate did not finish");
  }
  out.resize(produced);
  return out;
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> input) {
  z_stream zs{};
  if (inflateInit2(&zs, kRawWindowBits) != Z_OK) {
    throw std::runtime_error("inflateInit2 failed");
  }
  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> chunk(64 * 1024);
  zs.next_in = const_cast<Bytef*>(input.data());
  zs.avail_in = static_cast<uInt>(input.size());
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = chunk.data();
    zs.avail_out = static_cast<uInt>(chunk.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      const std::string msg = zs.msg ? zs.msg : "invalid deflate stream";
      inflateEnd(&zs);
      throw CorruptPayload("corrupt deflate payload: " + msg);
    }
    out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - zs.avail_out));
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw CorruptPayload("corrupt deflate payload: truncated stream");
    }
  }
  const bool trailing = zs.avail_in != 0;
  inflateEnd(&zs);
  if (trailing) {
    throw CorruptPayload("corrupt deflate payload: trailing bytes after final block");
  }
  return out;
}

std::pair<data::Bundle, CompressionReport> compress_bundle(const data::Bundle& bundle,
                                                           const CompressionSetting& setting) {
  if (bundle.payload.compressed()) {
    throw AlreadyCompressed();
  }
  setting.validate();
  const std::size_t original = bundle.payload.data.size();
  if (!setting.enabled || original == 0) {
    return {bundle, CompressionReport::of(original, original)};
  }
  auto deflated = deflate_raw(bundle.payload.data.span(), setting.level);
  const auto report = CompressionReport::of(original, deflated.size());
  if (deflated.size() >= original) {
    return {bundle, report};
  }
  data::Bundle out = bundle;
  out.payload.flags |= data::payload_flags::kDeflateCompressed;
  out.payload.data = SharedBytes(std::move(deflated));
  return {std::move(out), report};
}

data::Bundle decompress_bundle(const data::Bundle& bundle) {
  if (!bundle.payload.compressed()) {
    return bundle;
  }
  data::Bundle out = bundle;
  out.payload.data = SharedBytes(inflate_raw(bundle.payload.data.span()));
  out.payload.flags &= ~data::payload_flags::kDeflateCompressed;
  return out;
}

double classify_savings(std::span<const CompressionReport> reports) {
  if (reports.empty()) {
    throw EmptyInput("classify_savings needs at least one report");
  }
  const double sum = std::accumulate(reports.begin(), reports.end(), 0.0,
                                     [](double acc, const auto& r) { return acc + r.ratio; });
  return sum / static_cast<double>(reports.size());
}

}  // namespace riverdtn::compression
