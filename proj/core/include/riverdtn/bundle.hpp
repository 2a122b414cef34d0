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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riverdtn/bytes.hpp"

namespace riverdtn::data {

/// DTN endpoint identifier, `scheme:ssp`.
struct EndpointId {
  std::string scheme;
  std::string ssp;

  /// The null endpoint, dtn:none.
  static EndpointId null();

  /// Splits at the first ':'. Throws InvalidEid if either part is empty or
  /// contains non-ASCII or NUL bytes.
  static EndpointId parse(std::string_view uri);

  bool is_null() const;
  bool valid() const noexcept;
  std::string str() const { return scheme + ":" + ssp; }

  auto operator<=>(const EndpointId&) const = default;
};

/// Offsets of an EID's scheme and scheme-specific part inside the dictionary.
struct EidRef {
  std::uint64_t scheme_offset = 0;
  std::uint64_t ssp_offset = 0;

  auto operator<=>(const EidRef&) const = default;
};

enum class EidRole : std::uint8_t { Destination, Source, ReportTo, Custodian };

constexpr std::uint8_t kBundleVersion = 6;

namespace primary_flags {
constexpr std::uint64_t kIsFragment = 0x01;
constexpr std::uint64_t kAdminRecord = 0x02;  // reserved, never set by this library
constexpr std::uint64_t kKnown = kIsFragment | kAdminRecord;
}  // namespace primary_flags

namespace payload_flags {
constexpr std::uint64_t kDeflateCompressed = 0x01;
constexpr std::uint64_t kKnown = kDeflateCompressed;
}  // namespace payload_flags

/// Deduplicated, NUL-terminated EID strings plus the eight offsets that
/// reference them, in (dest, source, report_to, custodian) x (scheme, ssp) order.
struct Dictionary {
  std::vector<std::uint8_t> bytes;
  std::array<std::uint64_t, 8> offsets{};
};

/// Builds the primary-block dictionary. Strings are stored once each, in order
/// of first occurrence. Throws InvalidEid naming the offending role.
Dictionary build_dictionary(const EndpointId& destination, const EndpointId& source,
                            const EndpointId& report_to, const EndpointId& custodian);

struct PrimaryBlock {
  std::uint8_t version = kBundleVersion;
  std::uint64_t flags = 0;
  EidRef destination;
  EidRef source;
  EidRef report_to;
  EidRef custodian;
  std::uint64_t creation_time = 0;
  std::uint64_t creation_seq = 0;
  std::uint64_t lifetime_s = 0;
  std::vector<std::uint8_t> dictionary;

  static PrimaryBlock make(const EndpointId& destination, const EndpointId& source,
                           const EndpointId& report_to, const EndpointId& custodian,
                           std::uint64_t creation_time, std::uint64_t creation_seq,
                           std::uint64_t lifetime_s);

  /// Resolves an EID through the dictionary. Assumes the block is valid.
  EndpointId eid(EidRole role) const;
  const EidRef& ref(EidRole role) const;

  bool operator==(const PrimaryBlock&) const = default;
};

/// Returns the first violated invariant, or nullopt when the block is valid.
std::optional<std::string> check_primary_block(const PrimaryBlock& block);

struct PayloadBlock {
  std::uint64_t flags = 0;
  SharedBytes data;

  bool compressed() const noexcept { return (flags & payload_flags::kDeflateCompressed) != 0; }

  bool operator==(const PayloadBlock&) const = default;
};

/// Identity of a bundle: ordered lexicographically over (source, time, seq).
struct BundleId {
  EndpointId source;
  std::uint64_t creation_time = 0;
  std::uint64_t creation_seq = 0;

  std::string str() const;

  auto operator<=>(const BundleId&) const = default;
};

struct Bundle {
  PrimaryBlock primary;
  PayloadBlock payload;

  BundleId id() const;
  EndpointId destination() const { return primary.eid(EidRole::Destination); }
  /// creation_time + lifetime_s
  std::uint64_t expires_at() const noexcept { return primary.creation_time + primary.lifetime_s; }

  bool operator==(const Bundle&) const = default;
};

/// Exact length serialize_bundle would produce, without materializing bytes.
std::size_t serialized_size(const Bundle& bundle);

/// Bytes occupied by the eight serialized dictionary offsets.
std::size_t offsets_length(const PrimaryBlock& block) noexcept;

/// Wire layout:
///   version (1 byte) | flags | block length | 8 offsets | creation time |
///   creation seq | lifetime | dictionary length | dictionary |
///   payload flags | payload length | payload
/// Every field after the version byte is an SDNV; block length counts the
/// primary-block bytes that follow it.
std::vector<std::uint8_t> serialize_bundle(const Bundle& bundle);

/// Parses exactly one bundle spanning all of bytes. Throws MalformedBundle.
Bundle deserialize_bundle(std::span<const std::uint8_t> bytes);

/// Parses one bundle starting at cursor and advances cursor past it.
Bundle deserialize_bundle(std::span<const std::uint8_t> bytes, std::size_t& cursor);

}  // namespace riverdtn::data
