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

#include "riverdtn/bundle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string_view>

#include "riverdtn/error.hpp"
#include "riverdtn/sdnv.hpp"

namespace riverdtn::data {

namespace {

bool valid_component(std::string_view s) noexcept {
  if (s.empty()) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    const auto b = static_cast<unsigned char>(c);
    return b != 0 && b < 0x80;
  });
}

const char* role_name(EidRole role) {
  switch (role) {
    case EidRole::Destination: return "destination";
    case EidRole::Source: return "source";
    case EidRole::ReportTo: return "report-to";
    case EidRole::Custodian: return "custodian";
  }
  return "?";
}

constexpr std::array<EidRole, 4> kRoles = {EidRole::Destination, EidRole::Source,
                                           EidRole::ReportTo, EidRole::Custodian};

std::string_view string_at(const std::vector<std::uint8_t>& dict, std::uint64_t offset) {
  const auto* base = reinterpret_cast<const char*>(dict.data());
  const auto* end = static_cast<const char*>(
      std::char_traits<char>::find(base + offset, dict.size() - offset, '\0'));
  return {base + offset, static_cast<std::size_t>(end - (base + offset))};
}

// Cursor over a byte span that reports failures as MalformedBundle.
class Reader {
public:
  Reader(std::span<const std::uint8_t> bytes, std::size_t cursor) : bytes_(bytes), pos_(cursor) {}

  std::size_t pos() const noexcept { return pos_; }

  std::uint8_t byte(const char* what) {
    if (pos_ >= bytes_.size()) {
      throw MalformedBundle(pos_, std::string("input truncated in ") + what);
    }
    return bytes_[pos_++];
  }

  std::uint64_t sdnv(const char* what) {
    try {
      const auto v = decode_sdnv(bytes_, pos_);
      pos_ += v.consumed;
      return v.value;
    } catch (const MalformedSdnv& e) {
      throw MalformedBundle(e.position(), std::string("bad SDNV in ") + what);
    }
  }

  std::span<const std::uint8_t> take(std::uint64_t n, const char* what) {
    if (n > bytes_.size() - pos_) {
      throw MalformedBundle(bytes_.size(), std::string("input truncated in ") + what);
    }
    auto out = bytes_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return out;
  }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

std::size_t primary_body_length(const PrimaryBlock& p) {
  std::size_t n = offsets_length(p);
  n += sdnv_length(p.creation_time);
  n += sdnv_length(p.creation_seq);
  n += sdnv_length(p.lifetime_s);
  n += sdnv_length(p.dictionary.size());
  n += p.dictionary.size();
  return n;
}

// Validates the dictionary layout; returns the reason for the first problem.
std::optional<std::string> check_dictionary(const std::vector<std::uint8_t>& dict) {
  if (dict.empty()) {
    return "empty dictionary";
  }
  if (dict.back() != 0) {
    return "dictionary entry not NUL-terminated";
  }
  std::set<std::string_view> seen;
  std::size_t start = 0;
  while (start < dict.size()) {
    const auto s = string_at(dict, start);
    if (s.empty()) {
      return "empty dictionary entry at offset " + std::to_string(start);
    }
    if (!seen.insert(s).second) {
      return "duplicate dictionary string at offset " + std::to_string(start);
    }
    start += s.size() + 1;
  }
  return std::nullopt;
}

std::optional<std::string> check_offset(const std::vector<std::uint8_t>& dict,
                                        std::uint64_t offset) {
  if (offset >= dict.size()) {
    return "offset " + std::to_string(offset) + " points past dictionary end";
  }
  if (offset != 0 && dict[offset - 1] != 0) {
    return "offset " + std::to_string(offset) + " is not at a string start";
  }
  if (!valid_component(string_at(dict, offset))) {
    return "offset " + std::to_string(offset) + " names an empty or non-ASCII string";
  }
  return std::nullopt;
}

}  // namespace

EndpointId EndpointId::null() { return {"dtn", "none"}; }

EndpointId EndpointId::parse(std::string_view uri) {
  const auto colon = uri.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidEid("EID '" + std::string(uri) + "' has no ':' separator");
  }
  EndpointId eid{std::string(uri.substr(0, colon)), std::string(uri.substr(colon + 1))};
  if (!eid.valid()) {
    throw InvalidEid("EID '" + std::string(uri) + "' has an empty or non-ASCII component");
  }
  return eid;
}

bool EndpointId::is_null() const { return scheme == "dtn" && ssp == "none"; }

bool EndpointId::valid() const noexcept { return valid_component(scheme) && valid_component(ssp); }

std::string BundleId::str() const {
  return source.str() + "/" + std::to_string(creation_time) + "." + std::to_string(creation_seq);
}

Dictionary build_dictionary(const EndpointId& destination, const EndpointId& source,
                            const EndpointId& report_to, const EndpointId& custodian) {
  const std::array<const EndpointId*, 4> eids = {&destination, &source, &report_to, &custodian};
  for (std::size_t i = 0; i < eids.size(); ++i) {
    if (!eids[i]->valid()) {
      throw InvalidEid(std::string(role_name(kRoles[i])) +
                       " EID has an empty or non-ASCII component");
    }
  }

  Dictionary dict;
  std::vector<std::pair<std::string_view, std::uint64_t>> stored;
  auto intern = [&](const std::string& s) -> std::uint64_t {
    for (const auto& [str, off] : stored) {
      if (str == s) {
        return off;
      }
    }
    const std::uint64_t off = dict.bytes.size();
    dict.bytes.insert(dict.bytes.end(), s.begin(), s.end());
    dict.bytes.push_back(0);
    stored.emplace_back(s, off);
    return off;
  };

  for (std::size_t i = 0; i < eids.size(); ++i) {
    dict.offsets[2 * i] = intern(eids[i]->scheme);
    dict.offsets[2 * i + 1] = intern(eids[i]->ssp);
  }
  return dict;
}

PrimaryBlock PrimaryBlock::make(const EndpointId& destination, const EndpointId& source,
                                const EndpointId& report_to, const EndpointId& custodian,
                                std::uint64_t creation_time, std::uint64_t creation_seq,
                                std::uint64_t lifetime_s) {
  if (lifetime_s == 0) {
    throw std::invalid_argument("bundle lifetime must be positive");
  }
  auto dict = build_dictionary(destination, source, report_to, custodian);
  PrimaryBlock p;
  p.destination = {dict.offsets[0], dict.offsets[1]};
  p.source = {dict.offsets[2], dict.offsets[3]};
  p.report_to = {dict.offsets[4], dict.offsets[5]};
  p.custodian = {dict.offsets[6], dict.offsets[7]};
  p.creation_time = creation_time;
  p.creation_seq = creation_seq;
  p.lifetime_s = lifetime_s;
  p.dictionary = std::move(dict.bytes);
  return p;
}

const EidRef& PrimaryBlock::ref(EidRole role) const {
  switch (role) {
    case EidRole::Destination: return destination;
    case EidRole::Source: return source;
    case EidRole::ReportTo: return report_to;
    case EidRole::Custodian: return custodian;
  }
  return destination;
}

EndpointId PrimaryBlock::eid(EidRole role) const {
  const auto& r = ref(role);
  return {std::string(string_at(dictionary, r.scheme_offset)),
          std::string(string_at(dictionary, r.ssp_offset))};
}

std::optional<std::string> check_primary_block(const PrimaryBlock& block) {
  if (block.version != kBundleVersion) {
    return "unsupported version " + std::to_string(block.version);
  }
  if (block.flags & primary_flags::kIsFragment) {
    return "fragmented bundles are not supported";
  }
  if (block.flags & ~primary_flags::kKnown) {
    return "unknown primary block flags";
  }
  if (block.lifetime_s == 0) {
    return "lifetime must be positive";
  }
  if (auto err = check_dictionary(block.dictionary)) {
    return err;
  }
  for (auto role : kRoles) {
    const auto& r = block.ref(role);
    for (auto off : {r.scheme_offset, r.ssp_offset}) {
      if (auto err = check_offset(block.dictionary, off)) {
        return std::string(role_name(role)) + ": " + *err;
      }
    }
  }
  return std::nullopt;
}

BundleId Bundle::id() const {
  return {primary.eid(EidRole::Source), primary.creation_time, primary.creation_seq};
}

std::size_t offsets_length(const PrimaryBlock& p) noexcept {
  std::size_t n = 0;
  for (const EidRef* r : {&p.destination, &p.source, &p.report_to, &p.custodian}) {
    n += sdnv_length(r->scheme_offset) + sdnv_length(r->ssp_offset);
  }
  return n;
}

std::size_t serialized_size(const Bundle& bundle) {
  const auto body = primary_body_length(bundle.primary);
  const auto payload = bundle.payload.data.size();
  return 1 + sdnv_length(bundle.primary.flags) + sdnv_length(body) + body +
         sdnv_length(bundle.payload.flags) + sdnv_length(payload) + payload;
}

std::vector<std::uint8_t> serialize_bundle(const Bundle& bundle) {
  const auto& p = bundle.primary;
  if (auto err = check_primary_block(p)) {
    throw std::invalid_argument("cannot serialize invalid bundle: " + *err);
  }
  if (bundle.payload.flags & ~payload_flags::kKnown) {
    throw std::invalid_argument("cannot serialize bundle: unknown payload flags");
  }

  std::vector<std::uint8_t> out;
  out.reserve(serialized_size(bundle));
  out.push_back(p.version);
  append_sdnv(out, p.flags);
  append_sdnv(out, primary_body_length(p));
  for (const EidRef* r : {&p.destination, &p.source, &p.report_to, &p.custodian}) {
    append_sdnv(out, r->scheme_offset);
    append_sdnv(out, r->ssp_offset);
  }
  append_sdnv(out, p.creation_time);
  append_sdnv(out, p.creation_seq);
  append_sdnv(out, p.lifetime_s);
  append_sdnv(out, p.dictionary.size());
  out.insert(out.end(), p.dictionary.begin(), p.dictionary.end());

  const auto payload = bundle.payload.data.span();
  append_sdnv(out, bundle.payload.flags);
  append_sdnv(out, payload.size());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Bundle deserialize_bundle(std::span<const std::uint8_t> bytes, std::size_t& cursor) {
  Reader in(bytes, cursor);
  Bundle b;
  auto& p = b.primary;

  const std::size_t version_pos = in.pos();
  p.version = in.byte("version");
  if (p.version != kBundleVersion) {
    throw MalformedBundle(version_pos, "unsupported version " + std::to_string(p.version));
  }

  const std::size_t flags_pos = in.pos();
  p.flags = in.sdnv("primary flags");
  if (p.flags & primary_flags::kIsFragment) {
    throw MalformedBundle(flags_pos, "fragmented bundles are not supported");
  }
  if (p.flags & ~primary_flags::kKnown) {
    throw MalformedBundle(flags_pos, "unknown primary block flags");
  }

  const std::uint64_t block_length = in.sdnv("block length");
  const std::size_t body_start = in.pos();

  std::array<std::size_t, 8> offset_pos{};
  std::array<std::uint64_t, 8> offsets{};
  for (std::size_t i = 0; i < 8; ++i) {
    offset_pos[i] = in.pos();
    offsets[i] = in.sdnv("dictionary offset");
  }
  p.destination = {offsets[0], offsets[1]};
  p.source = {offsets[2], offsets[3]};
  p.report_to = {offsets[4], offsets[5]};
  p.custodian = {offsets[6], offsets[7]};

  p.creation_time = in.sdnv("creation time");
  p.creation_seq = in.sdnv("creation sequence");
  const std::size_t lifetime_pos = in.pos();
  p.lifetime_s = in.sdnv("lifetime");
  if (p.lifetime_s == 0) {
    throw MalformedBundle(lifetime_pos, "lifetime must be positive");
  }

  const std::uint64_t dict_length = in.sdnv("dictionary length");
  const std::size_t dict_pos = in.pos();
  const auto dict = in.take(dict_length, "dictionary");
  p.dictionary.assign(dict.begin(), dict.end());

  if (in.pos() - body_start != block_length) {
    throw MalformedBundle(body_start, "block length " + std::to_string(block_length) +
                                          " disagrees with parsed length " +
                                          std::to_string(in.pos() - body_start));
  }
  if (auto err = check_dictionary(p.dictionary)) {
    throw MalformedBundle(dict_pos, *err);
  }
  for (std::size_t i = 0; i < 8; ++i) {
    if (auto err = check_offset(p.dictionary, offsets[i])) {
      throw MalformedBundle(offset_pos[i], *err);
    }
  }

  const std::size_t pflags_pos = in.pos();
  b.payload.flags = in.sdnv("payload flags");
  if (b.payload.flags & ~payload_flags::kKnown) {
    throw MalformedBundle(pflags_pos, "unknown payload flags");
  }
  const std::uint64_t payload_length = in.sdnv("payload length");
  const auto payload = in.take(payload_length, "payload");
  b.payload.data = SharedBytes(std::vector<std::uint8_t>(payload.begin(), payload.end()));

  cursor = in.pos();
  return b;
}

Bundle deserialize_bundle(std::span<const std::uint8_t> bytes) {
  std::size_t cursor = 0;
  Bundle b = deserialize_bundle(bytes, cursor);
  if (cursor != bytes.size()) {
    throw MalformedBundle(cursor, "trailing bytes after payload");
  }
  return b;
}

}  // namespace riverdtn::data
