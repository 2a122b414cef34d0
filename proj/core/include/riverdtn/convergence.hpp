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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riverdtn/bundle.hpp"

namespace riverdtn::net {

/// Short-range link model: binary disc of radius range_m, fixed bit rate,
/// periodic inquiry, and a one-off setup cost per contact.
struct LinkParams {
  double range_m = 10.0;
  double rate_bps = 256'000.0;
  double discovery_interval_s = 10.0;
  double inquiry_latency_s = 1.0;
  /// Longest connection per encounter; a pair that stays in range after
  /// this long is disconnected until it leaves range. 0 disables the cap.
  double max_contact_s = 600.0;

  /// Throws std::invalid_argument naming the first non-positive field.
  void validate() const;

  bool operator==(const LinkParams&) const = default;
};

/// 48-bit Bluetooth-style device address.
class DeviceAddress {
public:
  static constexpr std::uint64_t kMask = 0xFFFF'FFFF'FFFFULL;

  constexpr DeviceAddress() = default;
  constexpr explicit DeviceAddress(std::uint64_t value) : value_(value & kMask) {}

  constexpr std::uint64_t value() const noexcept { return value_; }
  std::string str() const;  // "aa:bb:cc:dd:ee:ff"

  auto operator<=>(const DeviceAddress&) const = default;

private:
  std::uint64_t value_ = 0;
};

struct PeerRecord {
  DeviceAddress address;
  data::EndpointId eid;
  double last_seen = 0.0;
};

enum class PeerEventKind { Appeared, Refreshed, Disappeared };

struct PeerEvent {
  PeerEventKind kind;
  PeerRecord peer;
  double at = 0.0;
};

constexpr double kOpenEnded = std::numeric_limits<double>::infinity();

struct Contact {
  PeerRecord peer;
  double start = 0.0;
  double end = kOpenEnded;  // set once range is broken
  bool setup_done = false;  // inquiry/paging cost already paid
  double bits_sent = 0.0;   // includes bits of aborted transfers

  bool open() const noexcept { return end == kOpenEnded; }
  double budget_bits_remaining(double now, const LinkParams& link) const;
};

struct TransferJob {
  data::BundleId bundle;
  DeviceAddress destination;
  std::size_t bytes = 0;

  double bits() const noexcept { return static_cast<double>(bytes) * 8.0; }
};

struct TransferResult {
  enum class Kind { Completed, Aborted };
  Kind kind = Kind::Completed;
  double completed_at = 0.0;  // Completed only
  double bits_sent = 0.0;

  bool completed() const noexcept { return kind == Kind::Completed; }
};

/// Neighbor table driven by periodic inquiry rounds. Also provides the
/// EID <-> device address mapping used by bundle adaptation.
class DiscoveryAgent {
public:
  /// in_range need not be sorted. Events come back ordered by address:
  /// Appeared for new addresses, Refreshed for known ones, Disappeared for
  /// addresses seen last round but absent now.
  std::vector<PeerEvent> run_discovery(
      double now, std::span<const std::pair<DeviceAddress, data::EndpointId>> in_range);

  /// Drops a peer whose link broke between rounds. The next round in which
  /// it is in range reports it as Appeared again.
  std::optional<PeerEvent> lost(DeviceAddress address, double now);

  /// Records a single sighting outside a full round (e.g. a scripted
  /// contact). Returns Appeared for a new peer, Refreshed otherwise.
  PeerEvent observe(const PeerRecord& peer);

  /// Bumps last_seen of every known peer; equivalent to a round whose
  /// in-range set is unchanged, without the event list.
  void refresh_all(double now);

  const PeerRecord* find(DeviceAddress address) const;
  std::optional<DeviceAddress> address_of(const data::EndpointId& eid) const;
  const std::vector<PeerRecord>& peers() const noexcept { return peers_; }

private:
  std::vector<PeerRecord> peers_;  // sorted by address
};

/// Contract between the bundle layer and a link technology. The simulated
/// Bluetooth layer below is the only implementation; a socket-backed one can
/// substitute without touching routing.
class ConvergenceLayer {
public:
  virtual ~ConvergenceLayer() = default;

  virtual std::vector<PeerEvent> discover(
      double now, std::span<const std::pair<DeviceAddress, data::EndpointId>> in_range) = 0;

  /// Throws NoRoute for the null destination, UnknownPeer when the peer is
  /// no longer in the neighbor table.
  virtual TransferJob adapt_bundle(const data::Bundle& bundle, const PeerRecord& peer) const = 0;

  virtual TransferResult transmit(const TransferJob& job, Contact& contact,
                                  double started_at) const = 0;
};

class SimulatedBluetoothLayer final : public ConvergenceLayer {
public:
  explicit SimulatedBluetoothLayer(LinkParams params) : params_(params) {}

  std::vector<PeerEvent> discover(
      double now,
      std::span<const std::pair<DeviceAddress, data::EndpointId>> in_range) override {
    return agent_.run_discovery(now, in_range);
  }

  TransferJob adapt_bundle(const data::Bundle& bundle, const PeerRecord& peer) const override;

  /// Job for a bundle whose id and wire size are already known.
  TransferJob make_job(const data::BundleId& id, std::size_t wire_bytes,
                       const PeerRecord& peer) const;

  /// Evaluates a transfer begun at started_at against what is known about the
  /// contact: setup (first job per contact only) plus bits / rate. Completed
  /// when the contact outlasts it, else Aborted with the bits that made it
  /// onto the air. Updates the contact's setup flag and bit counter.
  TransferResult transmit(const TransferJob& job, Contact& contact,
                          double started_at) const override;

  /// Duration transmit() would need on this contact.
  double transfer_duration(const TransferJob& job, const Contact& contact) const;

  DiscoveryAgent& agent() noexcept { return agent_; }
  const DiscoveryAgent& agent() const noexcept { return agent_; }
  const LinkParams& params() const noexcept { return params_; }

private:
  LinkParams params_;
  DiscoveryAgent agent_;
};

}  // namespace riverdtn::net
