// Copyright 2026 The accessq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACCESSQ_SIMULATOR_H_
#define ACCESSQ_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "accessq/buffer.h"
#include "accessq/metrics.h"
#include "accessq/packet.h"
#include "accessq/sim_time.h"

namespace accessq {

// Every source reaches the router over its own r_in link; the router sends
// over one r_out access link.
struct LinkConfig {
  double r_in = 100e6;  // bits/s
  double r_out = 5e6;   // bits/s
};

struct FlowStream {
  std::string flow_id;
  std::vector<GeneratedPacket> packets;  // nondecreasing creation times
};

// Packets created in [measure_from, end) are counted; the run stops at `end`.
struct SimWindow {
  SimTime measure_from;
  SimTime end;
};

struct SimOptions {
  bool record_packets = false;
};

// Per-packet trace, only filled with SimOptions::record_packets.
struct PacketRecord {
  std::uint32_t flow = 0;
  std::uint64_t id = 0;
  std::uint32_t size = 0;
  TrafficClass traffic_class = kDefaultTrafficClass;
  bool counted = false;
  SimTime created;
  std::optional<SimTime> enqueued;
  std::optional<SimTime> service_start;
  std::optional<SimTime> departed;
  std::optional<DropReason> drop;
};

struct SimResult {
  std::vector<FlowStats> flows;  // same order as the input streams
  std::uint64_t event_digest = 0;  // FNV-1a over every processed event
  std::uint64_t events_processed = 0;
  std::uint64_t max_occupancy = 0;  // in the buffer's capacity unit
  std::vector<PacketRecord> packets;

  std::uint64_t TotalSent() const;
  std::uint64_t TotalDropped() const;
  std::uint64_t TotalDelivered() const;
  std::optional<double> CombinedLoss() const;
};

class ConservationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Runs the bottleneck model over pre-generated streams. Throws
// ConservationError if any flow's counters fail sent = delivered + dropped +
// in_flight, std::invalid_argument for invalid links or policies.
SimResult Simulate(const LinkConfig& link, const BufferPolicy& buffer,
                   std::span<const FlowStream> flows, SimWindow window, Rng queue_rng,
                   SimOptions options = {});

void CheckLinkConfig(const LinkConfig& link);

}  // namespace accessq

#endif  // ACCESSQ_SIMULATOR_H_
