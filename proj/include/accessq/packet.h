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

#ifndef ACCESSQ_PACKET_H_
#define ACCESSQ_PACKET_H_

#include <cstdint>
#include <optional>

#include "accessq/sim_time.h"

namespace accessq {

// Priority class carried in the ToS byte. Class 0 is served first by fifo_fast.
using TrafficClass = std::uint8_t;
inline constexpr TrafficClass kNumTrafficClasses = 3;
inline constexpr TrafficClass kDefaultTrafficClass = 1;

// A packet as emitted by a traffic source, before it touches the network.
struct GeneratedPacket {
  SimTime created;
  std::uint32_t size = 0;  // IP bytes
  TrafficClass traffic_class = kDefaultTrafficClass;

  friend bool operator==(const GeneratedPacket&, const GeneratedPacket&) = default;
};

struct Packet {
  std::uint64_t id = 0;      // sequence number within the flow
  std::uint32_t flow = 0;    // index into the run's flow table
  std::uint32_t size = 0;
  TrafficClass traffic_class = kDefaultTrafficClass;
  SimTime created;
  std::optional<SimTime> enqueued;  // last bit reached the bottleneck
  std::optional<SimTime> departed;  // last bit left on the access link
};

}  // namespace accessq

#endif  // ACCESSQ_PACKET_H_
