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

#ifndef ACCESSQ_TRAFFIC_H_
#define ACCESSQ_TRAFFIC_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "accessq/packet.h"
#include "accessq/rng.h"
#include "accessq/sim_time.h"

namespace accessq {

// Constant bit rate source (VoIP agent).
struct CbrParams {
  std::uint32_t packet_size = 60;
  SimTime interval = SimTime::FromMillis(20);
};

// IP camera model: fixed-size bursts separated by normally distributed gaps.
struct BurstParams {
  std::uint32_t packets_per_burst = 26;
  std::uint32_t packet_size = 1500;
  double inter_burst_mean = 0.278;    // seconds
  double inter_burst_stddev = 0.06;   // seconds
};

// Smallest inter-burst gap the sampler will return.
inline constexpr SimTime kMinInterBurstGap = SimTime::FromMillis(1);

struct TraceRecord {
  double timestamp = 0.0;  // seconds, relative to trace start
  std::uint32_t size = 0;
  std::optional<TrafficClass> traffic_class;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Trace {
  std::vector<TraceRecord> records;

  // Total bytes divided by the loop period.
  double MeanBitrate(double loop_period) const;
  // Last timestamp plus one mean inter-packet gap, so an evenly spaced trace
  // loops without a seam. Zero for traces with fewer than two records.
  double DefaultLoopPeriod() const;
};

struct TraceParams {
  std::string path;
  double time_scale = 1.0;
  std::optional<double> loop_period;  // seconds; defaults to Trace::DefaultLoopPeriod
  // Filled in by LoadTraceInto / scenario validation so repetitions share one parse.
  std::shared_ptr<const Trace> data;
};

// Stand-in for a captured videoconference: one lognormal frame per interval,
// fragmented into max_packet_size packets.
struct SyntheticVideoParams {
  double mean_bitrate = 1.5e6;  // bits/s
  SimTime frame_interval = SimTime::FromNanos(33333333);
  double frame_size_cv = 0.0;
  std::uint32_t max_packet_size = 1500;
};

enum class FlowKind { kCbr, kBurst, kTrace, kSyntheticVideo };

std::string_view FlowKindName(FlowKind kind);
std::optional<FlowKind> ParseFlowKind(std::string_view name);

using FlowParams = std::variant<CbrParams, BurstParams, TraceParams, SyntheticVideoParams>;

struct FlowSpec {
  std::string id;
  FlowParams params;
  SimTime start_offset;  // fixed part; the harness adds a random offset on top
  TrafficClass traffic_class = kDefaultTrafficClass;
  // Service label used to group flows in reports (voip, camera, video, ...).
  std::string service;
  // Flows in the same group draw their packet schedule from one shared stream
  // per repetition, i.e. they replay the same capture with different offsets.
  std::optional<std::string> replay_group;
  // Rate the source is configured for, when it differs from the generator mean.
  std::optional<double> nominal_rate;

  FlowKind kind() const { return static_cast<FlowKind>(params.index()); }
};

// Long-run mean rate implied by the generator parameters, in bits/s.
// Trace flows need their data loaded.
double GeneratorMeanRate(const FlowSpec& flow);

using PacketStream = std::vector<GeneratedPacket>;

// Packets at start_offset + k*interval for every k with k*interval < duration.
PacketStream GenerateCbr(const CbrParams& params, SimTime duration, SimTime start_offset,
                         TrafficClass traffic_class = kDefaultTrafficClass);

// Normal(mean, stddev) truncated below at kMinInterBurstGap by rejection.
SimTime SampleInterBurstGap(const BurstParams& params, Rng& rng);

// Bursts start at start_offset and every sampled gap after that, while the
// burst instant is before start_offset + duration. All packets of a burst
// share the burst instant; the ingress link spaces them out.
PacketStream GenerateBurst(const BurstParams& params, SimTime duration, SimTime start_offset,
                           Rng& rng, TrafficClass traffic_class = kDefaultTrafficClass);

// Replays the trace shifted by start_offset, looping with the trace's loop
// period until start_offset + duration.
PacketStream GenerateTrace(const TraceParams& params, SimTime duration, SimTime start_offset,
                           TrafficClass traffic_class = kDefaultTrafficClass);

PacketStream GenerateSyntheticVideo(const SyntheticVideoParams& params, SimTime duration,
                                    SimTime start_offset, Rng& rng,
                                    TrafficClass traffic_class = kDefaultTrafficClass);

// Dispatches on the flow kind. `rng` is only consumed by stochastic kinds.
PacketStream GenerateFlow(const FlowSpec& flow, SimTime duration, SimTime start_offset, Rng& rng);

// Packets per camera burst observed for a resolution ("704x576") and JPEG
// compression level in kilobytes. Throws std::out_of_range for pairs that
// were not measured.
int BurstSizeForCompression(std::string_view resolution, int compression_kbytes);

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::string source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Format: one packet per line, "<timestamp_s> <size_bytes> [<class 0-2>]".
// Blank lines and '#' comments are ignored.
Trace ParseTrace(std::istream& in, std::string_view source_name = "<stream>");
Trace LoadTrace(const std::string& path);
void LoadTraceInto(TraceParams& params);

// Inverse of ParseTrace for a generated stream: timestamps relative to `origin`.
void WriteTrace(std::ostream& out, std::span<const GeneratedPacket> packets,
                SimTime origin = SimTime::Zero(), bool with_class = false);

}  // namespace accessq

#endif  // ACCESSQ_TRAFFIC_H_
