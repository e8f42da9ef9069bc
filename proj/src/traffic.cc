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

#include "accessq/traffic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace accessq {

namespace {

constexpr std::array<std::string_view, 4> kKindNames = {"cbr", "burst", "trace",
                                                        "synthetic_video"};

void RequirePositive(SimTime t, const char* what) {
  if (t <= SimTime::Zero()) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

std::string_view FlowKindName(FlowKind kind) { return kKindNames[static_cast<int>(kind)]; }

std::optional<FlowKind> ParseFlowKind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<FlowKind>(i);
  }
  return std::nullopt;
}

double Trace::DefaultLoopPeriod() const {
  if (records.size() < 2) return 0.0;
  const double first = records.front().timestamp;
  const double last = records.back().timestamp;
  return last + (last - first) / static_cast<double>(records.size() - 1);
}

double Trace::MeanBitrate(double loop_period) const {
  if (!(loop_period > 0.0)) return 0.0;
  double bytes = 0.0;
  for (const auto& r : records) bytes += r.size;
  return bytes * 8.0 / loop_period;
}

namespace {

double TraceLoopPeriod(const TraceParams& params) {
  if (params.loop_period) return *params.loop_period;
  return params.data ? params.data->DefaultLoopPeriod() : 0.0;
}

}  // namespace

double GeneratorMeanRate(const FlowSpec& flow) {
  struct Visitor {
    double operator()(const CbrParams& p) const {
      return p.packet_size * 8.0 / p.interval.seconds();
    }
    double operator()(const BurstParams& p) const {
      return static_cast<double>(p.packets_per_burst) * p.packet_size * 8.0 / p.inter_burst_mean;
    }
    double operator()(const TraceParams& p) const {
      if (!p.data) throw std::logic_error("trace " + p.path + " not loaded");
      return p.data->MeanBitrate(TraceLoopPeriod(p) * p.time_scale);
    }
    double operator()(const SyntheticVideoParams& p) const { return p.mean_bitrate; }
  };
  return std::visit(Visitor{}, flow.params);
}

PacketStream GenerateCbr(const CbrParams& params, SimTime duration, SimTime start_offset,
                         TrafficClass traffic_class) {
  RequirePositive(duration, "duration");
  RequirePositive(params.interval, "cbr interval");
  if (params.packet_size == 0) throw std::invalid_argument("cbr packet size must be positive");
  PacketStream out;
  const std::int64_t count = (duration.nanos() + params.interval.nanos() - 1) / params.interval.nanos();
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    out.push_back({start_offset + params.interval * k, params.packet_size, traffic_class});
  }
  return out;
}

SimTime SampleInterBurstGap(const BurstParams& params, Rng& rng) {
  if (params.inter_burst_stddev == 0.0) {
    return Max(SimTime::FromSeconds(params.inter_burst_mean), kMinInterBurstGap);
  }
  std::normal_distribution<double> gap(params.inter_burst_mean, params.inter_burst_stddev);
  for (;;) {
    const SimTime t = SimTime::FromSeconds(gap(rng));
    if (t >= kMinInterBurstGap) return t;
  }
}

PacketStream GenerateBurst(const BurstParams& params, SimTime duration, SimTime start_offset,
                           Rng& rng, TrafficClass traffic_class) {
  RequirePositive(duration, "duration");
  if (params.packets_per_burst < 1 || params.packet_size < 1 || !(params.inter_burst_mean > 0.0) ||
      params.inter_burst_stddev < 0.0) {
    throw std::invalid_argument("invalid burst parameters");
  }
  PacketStream out;
  const SimTime end = start_offset + duration;
  for (SimTime t = start_offset; t < end; t += SampleInterBurstGap(params, rng)) {
    for (std::uint32_t i = 0; i < params.packets_per_burst; ++i) {
      out.push_back({t, params.packet_size, traffic_class});
    }
  }
  return out;
}

PacketStream GenerateTrace(const TraceParams& params, SimTime duration, SimTime start_offset,
                           TrafficClass traffic_class) {
  RequirePositive(duration, "duration");
  std::shared_ptr<const Trace> data = params.data;
  if (!data) data = std::make_shared<const Trace>(LoadTrace(params.path));
  PacketStream out;
  if (data->records.empty()) return out;

  const double period = params.loop_period ? *params.loop_period : data->DefaultLoopPeriod();
  const SimTime end = start_offset + duration;
  for (std::int64_t loop = 0;; ++loop) {
    const double base = static_cast<double>(loop) * period * params.time_scale;
    bool emitted = false;
    for (const auto& r : data->records) {
      const SimTime t = start_offset + SimTime::FromSeconds(base + r.timestamp * params.time_scale);
      if (t >= end) break;
      out.push_back({t, r.size, r.traffic_class.value_or(traffic_class)});
      emitted = true;
    }
    if (!emitted || !(period > 0.0)) break;
  }
  return out;
}

PacketStream GenerateSyntheticVideo(const SyntheticVideoParams& params, SimTime duration,
                                    SimTime start_offset, Rng& rng, TrafficClass traffic_class) {
  RequirePositive(duration, "duration");
  RequirePositive(params.frame_interval, "frame interval");
  if (!(params.mean_bitrate > 0.0) || params.frame_size_cv < 0.0 || params.max_packet_size == 0) {
    throw std::invalid_argument("invalid synthetic video parameters");
  }
  const double mean_frame = params.mean_bitrate * params.frame_interval.seconds() / 8.0;
  const double sigma2 = std::log1p(params.frame_size_cv * params.frame_size_cv);
  std::lognormal_distribution<double> frame_size(std::log(mean_frame) - sigma2 / 2.0,
                                                 std::sqrt(sigma2));
  PacketStream out;
  const SimTime end = start_offset + duration;
  for (SimTime t = start_offset; t < end; t += params.frame_interval) {
    const double draw = params.frame_size_cv > 0.0 ? frame_size(rng) : mean_frame;
    const auto bytes = static_cast<std::uint64_t>(std::max(1.0, std::round(draw)));
    for (std::uint64_t full = bytes / params.max_packet_size; full > 0; --full) {
      out.push_back({t, params.max_packet_size, traffic_class});
    }
    if (const auto rest = static_cast<std::uint32_t>(bytes % params.max_packet_size); rest > 0) {
      out.push_back({t, rest, traffic_class});
    }
  }
  return out;
}

PacketStream GenerateFlow(const FlowSpec& flow, SimTime duration, SimTime start_offset, Rng& rng) {
  struct Visitor {
    const FlowSpec& flow;
    SimTime duration;
    SimTime offset;
    Rng& rng;
    PacketStream operator()(const CbrParams& p) const {
      return GenerateCbr(p, duration, offset, flow.traffic_class);
    }
    PacketStream operator()(const BurstParams& p) const {
      return GenerateBurst(p, duration, offset, rng, flow.traffic_class);
    }
    PacketStream operator()(const TraceParams& p) const {
      return GenerateTrace(p, duration, offset, flow.traffic_class);
    }
    PacketStream operator()(const SyntheticVideoParams& p) const {
      return GenerateSyntheticVideo(p, duration, offset, rng, flow.traffic_class);
    }
  };
  return std::visit(Visitor{flow, duration, start_offset, rng}, flow.params);
}

int BurstSizeForCompression(std::string_view resolution, int compression_kbytes) {
  // AXIS 2120, camera bandwidth set to 1 Mbps.
  struct Row {
    std::string_view resolution;
    int kbytes;
    int packets;
  };
  static constexpr std::array<Row, 5> kTable = {{
      {"704x576", 50, 41},
      {"704x576", 32, 26},
      {"704x576", 16, 10},
      {"352x288", 13, 9},
      {"352x288", 4, 3},
  }};
  for (const auto& row : kTable) {
    if (row.resolution == resolution && row.kbytes == compression_kbytes) return row.packets;
  }
  throw std::out_of_range("no burst size measured for " + std::string(resolution) + " at " +
                          std::to_string(compression_kbytes) + " KB");
}

TraceParseError::TraceParseError(std::string source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

Trace ParseTrace(std::istream& in, std::string_view source_name) {
  const std::string source(source_name);
  Trace trace;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string ts_text;
    if (!(fields >> ts_text)) continue;

    TraceRecord rec;
    std::size_t used = 0;
    try {
      rec.timestamp = std::stod(ts_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != ts_text.size() || !std::isfinite(rec.timestamp) || rec.timestamp < 0.0) {
      throw TraceParseError(source, line_no, "bad timestamp '" + ts_text + "'");
    }
    long long size = 0;
    if (!(fields >> size)) throw TraceParseError(source, line_no, "missing or bad packet size");
    if (size < 1 || size > 0xffffffffLL) {
      throw TraceParseError(source, line_no, "packet size must be at least 1 byte");
    }
    rec.size = static_cast<std::uint32_t>(size);
    if (int cls; fields >> cls) {
      if (cls < 0 || cls >= kNumTrafficClasses) {
        throw TraceParseError(source, line_no, "class must be 0, 1 or 2");
      }
      rec.traffic_class = static_cast<TrafficClass>(cls);
    } else if (!fields.eof()) {
      throw TraceParseError(source, line_no, "bad class field");
    }
    if (std::string extra; fields.clear(), fields >> extra) {
      throw TraceParseError(source, line_no, "unexpected field '" + extra + "'");
    }
    if (!trace.records.empty() && rec.timestamp < trace.records.back().timestamp) {
      throw TraceParseError(source, line_no, "timestamps must be nondecreasing");
    }
    trace.records.push_back(rec);
  }
  return trace;
}

Trace LoadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path);
  return ParseTrace(in, path);
}

void LoadTraceInto(TraceParams& params) {
  if (!params.data) params.data = std::make_shared<const Trace>(LoadTrace(params.path));
}

void WriteTrace(std::ostream& out, std::span<const GeneratedPacket> packets, SimTime origin,
                bool with_class) {
  char buf[64];
  for (const auto& p : packets) {
    const SimTime rel = p.created - origin;
    std::snprintf(buf, sizeof(buf), "%lld.%09lld", static_cast<long long>(rel.nanos() / 1000000000),
                  static_cast<long long>(rel.nanos() % 1000000000));
    out << buf << ' ' << p.size;
    if (with_class) out << ' ' << static_cast<int>(p.traffic_class);
    out << '\n';
  }
}

}  // namespace accessq
