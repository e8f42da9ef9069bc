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

#ifndef ACCESSQ_QOS_H_
#define ACCESSQ_QOS_H_

#include <cstdint>

// Closed-form QoS arithmetic. Rates are bits/s, sizes bytes, times seconds,
// except the E-model functions which take milliseconds like the model itself.
namespace accessq::qos {

struct CapacityParams {
  double c_l2 = 0.0;  // layer-2 link rate, bits/s
  double h_l2 = 0.0;  // layer-2 header, bytes
  double l_l3 = 0.0;  // IP packet size including its header, bytes
};

// IP-level capacity of a layer-2 link: c_l2 / (1 + h_l2 / l_l3).
double CapacityL3(const CapacityParams& p);

// Time to send one IP packet of l_l3 bytes over the layer-2 link, seconds.
double TransmissionTimeL3(const CapacityParams& p);

struct SizingParams {
  double capacity = 0.0;  // bits/s
  double rtt = 0.0;       // seconds
  std::uint64_t n_flows = 1;
};

// Rule of thumb B = C * RTT, in bytes.
double BdpBufferBytes(const SizingParams& p);
double BdpBufferBits(const SizingParams& p);
// B = C * RTT / sqrt(N), in bytes.
double StanfordBufferBytes(const SizingParams& p);

// Small-buffer regime quoted for core routers, in packets. A range only.
inline constexpr int kTinyBufferMinPackets = 20;
inline constexpr int kTinyBufferMaxPackets = 50;

// r_in - r_out; negative when the queue drains.
double FillRate(double r_in, double r_out);

// IP-level bandwidth of a CBR voice stream.
double VoipBandwidth(double packet_size_bytes, double interval_s);

struct EModelInput {
  double delay_ms = 0.0;  // one-way mouth-to-ear delay
  double loss = 0.0;      // fraction in [0, 1]
};

inline constexpr double kDelayKneeMs = 177.3;

// Simplified E-model: 94.2 - 0.024 d - 0.11 (d - 177.3) H(d - 177.3) - 11
// - 40 ln(1 + 10 e). H(0) = 1.
double RFactor(const EModelInput& input);

// 1 + 0.035 R + 7e-6 R (R - 60)(100 - R), clamped to [1, 4.5].
double MosFromR(double r);

// Router buffer plus de-jitter budget added to every network delay.
inline constexpr double kFixedDelayBudgetMs = 96.0;

double TotalDelayMs(double network_owd_ms);

}  // namespace accessq::qos

#endif  // ACCESSQ_QOS_H_
