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

#include "accessq/qos.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace accessq::qos {

double CapacityL3(const CapacityParams& p) {
  if (!(p.c_l2 > 0.0) || p.h_l2 < 0.0 || !(p.l_l3 > 0.0)) {
    throw std::invalid_argument("capacity needs c_l2 > 0, h_l2 >= 0, l_l3 > 0");
  }
  return p.c_l2 / (1.0 + p.h_l2 / p.l_l3);
}

double TransmissionTimeL3(const CapacityParams& p) {
  if (!(p.c_l2 > 0.0)) throw std::invalid_argument("c_l2 must be positive");
  return (p.l_l3 + p.h_l2) * 8.0 / p.c_l2;
}

double BdpBufferBits(const SizingParams& p) {
  if (p.capacity < 0.0 || p.rtt < 0.0) throw std::invalid_argument("negative capacity or rtt");
  return p.capacity * p.rtt;
}

double BdpBufferBytes(const SizingParams& p) { return BdpBufferBits(p) / 8.0; }

double StanfordBufferBytes(const SizingParams& p) {
  if (p.n_flows < 1) throw std::invalid_argument("need at least one flow");
  return BdpBufferBytes(p) / std::sqrt(static_cast<double>(p.n_flows));
}

double FillRate(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > 0.0)) throw std::invalid_argument("rates must be positive");
  return r_in - r_out;
}

double VoipBandwidth(double packet_size_bytes, double interval_s) {
  if (!(packet_size_bytes > 0.0) || !(interval_s > 0.0)) {
    throw std::invalid_argument("packet size and interval must be positive");
  }
  return packet_size_bytes * 8.0 / interval_s;
}

double RFactor(const EModelInput& in) {
  if (in.delay_ms < 0.0) throw std::invalid_argument("delay must be nonnegative");
  if (in.loss < 0.0 || in.loss > 1.0) throw std::invalid_argument("loss must be in [0, 1]");
  const double d = in.delay_ms;
  const double step = d >= kDelayKneeMs ? 1.0 : 0.0;
  const double delay_impairment = 0.024 * d + 0.11 * (d - kDelayKneeMs) * step;
  const double loss_impairment = 11.0 + 40.0 * std::log(1.0 + 10.0 * in.loss);
  return 94.2 - delay_impairment - loss_impairment;
}

double MosFromR(double r) {
  if (r <= 0.0) return 1.0;
  if (r >= 100.0) return 4.5;
  // The cubic dips slightly below 1 for R < 6.5.
  return std::max(1.0, 1.0 + 0.035 * r + 7e-6 * r * (r - 60.0) * (100.0 - r));
}

double TotalDelayMs(double network_owd_ms) {
  if (network_owd_ms < 0.0) throw std::invalid_argument("network delay must be nonnegative");
  return network_owd_ms + kFixedDelayBudgetMs;
}

}  // namespace accessq::qos
