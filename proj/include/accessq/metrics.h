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

#ifndef ACCESSQ_METRICS_H_
#define ACCESSQ_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace accessq {

struct FlowStats {
  std::string flow_id;
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t dropped_full = 0;
  std::uint64_t dropped_early = 0;  // RED probabilistic drops
  std::uint64_t in_flight = 0;      // neither delivered nor dropped at the end
  std::uint64_t sent_bytes = 0;
  std::vector<double> delay_samples;  // one-way delay of delivered packets, seconds

  bool Conserves() const { return sent == delivered + dropped + in_flight; }
};

// dropped / sent; absent when nothing was sent.
std::optional<double> LossRatio(const FlowStats& stats);
std::optional<double> LossRatio(std::uint64_t dropped, std::uint64_t sent);

struct Jitter {
  double max_variation = 0.0;  // max(delay) - min(delay)
  double smoothed = 0.0;       // RFC 3550 running estimate, gain 1/16
};

// Absent for fewer than two samples.
std::optional<Jitter> ComputeJitter(std::span<const double> delays);

struct RepetitionSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;            // n-1 denominator
  double ci95_half_width = 0.0;   // t(0.975, n-1) * stddev / sqrt(n)
};

// Student-t 95% interval for the mean. Absent for n < 2.
std::optional<RepetitionSummary> Ci95(std::span<const double> samples);

double StudentTQuantile975(std::size_t degrees_of_freedom);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double fraction = 0.0;
};

struct Histogram {
  double bin_width = 0.0;
  std::size_t total = 0;
  std::vector<HistogramBin> bins;  // contiguous, lowest first

  double FractionAtLeast(double value) const;
};

inline constexpr double kLossHistogramBinWidth = 0.5;   // percentage points
inline constexpr double kMosHistogramBinWidth = 0.25;

// Bins [k*w, (k+1)*w) spanning the occupied range, empty bins included.
// Throws std::invalid_argument for bin_width <= 0.
Histogram MakeHistogram(std::span<const double> values, double bin_width);

double Mean(std::span<const double> values);

}  // namespace accessq

#endif  // ACCESSQ_METRICS_H_
