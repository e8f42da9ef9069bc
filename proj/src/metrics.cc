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

#include "accessq/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace accessq {

std::optional<double> LossRatio(std::uint64_t dropped, std::uint64_t sent) {
  if (sent == 0) return std::nullopt;
  return static_cast<double>(dropped) / static_cast<double>(sent);
}

std::optional<double> LossRatio(const FlowStats& stats) {
  return LossRatio(stats.dropped, stats.sent);
}

std::optional<Jitter> ComputeJitter(std::span<const double> delays) {
  if (delays.size() < 2) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(delays.begin(), delays.end());
  Jitter j;
  j.max_variation = *hi - *lo;
  for (std::size_t i = 1; i < delays.size(); ++i) {
    const double d = std::abs(delays[i] - delays[i - 1]);
    j.smoothed += (d - j.smoothed) / 16.0;
  }
  return j;
}

double Mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double StudentTQuantile975(std::size_t degrees_of_freedom) {
  if (degrees_of_freedom == 0) throw std::invalid_argument("need at least one degree of freedom");
  boost::math::students_t dist(static_cast<double>(degrees_of_freedom));
  return boost::math::quantile(dist, 0.975);
}

std::optional<RepetitionSummary> Ci95(std::span<const double> samples) {
  if (samples.size() < 2) return std::nullopt;
  RepetitionSummary s;
  s.n = samples.size();
  s.mean = Mean(samples);
  double ss = 0.0;
  for (double x : samples) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
  s.ci95_half_width = StudentTQuantile975(s.n - 1) * s.stddev / std::sqrt(static_cast<double>(s.n));
  return s;
}

double Histogram::FractionAtLeast(double value) const {
  double f = 0.0;
  for (const auto& b : bins) {
    if (b.lo >= value) f += b.fraction;
  }
  return f;
}

Histogram MakeHistogram(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram bin width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  h.total = values.size();
  if (values.empty()) return h;

  // Tolerance keeps values such as 0.3 / 0.1 in the bin they name.
  auto index_of = [bin_width](double v) {
    return static_cast<long long>(std::floor(v / bin_width + 1e-9));
  };
  long long lo = index_of(values[0]);
  long long hi = lo;
  for (double v : values) {
    lo = std::min(lo, index_of(v));
    hi = std::max(hi, index_of(v));
  }
  h.bins.resize(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < h.bins.size(); ++i) {
    h.bins[i].lo = static_cast<double>(lo + static_cast<long long>(i)) * bin_width;
    h.bins[i].hi = h.bins[i].lo + bin_width;
  }
  for (double v : values) ++h.bins[static_cast<std::size_t>(index_of(v) - lo)].count;
  for (auto& b : h.bins) b.fraction = static_cast<double>(b.count) / static_cast<double>(h.total);
  return h;
}

}  // namespace accessq
