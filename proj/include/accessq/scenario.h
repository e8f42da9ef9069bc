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

#ifndef ACCESSQ_SCENARIO_H_
#define ACCESSQ_SCENARIO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "accessq/buffer.h"
#include "accessq/metrics.h"
#include "accessq/simulator.h"
#include "accessq/traffic.h"

namespace accessq {

struct RunSettings {
  SimTime duration = SimTime::FromSeconds(60);  // measurement length after warmup
  SimTime warmup = SimTime::FromSeconds(2);
  std::uint32_t repetitions = 40;
  std::uint64_t seed = 1;
  SimTime start_offset_window = SimTime::FromSeconds(2);
};

enum class SweepParameter { kBufferSize, kROut, kRIn, kUtilization };
std::string_view SweepParameterName(SweepParameter p);
std::optional<SweepParameter> ParseSweepParameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kBufferSize;
  std::vector<double> values;
};

struct ScenarioConfig {
  std::string name;
  LinkConfig link;
  BufferPolicy buffer;
  std::vector<FlowSpec> flows;
  RunSettings run;
  std::optional<SweepSpec> sweep;
};

struct ValidationIssue {
  std::string path;  // e.g. "run.repetitions", "flows[1].packet_size"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  double offered_rate = 0.0;  // bits/s, nominal rates where declared
  double generator_rate = 0.0;  // bits/s, generator means only
  double utilization = 0.0;
  double generator_utilization = 0.0;

  bool ok() const { return errors.empty(); }
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// Checks every invariant and loads trace files into the flow specs. Returns
// the issues instead of throwing; utilization figures are advisory.
ValidationReport Validate(ScenarioConfig& config);

// Validate() that throws ScenarioError when anything is wrong.
ValidationReport ValidateOrThrow(ScenarioConfig& config);

// Offsets, generation and the bottleneck run for one repetition. Flow i's
// start offset is its fixed offset plus U[0, start_offset_window] drawn from
// the (seed, repetition, flow id) stream.
SimResult RunRepetition(const ScenarioConfig& config, std::uint32_t repetition,
                        SimOptions options = {});

struct FlowRepetition {
  std::string subject;  // flow id, "service:<name>" or "all"
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;
  std::optional<double> loss;
  std::optional<double> mean_delay;  // seconds
  std::optional<Jitter> jitter;      // seconds
};

struct RepetitionRecord {
  std::uint32_t index = 0;
  std::vector<FlowRepetition> flows;     // config flow order
  std::vector<FlowRepetition> services;  // sorted by service name
  FlowRepetition combined;
  std::uint64_t event_digest = 0;
};

struct SummaryRow {
  std::string metric;   // loss, mean_delay, max_jitter, smoothed_jitter
  std::string subject;
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> ci95_half_width;
};

struct ExperimentResult {
  std::string scenario_name;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> flow_ids;
  std::vector<std::string> flow_services;
  std::vector<RepetitionRecord> repetitions;  // ordered by index
  std::vector<SummaryRow> summaries;
  std::map<std::string, Histogram> loss_histograms;  // subject -> loss in percent

  // Per-repetition loss of a subject; repetitions without traffic are skipped.
  std::vector<double> LossSeries(std::string_view subject) const;
  std::optional<double> MeanLoss(std::string_view subject) const;
  const SummaryRow* FindSummary(std::string_view metric, std::string_view subject) const;
};

struct ExperimentOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
  double loss_bin_width = kLossHistogramBinWidth;
};

// Runs every repetition (in parallel when jobs > 1) and folds the results in
// repetition order. The config must have passed validation.
ExperimentResult RunExperiment(const ScenarioConfig& config, ExperimentOptions options = {});

// Recomputes summaries and histograms from result.repetitions.
void Aggregate(ExperimentResult& result, double loss_bin_width = kLossHistogramBinWidth);

// Sum of the flows' advisory rates (nominal where declared), bits/s.
double OfferedRate(const ScenarioConfig& config);

// Copy of `config` with one parameter replaced. Utilization targets set r_out
// to OfferedRate / value.
ScenarioConfig ApplySweepValue(const ScenarioConfig& config, SweepParameter parameter,
                               double value);

struct SweepPoint {
  double value = 0.0;
  ScenarioConfig config;
  ExperimentResult result;
};

// One experiment per value, all sharing the base seed.
std::vector<SweepPoint> Sweep(const ScenarioConfig& config, const SweepSpec& sweep,
                              ExperimentOptions options = {});

struct MosAtDelay {
  double network_delay_ms = 0.0;
  double total_delay_ms = 0.0;
  std::vector<double> mos;  // one entry per call (repetition x voip flow)
  Histogram histogram;
  std::optional<double> mean;
};

struct MosReport {
  std::vector<MosAtDelay> delays;
  std::size_t calls = 0;
};

inline constexpr std::string_view kVoipService = "voip";

// MOS of every VoIP call at each network delay, from the call's own loss.
// Throws std::invalid_argument if the result has no voip flow.
MosReport BuildMosReport(const ExperimentResult& result, std::span<const double> network_delays_ms,
                         double bin_width = kMosHistogramBinWidth);

}  // namespace accessq

#endif  // ACCESSQ_SCENARIO_H_
