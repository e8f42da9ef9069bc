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

#include "accessq/scenario.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "accessq/qos.h"
#include "accessq/scenario_file.h"

namespace accessq {

namespace {

std::string Join(const std::vector<ValidationIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += "; ";
    out += i.path + ": " + i.message;
  }
  return out;
}

std::string FlowPath(std::size_t i, std::string_view field) {
  return "flows[" + std::to_string(i) + "]." + std::string(field);
}

void ValidateFlow(FlowSpec& flow, std::size_t i, std::vector<ValidationIssue>& errors) {
  auto error = [&](std::string_view field, std::string message) {
    errors.push_back({FlowPath(i, field), std::move(message)});
  };
  if (flow.id.empty()) error("id", "flow id must not be empty");
  if (flow.traffic_class >= kNumTrafficClasses) error("class", "class must be 0, 1 or 2");
  if (flow.start_offset < SimTime::Zero()) error("start_offset", "must be nonnegative");
  if (flow.nominal_rate && !(*flow.nominal_rate > 0.0)) error("nominal_rate", "must be positive");

  if (auto* p = std::get_if<CbrParams>(&flow.params)) {
    if (p->packet_size < 1) error("packet_size", "must be at least 1 byte");
    if (p->interval <= SimTime::Zero()) error("interval", "must be positive");
  } else if (auto* p = std::get_if<BurstParams>(&flow.params)) {
    if (p->packets_per_burst < 1) error("packets_per_burst", "must be at least 1");
    if (p->packet_size < 1) error("packet_size", "must be at least 1 byte");
    if (!(p->inter_burst_mean > 0.0)) error("inter_burst_mean", "must be positive");
    if (!(p->inter_burst_stddev >= 0.0)) error("inter_burst_stddev", "must be nonnegative");
  } else if (auto* p = std::get_if<TraceParams>(&flow.params)) {
    if (!(p->time_scale > 0.0)) error("time_scale", "must be positive");
    if (p->loop_period && !(*p->loop_period > 0.0)) error("loop_period", "must be positive");
    try {
      LoadTraceInto(*p);
      if (p->data->records.empty()) error("path", "trace has no packets");
    } catch (const std::exception& e) {
      error("path", e.what());
    }
  } else if (auto* p = std::get_if<SyntheticVideoParams>(&flow.params)) {
    if (!(p->mean_bitrate > 0.0)) error("mean_bitrate", "must be positive");
    if (p->frame_interval <= SimTime::Zero()) error("frame_interval", "must be positive");
    if (!(p->frame_size_cv >= 0.0)) error("frame_size_cv", "must be nonnegative");
    if (p->max_packet_size < 1) error("max_packet_size", "must be at least 1 byte");
  }
}

void ValidateBuffer(const BufferPolicy& b, std::vector<ValidationIssue>& errors) {
  if (b.capacity == 0) errors.push_back({"buffer.capacity", "must be positive"});
  const bool is_red = b.discipline == Discipline::kRed;
  if (is_red && !b.red) errors.push_back({"buffer.red_min_th", "red discipline needs RED parameters"});
  if (!is_red && b.red) {
    errors.push_back({"buffer.discipline", "RED parameters given for a non-red discipline"});
  }
  if (b.red) {
    const auto cap = static_cast<double>(b.capacity);
    if (!(b.red->min_th > 0.0)) errors.push_back({"buffer.red_min_th", "must be positive"});
    if (!(b.red->min_th < b.red->max_th)) {
      errors.push_back({"buffer.red_max_th", "must be greater than red_min_th"});
    }
    if (!(b.red->max_th <= cap)) errors.push_back({"buffer.red_max_th", "must not exceed capacity"});
    if (!(b.red->max_p > 0.0 && b.red->max_p <= 1.0)) {
      errors.push_back({"buffer.red_max_p", "must be in (0, 1]"});
    }
    if (!(b.red->weight > 0.0 && b.red->weight <= 1.0)) {
      errors.push_back({"buffer.red_weight", "must be in (0, 1]"});
    }
  }
}

}  // namespace

std::string_view SweepParameterName(SweepParameter p) {
  switch (p) {
    case SweepParameter::kBufferSize: return "buffer_size";
    case SweepParameter::kROut: return "r_out";
    case SweepParameter::kRIn: return "r_in";
    case SweepParameter::kUtilization: return "utilization";
  }
  return "?";
}

std::optional<SweepParameter> ParseSweepParameter(std::string_view name) {
  for (auto p : {SweepParameter::kBufferSize, SweepParameter::kROut, SweepParameter::kRIn,
                 SweepParameter::kUtilization}) {
    if (SweepParameterName(p) == name) return p;
  }
  return std::nullopt;
}

ScenarioError::ScenarioError(std::vector<ValidationIssue> issues)
    : std::runtime_error(Join(issues)), issues_(std::move(issues)) {}

ValidationReport Validate(ScenarioConfig& config) {
  ValidationReport report;
  auto& errors = report.errors;

  if (!(config.link.r_in > 0.0)) errors.push_back({"link.r_in", "must be positive"});
  if (!(config.link.r_out > 0.0)) errors.push_back({"link.r_out", "must be positive"});
  ValidateBuffer(config.buffer, errors);

  if (config.flows.empty()) errors.push_back({"flows", "at least one flow is required"});
  std::set<std::string> ids;
  for (std::size_t i = 0; i < config.flows.size(); ++i) {
    ValidateFlow(config.flows[i], i, errors);
    if (!config.flows[i].id.empty() && !ids.insert(config.flows[i].id).second) {
      errors.push_back({FlowPath(i, "id"), "duplicate flow id '" + config.flows[i].id + "'"});
    }
  }

  const auto& run = config.run;
  if (run.warmup < SimTime::Zero()) errors.push_back({"run.warmup", "must be nonnegative"});
  if (!(run.duration > run.warmup)) {
    errors.push_back({"run.duration", "must be greater than run.warmup"});
  }
  if (run.repetitions < 1) errors.push_back({"run.repetitions", "must be at least 1"});
  if (run.start_offset_window < SimTime::Zero()) {
    errors.push_back({"run.start_offset_window", "must be nonnegative"});
  }

  if (config.sweep) {
    if (config.sweep->values.empty()) errors.push_back({"sweep.values", "must not be empty"});
    for (double v : config.sweep->values) {
      if (!(v > 0.0)) {
        errors.push_back({"sweep.values", "every value must be positive"});
        break;
      }
      if (config.sweep->parameter == SweepParameter::kBufferSize && v != std::floor(v)) {
        errors.push_back({"sweep.values", "buffer sizes must be integers"});
        break;
      }
    }
  }

  // Advisory figures, only meaningful when every flow checked out.
  if (errors.empty()) {
    for (const auto& flow : config.flows) {
      const double generator = GeneratorMeanRate(flow);
      report.generator_rate += generator;
      report.offered_rate += flow.nominal_rate.value_or(generator);
    }
    report.utilization = report.offered_rate / config.link.r_out;
    report.generator_utilization = report.generator_rate / config.link.r_out;
  }
  return report;
}

ValidationReport ValidateOrThrow(ScenarioConfig& config) {
  ValidationReport report = Validate(config);
  if (!report.ok()) throw ScenarioError(report.errors);
  return report;
}

double OfferedRate(const ScenarioConfig& config) {
  double rate = 0.0;
  for (const auto& flow : config.flows) rate += flow.nominal_rate.value_or(GeneratorMeanRate(flow));
  return rate;
}

SimResult RunRepetition(const ScenarioConfig& config, std::uint32_t repetition, SimOptions options) {
  const auto& run = config.run;
  const SimTime end = run.warmup + run.duration;
  std::vector<FlowStream> streams;
  streams.reserve(config.flows.size());
  for (const auto& flow : config.flows) {
    Rng offset_rng = DeriveStream(run.seed, repetition, "offset/" + flow.id);
    SimTime offset = flow.start_offset;
    if (run.start_offset_window > SimTime::Zero()) {
      std::uniform_real_distribution<double> u(0.0, run.start_offset_window.seconds());
      offset += SimTime::FromSeconds(u(offset_rng));
    }
    FlowStream stream{flow.id, {}};
    if (offset < end) {
      const bool grouped = flow.replay_group.has_value();
      Rng content_rng = DeriveStream(run.seed, repetition,
                                     grouped ? "group/" + *flow.replay_group : "flow/" + flow.id);
      // Grouped flows generate the full-length schedule so every member sees
      // the same packets regardless of its own offset.
      const SimTime horizon = grouped ? end : end - offset;
      stream.packets = GenerateFlow(flow, horizon, SimTime::Zero(), content_rng);
      std::erase_if(stream.packets, [&](GeneratedPacket& p) {
        p.created += offset;
        return p.created >= end;
      });
    }
    streams.push_back(std::move(stream));
  }
  return Simulate(config.link, config.buffer, streams, SimWindow{run.warmup, end},
                  DeriveStream(run.seed, repetition, "queue"), options);
}

namespace {

FlowRepetition Reduce(std::string subject, std::span<const FlowStats* const> stats,
                      bool with_jitter) {
  FlowRepetition r;
  r.subject = std::move(subject);
  double delay_sum = 0.0;
  std::size_t delay_n = 0;
  for (const auto* s : stats) {
    r.sent += s->sent;
    r.delivered += s->delivered;
    r.dropped += s->dropped;
    r.in_flight += s->in_flight;
    for (double d : s->delay_samples) delay_sum += d;
    delay_n += s->delay_samples.size();
  }
  r.loss = LossRatio(r.dropped, r.sent);
  if (delay_n > 0) r.mean_delay = delay_sum / static_cast<double>(delay_n);
  if (with_jitter && stats.size() == 1) r.jitter = ComputeJitter(stats.front()->delay_samples);
  return r;
}

RepetitionRecord MakeRecord(const ScenarioConfig& config, std::uint32_t index, const SimResult& sim) {
  RepetitionRecord rec;
  rec.index = index;
  rec.event_digest = sim.event_digest;
  std::vector<const FlowStats*> all;
  for (const auto& f : sim.flows) {
    const FlowStats* one[] = {&f};
    rec.flows.push_back(Reduce(f.flow_id, one, true));
    all.push_back(&f);
  }
  std::set<std::string> services;
  for (const auto& f : config.flows) services.insert(f.service);
  for (const auto& service : services) {
    std::vector<const FlowStats*> members;
    for (std::size_t i = 0; i < config.flows.size(); ++i) {
      if (config.flows[i].service == service) members.push_back(&sim.flows[i]);
    }
    rec.services.push_back(Reduce("service:" + service, members, false));
  }
  rec.combined = Reduce("all", all, false);
  return rec;
}

void AddSummaries(ExperimentResult& result, const std::string& subject,
                  const std::vector<const FlowRepetition*>& reps, double bin_width) {
  std::vector<double> loss, delay, max_jitter, smoothed;
  for (const auto* r : reps) {
    if (r->loss) loss.push_back(*r->loss);
    if (r->mean_delay) delay.push_back(*r->mean_delay);
    if (r->jitter) {
      max_jitter.push_back(r->jitter->max_variation);
      smoothed.push_back(r->jitter->smoothed);
    }
  }
  auto add = [&](const char* metric, const std::vector<double>& values) {
    if (values.empty()) return;
    SummaryRow row{metric, subject, values.size(), Mean(values), std::nullopt};
    if (auto ci = Ci95(values)) row.ci95_half_width = ci->ci95_half_width;
    result.summaries.push_back(std::move(row));
  };
  add("loss", loss);
  add("mean_delay", delay);
  add("max_jitter", max_jitter);
  add("smoothed_jitter", smoothed);

  std::vector<double> percent;
  percent.reserve(loss.size());
  for (double l : loss) percent.push_back(l * 100.0);
  result.loss_histograms[subject] = MakeHistogram(percent, bin_width);
}

}  // namespace

void Aggregate(ExperimentResult& result, double loss_bin_width) {
  result.summaries.clear();
  result.loss_histograms.clear();
  if (result.repetitions.empty()) return;
  const auto& first = result.repetitions.front();
  for (std::size_t f = 0; f < first.flows.size(); ++f) {
    std::vector<const FlowRepetition*> reps;
    for (const auto& r : result.repetitions) reps.push_back(&r.flows[f]);
    AddSummaries(result, first.flows[f].subject, reps, loss_bin_width);
  }
  for (std::size_t s = 0; s < first.services.size(); ++s) {
    std::vector<const FlowRepetition*> reps;
    for (const auto& r : result.repetitions) reps.push_back(&r.services[s]);
    AddSummaries(result, first.services[s].subject, reps, loss_bin_width);
  }
  std::vector<const FlowRepetition*> reps;
  for (const auto& r : result.repetitions) reps.push_back(&r.combined);
  AddSummaries(result, "all", reps, loss_bin_width);
}

ExperimentResult RunExperiment(const ScenarioConfig& config, ExperimentOptions options) {
  ExperimentResult result;
  result.scenario_name = config.name;
  result.config_hash = ConfigHash(config);
  result.seed = config.run.seed;
  for (const auto& f : config.flows) {
    result.flow_ids.push_back(f.id);
    result.flow_services.push_back(f.service);
  }

  const std::uint32_t n = config.run.repetitions;
  std::vector<std::optional<RepetitionRecord>> records(n);
  std::vector<std::exception_ptr> failures(n);
  unsigned jobs = options.jobs ? options.jobs : std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, n);

  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    for (std::uint32_t i = next++; i < n; i = next++) {
      try {
        records[i] = MakeRecord(config, i, RunRepetition(config, i));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    result.repetitions.push_back(std::move(*records[i]));
  }
  Aggregate(result, options.loss_bin_width);
  return result;
}

namespace {

const FlowRepetition* FindSubject(const RepetitionRecord& rec, std::string_view subject) {
  if (subject == "all") return &rec.combined;
  for (const auto& f : rec.flows) {
    if (f.subject == subject) return &f;
  }
  for (const auto& s : rec.services) {
    if (s.subject == subject) return &s;
  }
  return nullptr;
}

}  // namespace

std::vector<double> ExperimentResult::LossSeries(std::string_view subject) const {
  std::vector<double> out;
  for (const auto& rec : repetitions) {
    if (const auto* r = FindSubject(rec, subject); r && r->loss) out.push_back(*r->loss);
  }
  return out;
}

std::optional<double> ExperimentResult::MeanLoss(std::string_view subject) const {
  const auto series = LossSeries(subject);
  if (series.empty()) return std::nullopt;
  return Mean(series);
}

const SummaryRow* ExperimentResult::FindSummary(std::string_view metric,
                                                std::string_view subject) const {
  for (const auto& row : summaries) {
    if (row.metric == metric && row.subject == subject) return &row;
  }
  return nullptr;
}

ScenarioConfig ApplySweepValue(const ScenarioConfig& config, SweepParameter parameter, double value) {
  ScenarioConfig out = config;
  out.sweep.reset();
  switch (parameter) {
    case SweepParameter::kBufferSize:
      out.buffer.capacity = static_cast<std::uint64_t>(std::llround(value));
      break;
    case SweepParameter::kROut: out.link.r_out = value; break;
    case SweepParameter::kRIn: out.link.r_in = value; break;
    case SweepParameter::kUtilization: out.link.r_out = OfferedRate(config) / value; break;
  }
  return out;
}

std::vector<SweepPoint> Sweep(const ScenarioConfig& config, const SweepSpec& sweep,
                              ExperimentOptions options) {
  if (sweep.values.empty()) throw std::invalid_argument("sweep needs at least one value");
  std::vector<SweepPoint> points;
  for (double value : sweep.values) {
    SweepPoint point{value, ApplySweepValue(config, sweep.parameter, value), {}};
    ValidateOrThrow(point.config);
    point.result = RunExperiment(point.config, options);
    points.push_back(std::move(point));
  }
  return points;
}

MosReport BuildMosReport(const ExperimentResult& result, std::span<const double> network_delays_ms,
                         double bin_width) {
  std::vector<std::size_t> voip;
  for (std::size_t i = 0; i < result.flow_services.size(); ++i) {
    if (result.flow_services[i] == kVoipService) voip.push_back(i);
  }
  if (voip.empty()) throw std::invalid_argument("experiment has no voip flow");

  std::vector<double> call_loss;
  for (const auto& rec : result.repetitions) {
    for (std::size_t i : voip) {
      if (rec.flows[i].loss) call_loss.push_back(*rec.flows[i].loss);
    }
  }
  MosReport report;
  report.calls = call_loss.size();
  for (double d : network_delays_ms) {
    MosAtDelay at;
    at.network_delay_ms = d;
    at.total_delay_ms = qos::TotalDelayMs(d);
    for (double loss : call_loss) {
      at.mos.push_back(qos::MosFromR(qos::RFactor({at.total_delay_ms, loss})));
    }
    at.histogram = MakeHistogram(at.mos, bin_width);
    if (!at.mos.empty()) at.mean = Mean(at.mos);
    report.delays.push_back(std::move(at));
  }
  return report;
}

}  // namespace accessq
