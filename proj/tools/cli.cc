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

#include "cli.h"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "accessq/qos.h"
#include "accessq/report.h"
#include "accessq/scenario.h"
#include "accessq/scenario_file.h"
#include "accessq/units.h"

namespace accessq::cli {

namespace {

using units::FormatSig6;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double Require(std::optional<double> v, const std::string& flag, const std::string& text) {
  if (!v) throw UsageError("cannot parse " + flag + " value '" + text + "'");
  return *v;
}

double RateArg(const std::string& flag, const std::string& text) {
  return Require(units::ParseRate(text), flag, text);
}
double BytesArg(const std::string& flag, const std::string& text) {
  return Require(units::ParseBytes(text), flag, text);
}
double SecondsArg(const std::string& flag, const std::string& text) {
  return Require(units::ParseDuration(text), flag, text);
}
double NumberArg(const std::string& flag, const std::string& text) {
  return Require(units::ParseNumber(text), flag, text);
}
// Milliseconds when bare, otherwise any duration suffix.
double MillisArg(const std::string& flag, const std::string& text) {
  if (auto n = units::ParseNumber(text)) return *n;
  return SecondsArg(flag, text) * 1e3;
}
// "0.02" or "2%".
double FractionArg(const std::string& flag, const std::string& text) {
  if (!text.empty() && text.back() == '%') {
    return NumberArg(flag, text.substr(0, text.size() - 1)) / 100.0;
  }
  return NumberArg(flag, text);
}

// One calculator output. Human and JSON output both use the rounded value.
struct Quantity {
  std::string name;
  double value = 0.0;
  std::string unit;
  std::string pretty;
};

void PrintQuantities(const std::vector<Quantity>& qs, bool json, std::ostream& out) {
  if (json) {
    nlohmann::ordered_json j;
    for (const auto& q : qs) {
      j[q.name] = std::stod(FormatSig6(q.value));
      if (!q.unit.empty()) j[q.name + "_unit"] = q.unit;
    }
    out << j.dump() << "\n";
    return;
  }
  for (const auto& q : qs) {
    out << q.name << " = " << FormatSig6(q.value);
    if (!q.unit.empty()) out << " " << q.unit;
    if (!q.pretty.empty()) out << " (" << q.pretty << ")";
    out << "\n";
  }
}

struct CommonRunOptions {
  std::string scenario;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
};

void AddCommon(CLI::App* cmd, CommonRunOptions& o, bool with_output) {
  cmd->add_option("scenario", o.scenario, "Scenario file")->required();
  cmd->add_option("--set", o.overrides, "Override, e.g. buffer.capacity=40 or flows[0].kind=cbr");
  cmd->add_option("--seed", o.seed, "Replace run.seed");
  if (with_output) {
    cmd->add_option("-o,--out", o.out_dir, "Output directory (default results/<name>)");
    cmd->add_option("-j,--jobs", o.jobs, "Parallel repetitions (0: all cores)");
  }
}

ScenarioConfig LoadValidated(const CommonRunOptions& o, ValidationReport* report_out = nullptr) {
  std::vector<std::string> overrides = o.overrides;
  if (o.seed) overrides.push_back("run.seed=" + std::to_string(*o.seed));
  ScenarioConfig config = LoadScenario(o.scenario, overrides);
  ValidationReport report = ValidateOrThrow(config);
  if (report_out) *report_out = report;
  return config;
}

std::filesystem::path OutDir(const CommonRunOptions& o, const ScenarioConfig& config) {
  if (!o.out_dir.empty()) return o.out_dir;
  return std::filesystem::path("results") / report::SafeName(config.name);
}

void PrintLossSummary(const ExperimentResult& result, std::ostream& out) {
  out << "scenario " << result.scenario_name << ", " << result.repetitions.size()
      << " repetitions, seed " << result.seed << ", config " << result.config_hash << "\n";
  for (const auto& s : result.summaries) {
    if (s.metric != "loss") continue;
    out << "  loss " << s.subject << ": mean " << FormatSig6(s.mean * 100.0) << " %";
    if (s.ci95_half_width) out << " +/- " << FormatSig6(*s.ci95_half_width * 100.0);
    out << " (n=" << s.n << ")\n";
  }
}

int CmdValidate(const CommonRunOptions& o, bool json, std::ostream& out) {
  std::vector<std::string> overrides = o.overrides;
  if (o.seed) overrides.push_back("run.seed=" + std::to_string(*o.seed));
  ScenarioConfig config = LoadScenario(o.scenario, overrides);
  const ValidationReport report = Validate(config);
  if (!report.ok()) throw ScenarioError(report.errors);
  std::vector<Quantity> qs = {
      {"offered_rate", report.offered_rate, "bps", units::FormatRate(report.offered_rate)},
      {"utilization", report.utilization, "", ""},
      {"generator_rate", report.generator_rate, "bps", units::FormatRate(report.generator_rate)},
      {"generator_utilization", report.generator_utilization, "", ""}};
  if (!json) {
    out << "scenario " << config.name << " is valid (" << config.flows.size() << " flows, "
        << config.run.repetitions << " repetitions, config " << ConfigHash(config) << ")\n";
    out << "utilization " << std::fixed;
    out.precision(2);
    out << report.utilization << " (advisory)\n";
    out.unsetf(std::ios::floatfield);
    out.precision(6);
  }
  PrintQuantities(qs, json, out);
  return kExitOk;
}

int CmdRun(const CommonRunOptions& o, std::ostream& out) {
  ScenarioConfig config = LoadValidated(o);
  const auto dir = OutDir(o, config);
  ExperimentOptions opts;
  opts.jobs = o.jobs;
  if (config.sweep) {
    const auto points = Sweep(config, *config.sweep, opts);
    report::WriteSweep(dir, points, config.sweep->parameter);
    for (const auto& p : points) {
      out << SweepParameterName(config.sweep->parameter) << " = " << FormatSig6(p.value) << ": ";
      PrintLossSummary(p.result, out);
    }
  } else {
    const ExperimentResult result = RunExperiment(config, opts);
    report::WriteExperiment(dir, result, config);
    PrintLossSummary(result, out);
  }
  out << "results written to " << dir.string() << "\n";
  return kExitOk;
}

int CmdSweep(const CommonRunOptions& o, const std::string& parameter, const std::string& values,
             std::ostream& out) {
  ScenarioConfig config = LoadValidated(o);
  SweepSpec spec;
  if (!parameter.empty() || !values.empty()) {
    if (parameter.empty() || values.empty()) {
      throw UsageError("--param and --values must be given together");
    }
    // Reuse the scenario-file syntax for the value list.
    std::istringstream text("[link]\nr_out=1\n[sweep]\nparameter=" + parameter +
                            "\nvalues=" + values + "\n");
    spec = *ParseScenario(text, "--values").sweep;
  } else if (config.sweep) {
    spec = *config.sweep;
  } else {
    throw UsageError("scenario has no [sweep] section; pass --param and --values");
  }
  config.sweep = spec;
  ValidateOrThrow(config);
  ExperimentOptions opts;
  opts.jobs = o.jobs;
  const auto points = Sweep(config, spec, opts);
  const auto dir = OutDir(o, config);
  report::WriteSweep(dir, points, spec.parameter);
  for (const auto& p : points) {
    out << SweepParameterName(spec.parameter) << " = " << FormatSig6(p.value) << ": ";
    PrintLossSummary(p.result, out);
  }
  out << "results written to " << dir.string() << "\n";
  return kExitOk;
}

int CmdMos(const CommonRunOptions& o, const std::vector<std::string>& delay_text,
           double bin_width, std::ostream& out) {
  std::vector<double> delays;
  for (const auto& d : delay_text) delays.push_back(MillisArg("--delays", d));
  if (delays.empty()) throw UsageError("--delays needs at least one value");
  ScenarioConfig config = LoadValidated(o);
  if (config.sweep) throw UsageError("mos runs a single experiment; remove the [sweep] section");
  ExperimentOptions opts;
  opts.jobs = o.jobs;
  const ExperimentResult result = RunExperiment(config, opts);
  const MosReport mos = BuildMosReport(result, delays, bin_width);
  const auto dir = OutDir(o, config);
  report::WriteExperiment(dir, result, config);
  report::WriteMosReport(dir, mos);
  out << mos.calls << " calls\n";
  for (const auto& d : mos.delays) {
    out << "  network " << FormatSig6(d.network_delay_ms) << " ms, total "
        << FormatSig6(d.total_delay_ms) << " ms: mean MOS "
        << (d.mean ? FormatSig6(*d.mean) : std::string("n/a")) << "\n";
  }
  out << "results written to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Access-link bottleneck simulator and QoS calculators", "accessq"};
  app.set_version_flag("--version", std::string(report::kToolVersion));
  app.require_subcommand(1);

  CommonRunOptions run_opts, sweep_opts, mos_opts, validate_opts;
  auto* run = app.add_subcommand("run", "Run a scenario (and its [sweep], if any)");
  AddCommon(run, run_opts, true);

  std::string sweep_param, sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Run one experiment per parameter value");
  AddCommon(sweep, sweep_opts, true);
  sweep->add_option("--param", sweep_param, "buffer_size, r_out, r_in or utilization");
  sweep->add_option("--values", sweep_values, "Comma list or start:stop:step");

  std::vector<std::string> mos_delays = {"20", "40", "60", "100", "120", "140"};
  double mos_bin = kMosHistogramBinWidth;
  auto* mos = app.add_subcommand("mos", "MOS histograms of the scenario's voip calls");
  AddCommon(mos, mos_opts, true);
  mos->add_option("--delays", mos_delays, "Network one-way delays (ms)")->delimiter(',');
  mos->add_option("--bin-width", mos_bin, "MOS histogram bin width");

  bool validate_json = false;
  auto* validate = app.add_subcommand("validate", "Check a scenario and report utilization");
  AddCommon(validate, validate_opts, false);
  validate->add_flag("--json", validate_json, "Machine-readable output");

  auto* calc = app.add_subcommand("calc", "QoS and buffer-sizing calculators");
  calc->require_subcommand(1);
  bool json = false;
  std::map<std::string, std::string> a;  // raw flag values
  auto flag = [&a](CLI::App* cmd, const std::string& name, const std::string& help,
                   bool required = true) {
    auto* opt = cmd->add_option("--" + name, a[name], help);
    if (required) opt->required();
  };
  std::vector<std::pair<CLI::App*, std::function<std::vector<Quantity>()>>> calcs;

  auto* capacity = calc->add_subcommand("capacity", "Layer-3 capacity of a layer-2 link");
  flag(capacity, "c-l2", "Layer-2 rate, e.g. 10Mbps");
  flag(capacity, "h-l2", "Layer-2 header bytes");
  flag(capacity, "l-l3", "IP packet bytes");
  calcs.emplace_back(capacity, [&] {
    const qos::CapacityParams p{RateArg("--c-l2", a["c-l2"]), BytesArg("--h-l2", a["h-l2"]),
                                BytesArg("--l-l3", a["l-l3"])};
    const double c = qos::CapacityL3(p);
    const double t = qos::TransmissionTimeL3(p);
    return std::vector<Quantity>{{"capacity_l3", c, "bps", units::FormatRate(c)},
                                 {"transmission_time", t, "s", units::FormatDuration(t)}};
  });

  auto* bdp = calc->add_subcommand("bdp", "Bandwidth-delay product buffer");
  flag(bdp, "c", "Link rate");
  flag(bdp, "rtt", "Round-trip time");
  calcs.emplace_back(bdp, [&] {
    const qos::SizingParams p{RateArg("--c", a["c"]), SecondsArg("--rtt", a["rtt"]), 1};
    const double bytes = qos::BdpBufferBytes(p);
    return std::vector<Quantity>{{"buffer", bytes, "B", units::FormatBytes(bytes)},
                                 {"buffer_bits", qos::BdpBufferBits(p), "bit", ""}};
  });

  auto* stanford = calc->add_subcommand("stanford", "BDP divided by sqrt(N) flows");
  flag(stanford, "c", "Link rate");
  flag(stanford, "rtt", "Round-trip time");
  flag(stanford, "n", "Number of long-lived flows");
  calcs.emplace_back(stanford, [&] {
    const double n = NumberArg("--n", a["n"]);
    if (n < 1 || n != std::floor(n)) throw UsageError("--n must be a positive integer");
    const qos::SizingParams p{RateArg("--c", a["c"]), SecondsArg("--rtt", a["rtt"]),
                              static_cast<std::uint64_t>(n)};
    const double bytes = qos::StanfordBufferBytes(p);
    return std::vector<Quantity>{{"buffer", bytes, "B", units::FormatBytes(bytes)}};
  });

  auto* fill = calc->add_subcommand("fill", "Queue fill rate r_in - r_out");
  flag(fill, "r-in", "Input rate");
  flag(fill, "r-out", "Output rate");
  calcs.emplace_back(fill, [&] {
    const double f = qos::FillRate(RateArg("--r-in", a["r-in"]), RateArg("--r-out", a["r-out"]));
    return std::vector<Quantity>{
        {"fill_rate", f, "bps", units::FormatRate(f) + (f > 0 ? ", filling" : ", not filling")}};
  });

  auto* voipbw = calc->add_subcommand("voipbw", "Bandwidth of a constant-rate voice stream");
  flag(voipbw, "size", "Packet size, e.g. 60B");
  flag(voipbw, "interval", "Packet interval, e.g. 20ms");
  calcs.emplace_back(voipbw, [&] {
    const double bw =
        qos::VoipBandwidth(BytesArg("--size", a["size"]), SecondsArg("--interval", a["interval"]));
    return std::vector<Quantity>{{"bandwidth", bw, "bps", units::FormatRate(bw)}};
  });

  auto* emodel = calc->add_subcommand("emodel", "R-factor and MOS for a delay and loss");
  flag(emodel, "delay", "Mouth-to-ear delay (ms unless suffixed)", false);
  flag(emodel, "network-delay", "Network one-way delay; the fixed budget is added", false);
  flag(emodel, "loss", "Loss fraction or percentage");
  calcs.emplace_back(emodel, [&] {
    const bool has_total = !a["delay"].empty();
    const bool has_network = !a["network-delay"].empty();
    if (has_total == has_network) throw UsageError("give exactly one of --delay, --network-delay");
    const double total = has_total ? MillisArg("--delay", a["delay"])
                                   : qos::TotalDelayMs(MillisArg("--network-delay",
                                                                 a["network-delay"]));
    const double r = qos::RFactor({total, FractionArg("--loss", a["loss"])});
    return std::vector<Quantity>{{"total_delay", total, "ms", ""},
                                 {"r_factor", r, "", ""},
                                 {"mos", qos::MosFromR(r), "", ""}};
  });
  for (auto& [cmd, fn] : calcs) cmd->add_flag("--json", json, "Machine-readable output");

  std::vector<const char*> argv = {"accessq"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (run->parsed()) return CmdRun(run_opts, out);
    if (sweep->parsed()) return CmdSweep(sweep_opts, sweep_param, sweep_values, out);
    if (mos->parsed()) return CmdMos(mos_opts, mos_delays, mos_bin, out);
    if (validate->parsed()) return CmdValidate(validate_opts, validate_json, out);
    for (auto& [cmd, fn] : calcs) {
      if (cmd->parsed()) {
        PrintQuantities(fn(), json, out);
        return kExitOk;
      }
    }
  } catch (const ScenarioError& e) {
    err << "error: invalid scenario\n";
    for (const auto& issue : e.issues()) err << "  " << issue.path << ": " << issue.message << "\n";
    return kExitInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace accessq::cli
