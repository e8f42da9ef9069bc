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

#include "accessq/scenario_file.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "accessq/rng.h"
#include "accessq/units.h"

namespace accessq {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;  // 0 for values that came from an override
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;

  void Set(std::string key, std::string value, int line_no) {
    for (auto& e : entries) {
      if (e.key == key) {
        e.value = std::move(value);
        e.line = line_no;
        return;
      }
    }
    entries.push_back({std::move(key), std::move(value), line_no});
  }
};

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct RawScenario {
  std::vector<Entry> top;  // keys before the first section
  std::vector<Section> sections;
};

const std::vector<std::string_view> kSections = {"link", "buffer", "flow", "run", "sweep"};

RawScenario Tokenize(std::istream& in, std::string_view source,
                     std::vector<ValidationIssue>& errors) {
  RawScenario raw;
  std::string line;
  int line_no = 0;
  Section* current = nullptr;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    const std::string text = Trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (text.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (text.front() == '[') {
      if (text.back() != ']') {
        errors.push_back({where, "unterminated section header"});
        current = nullptr;
        continue;
      }
      const std::string name = Trim(std::string_view(text).substr(1, text.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end()) {
        errors.push_back({where, "unknown section [" + name + "]"});
        current = nullptr;
        continue;
      }
      if (name != "flow") {
        for (const auto& s : raw.sections) {
          if (s.name == name) errors.push_back({where, "section [" + name + "] repeated"});
        }
      }
      raw.sections.push_back({name, line_no, {}});
      current = &raw.sections.back();
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      errors.push_back({where, "expected key = value"});
      continue;
    }
    std::string key = Trim(std::string_view(text).substr(0, eq));
    std::string value = Trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) {
      errors.push_back({where, "missing key"});
      continue;
    }
    if (current) {
      current->Set(std::move(key), std::move(value), line_no);
    } else {
      raw.top.push_back({std::move(key), std::move(value), line_no});
    }
  }
  return raw;
}

Section* FindSection(RawScenario& raw, std::string_view name) {
  for (auto& s : raw.sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void ApplyOverride(RawScenario& raw, const std::string& text, std::vector<ValidationIssue>& errors) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    errors.push_back({"override '" + text + "'", "expected key=value"});
    return;
  }
  const std::string lhs = Trim(std::string_view(text).substr(0, eq));
  const std::string value = Trim(std::string_view(text).substr(eq + 1));
  if (lhs == "name") {
    raw.top.push_back({"name", value, 0});
    return;
  }
  const auto dot = lhs.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == lhs.size()) {
    errors.push_back({"override '" + text + "'", "expected section.key=value or flows[i].key=value"});
    return;
  }
  const std::string target = lhs.substr(0, dot);
  const std::string key = lhs.substr(dot + 1);

  if (target.rfind("flows[", 0) == 0 && target.back() == ']') {
    const std::string index_text = target.substr(6, target.size() - 7);
    std::size_t index = 0;
    const auto [ptr, ec] =
        std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (ec != std::errc() || ptr != index_text.data() + index_text.size()) {
      errors.push_back({"override '" + text + "'", "bad flow index"});
      return;
    }
    std::size_t seen = 0;
    for (auto& s : raw.sections) {
      if (s.name != "flow") continue;
      if (seen++ == index) {
        s.Set(key, value, 0);
        return;
      }
    }
    errors.push_back({"override '" + text + "'", "no flow with index " + index_text});
    return;
  }
  if (target == "flow" ||
      std::find(kSections.begin(), kSections.end(), target) == kSections.end()) {
    errors.push_back({"override '" + text + "'", "unknown section '" + target + "'"});
    return;
  }
  Section* section = FindSection(raw, target);
  if (!section) {
    raw.sections.push_back({target, 0, {}});
    section = &raw.sections.back();
  }
  section->Set(key, value, 0);
}

// Typed access to one section with error collection.
class Reader {
 public:
  Reader(const Section& section, std::string path, std::string_view source,
         std::vector<ValidationIssue>& errors)
      : section_(section), path_(std::move(path)), source_(source), errors_(errors) {}

  const Entry* Find(std::string_view key) {
    used_.emplace_back(key);
    for (const auto& e : section_.entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }

  void Error(const Entry& e, const std::string& message) {
    std::string where = path_ + "." + e.key;
    if (e.line > 0) where += " (" + std::string(source_) + ":" + std::to_string(e.line) + ")";
    errors_.push_back({where, message});
  }

  void Missing(std::string_view key) {
    errors_.push_back({path_ + "." + std::string(key), "required key is missing"});
  }

  template <typename T, typename Parse>
  void Get(std::string_view key, T& out, Parse parse, const char* what) {
    const Entry* e = Find(key);
    if (!e) return;
    if (auto v = parse(e->value)) {
      out = *v;
    } else {
      Error(*e, "'" + e->value + "' is not a valid " + what);
    }
  }

  void Rate(std::string_view key, double& out) { Get(key, out, units::ParseRate, "rate"); }
  void Number(std::string_view key, double& out) { Get(key, out, units::ParseNumber, "number"); }
  void Duration(std::string_view key, SimTime& out) {
    Get(key, out,
        [](std::string_view s) -> std::optional<SimTime> {
          auto v = units::ParseDuration(s);
          if (!v || std::abs(*v) > 9e9) return std::nullopt;
          return SimTime::FromSeconds(*v);
        },
        "duration");
  }
  void Seconds(std::string_view key, double& out) {
    Get(key, out, units::ParseDuration, "duration");
  }
  template <typename Int>
  void Integer(std::string_view key, Int& out, bool bytes = false) {
    Get(key, out,
        [bytes](std::string_view s) -> std::optional<Int> {
          auto v = bytes ? units::ParseBytes(s) : units::ParseNumber(s);
          if (!v || *v != std::floor(*v) || *v < 0 ||
              *v > static_cast<double>(std::numeric_limits<Int>::max())) {
            return std::nullopt;
          }
          return static_cast<Int>(*v);
        },
        bytes ? "byte count" : "nonnegative integer");
  }
  void Text(std::string_view key, std::string& out) {
    if (const Entry* e = Find(key)) out = e->value;
  }

  void RejectUnknown() {
    for (const auto& e : section_.entries) {
      if (std::find(used_.begin(), used_.end(), e.key) == used_.end()) Error(e, "unknown key");
    }
  }

 private:
  const Section& section_;
  std::string path_;
  std::string_view source_;
  std::vector<ValidationIssue>& errors_;
  std::vector<std::string> used_;
};

std::optional<std::uint64_t> ParseSeed(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> ParseFraction(std::string_view s) {
  if (!s.empty() && s.back() == '%') {
    auto v = units::ParseNumber(s.substr(0, s.size() - 1));
    if (v) return *v / 100.0;
    return std::nullopt;
  }
  return units::ParseNumber(s);
}

// "30,35,40" or the inclusive range "30:65:5".
std::optional<std::vector<double>> ParseValues(std::string_view text, SweepParameter parameter) {
  auto one = [parameter](std::string_view s) -> std::optional<double> {
    switch (parameter) {
      case SweepParameter::kROut:
      case SweepParameter::kRIn: return units::ParseRate(s);
      case SweepParameter::kUtilization: return ParseFraction(s);
      case SweepParameter::kBufferSize: return units::ParseNumber(s);
    }
    return std::nullopt;
  };
  std::vector<double> values;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string> parts;
    std::stringstream ss{std::string(text)};
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(Trim(part));
    if (parts.size() != 3) return std::nullopt;
    const auto lo = one(parts[0]);
    const auto hi = one(parts[1]);
    const auto step = one(parts[2]);
    if (!lo || !hi || !step || !(*step > 0) || *hi < *lo) return std::nullopt;
    const auto n = static_cast<long long>(std::floor((*hi - *lo) / *step + 1e-9));
    if (n > 100000) return std::nullopt;
    for (long long i = 0; i <= n; ++i) values.push_back(*lo + static_cast<double>(i) * *step);
    return values;
  }
  std::stringstream ss{std::string(text)};
  for (std::string part; std::getline(ss, part, ',');) {
    const auto v = one(Trim(part));
    if (!v) return std::nullopt;
    values.push_back(*v);
  }
  if (values.empty()) return std::nullopt;
  return values;
}

FlowSpec ReadFlow(Reader& r, std::size_t index, const std::filesystem::path& base_dir,
                  std::vector<ValidationIssue>& errors) {
  FlowSpec flow;
  r.Text("id", flow.id);
  if (flow.id.empty()) r.Missing("id");

  FlowKind kind = FlowKind::kCbr;
  if (const Entry* e = r.Find("kind")) {
    if (auto k = ParseFlowKind(e->value)) {
      kind = *k;
    } else {
      r.Error(*e, "unknown kind '" + e->value + "' (cbr, burst, trace, synthetic_video)");
    }
  } else {
    r.Missing("kind");
  }

  r.Integer("class", flow.traffic_class);
  r.Text("service", flow.service);
  if (flow.service.empty()) flow.service = std::string(FlowKindName(kind));
  r.Duration("start_offset", flow.start_offset);
  if (const Entry* e = r.Find("replay_group")) flow.replay_group = e->value;
  if (r.Find("nominal_rate")) {
    double rate = 0.0;
    r.Rate("nominal_rate", rate);
    flow.nominal_rate = rate;
  }

  switch (kind) {
    case FlowKind::kCbr: {
      CbrParams p;
      r.Integer("packet_size", p.packet_size, true);
      r.Duration("interval", p.interval);
      flow.params = p;
      break;
    }
    case FlowKind::kBurst: {
      BurstParams p;
      r.Integer("packets_per_burst", p.packets_per_burst);
      r.Integer("packet_size", p.packet_size, true);
      r.Seconds("inter_burst_mean", p.inter_burst_mean);
      r.Seconds("inter_burst_stddev", p.inter_burst_stddev);
      flow.params = p;
      break;
    }
    case FlowKind::kTrace: {
      TraceParams p;
      r.Text("path", p.path);
      if (p.path.empty()) {
        r.Missing("path");
      } else if (std::filesystem::path(p.path).is_relative() && !base_dir.empty()) {
        p.path = (base_dir / p.path).lexically_normal().string();
      }
      r.Number("time_scale", p.time_scale);
      if (r.Find("loop_period")) {
        double loop = 0.0;
        r.Seconds("loop_period", loop);
        p.loop_period = loop;
      }
      flow.params = p;
      break;
    }
    case FlowKind::kSyntheticVideo: {
      SyntheticVideoParams p;
      r.Rate("mean_bitrate", p.mean_bitrate);
      const Entry* fps = r.Find("fps");
      const Entry* fi = r.Find("frame_interval");
      if (fps && fi) {
        r.Error(*fps, "give either fps or frame_interval, not both");
      } else if (fps) {
        double rate = 0.0;
        r.Number("fps", rate);
        if (rate > 0.0) {
          p.frame_interval = SimTime::FromSeconds(1.0 / rate);
        } else {
          r.Error(*fps, "must be positive");
        }
      } else {
        r.Duration("frame_interval", p.frame_interval);
      }
      r.Number("frame_size_cv", p.frame_size_cv);
      r.Integer("max_packet_size", p.max_packet_size, true);
      flow.params = p;
      break;
    }
  }
  (void)index;
  (void)errors;
  r.RejectUnknown();
  return flow;
}

std::string Num(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Ns(SimTime t) { return std::to_string(t.nanos()) + "ns"; }

}  // namespace

ScenarioConfig ParseScenario(std::istream& in, std::string_view source_name,
                             std::span<const std::string> overrides,
                             const std::filesystem::path& base_dir) {
  std::vector<ValidationIssue> errors;
  RawScenario raw = Tokenize(in, source_name, errors);
  for (const auto& o : overrides) ApplyOverride(raw, o, errors);

  ScenarioConfig config;
  for (const auto& e : raw.top) {
    if (e.key == "name") {
      config.name = e.value;
    } else {
      errors.push_back({std::string(source_name) + ":" + std::to_string(e.line),
                        "key '" + e.key + "' outside a section"});
    }
  }

  std::size_t flow_index = 0;
  bool have_link = false;
  for (const auto& section : raw.sections) {
    if (section.name == "link") {
      have_link = true;
      Reader r(section, "link", source_name, errors);
      r.Rate("r_in", config.link.r_in);
      if (!r.Find("r_out")) r.Missing("r_out");
      r.Rate("r_out", config.link.r_out);
      r.RejectUnknown();
    } else if (section.name == "buffer") {
      Reader r(section, "buffer", source_name, errors);
      r.Get("discipline", config.buffer.discipline, ParseDiscipline, "discipline");
      r.Get("mode", config.buffer.mode, ParseCapacityMode, "capacity mode");
      r.Integer("capacity", config.buffer.capacity, config.buffer.mode == CapacityMode::kBytes);
      if (config.buffer.discipline == Discipline::kRed) {
        RedParams red;
        r.Number("red_min_th", red.min_th);
        r.Number("red_max_th", red.max_th);
        r.Number("red_max_p", red.max_p);
        r.Number("red_weight", red.weight);
        config.buffer.red = red;
      }
      r.RejectUnknown();
    } else if (section.name == "flow") {
      Reader r(section, "flows[" + std::to_string(flow_index) + "]", source_name, errors);
      config.flows.push_back(ReadFlow(r, flow_index, base_dir, errors));
      ++flow_index;
    } else if (section.name == "run") {
      Reader r(section, "run", source_name, errors);
      r.Duration("duration", config.run.duration);
      r.Duration("warmup", config.run.warmup);
      r.Integer("repetitions", config.run.repetitions);
      r.Get("seed", config.run.seed, ParseSeed, "64-bit seed");
      r.Duration("start_offset_window", config.run.start_offset_window);
      r.RejectUnknown();
    } else if (section.name == "sweep") {
      Reader r(section, "sweep", source_name, errors);
      SweepSpec sweep;
      if (!r.Find("parameter")) r.Missing("parameter");
      r.Get("parameter", sweep.parameter, ParseSweepParameter,
            "sweep parameter (buffer_size, r_out, r_in, utilization)");
      if (const Entry* e = r.Find("values")) {
        if (auto v = ParseValues(e->value, sweep.parameter)) {
          sweep.values = std::move(*v);
        } else {
          r.Error(*e, "'" + e->value + "' is not a valid value list");
        }
      } else {
        r.Missing("values");
      }
      config.sweep = std::move(sweep);
      r.RejectUnknown();
    }
  }
  if (!have_link) errors.push_back({"link", "section [link] is required"});
  if (!errors.empty()) throw ScenarioError(std::move(errors));
  return config;
}

ScenarioConfig LoadScenario(const std::filesystem::path& path,
                            std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  ScenarioConfig config = ParseScenario(in, path.string(), overrides, path.parent_path());
  if (config.name.empty()) config.name = path.stem().string();
  return config;
}

std::string SerializeScenario(const ScenarioConfig& config) {
  std::ostringstream out;
  if (!config.name.empty()) out << "name = " << config.name << "\n";
  out << "\n[link]\nr_in = " << Num(config.link.r_in) << "\nr_out = " << Num(config.link.r_out)
      << "\n";
  const auto& b = config.buffer;
  out << "\n[buffer]\ndiscipline = " << DisciplineName(b.discipline)
      << "\nmode = " << CapacityModeName(b.mode) << "\ncapacity = " << b.capacity << "\n";
  if (b.red) {
    out << "red_min_th = " << Num(b.red->min_th) << "\nred_max_th = " << Num(b.red->max_th)
        << "\nred_max_p = " << Num(b.red->max_p) << "\nred_weight = " << Num(b.red->weight)
        << "\n";
  }
  for (const auto& f : config.flows) {
    out << "\n[flow]\nid = " << f.id << "\nkind = " << FlowKindName(f.kind())
        << "\nclass = " << static_cast<int>(f.traffic_class) << "\nservice = " << f.service
        << "\nstart_offset = " << Ns(f.start_offset) << "\n";
    if (f.replay_group) out << "replay_group = " << *f.replay_group << "\n";
    if (f.nominal_rate) out << "nominal_rate = " << Num(*f.nominal_rate) << "\n";
    if (const auto* p = std::get_if<CbrParams>(&f.params)) {
      out << "packet_size = " << p->packet_size << "\ninterval = " << Ns(p->interval) << "\n";
    } else if (const auto* p = std::get_if<BurstParams>(&f.params)) {
      out << "packets_per_burst = " << p->packets_per_burst << "\npacket_size = " << p->packet_size
          << "\ninter_burst_mean = " << Num(p->inter_burst_mean)
          << "\ninter_burst_stddev = " << Num(p->inter_burst_stddev) << "\n";
    } else if (const auto* p = std::get_if<TraceParams>(&f.params)) {
      out << "path = " << p->path << "\ntime_scale = " << Num(p->time_scale) << "\n";
      if (p->loop_period) out << "loop_period = " << Num(*p->loop_period) << "\n";
    } else if (const auto* p = std::get_if<SyntheticVideoParams>(&f.params)) {
      out << "mean_bitrate = " << Num(p->mean_bitrate)
          << "\nframe_interval = " << Ns(p->frame_interval)
          << "\nframe_size_cv = " << Num(p->frame_size_cv)
          << "\nmax_packet_size = " << p->max_packet_size << "\n";
    }
  }
  const auto& run = config.run;
  out << "\n[run]\nduration = " << Ns(run.duration) << "\nwarmup = " << Ns(run.warmup)
      << "\nrepetitions = " << run.repetitions << "\nseed = " << run.seed
      << "\nstart_offset_window = " << Ns(run.start_offset_window) << "\n";
  if (config.sweep) {
    out << "\n[sweep]\nparameter = " << SweepParameterName(config.sweep->parameter)
        << "\nvalues = ";
    for (std::size_t i = 0; i < config.sweep->values.size(); ++i) {
      out << (i ? "," : "") << Num(config.sweep->values[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::string ConfigHash(const ScenarioConfig& config) {
  const std::uint64_t h = Fnv1a64(SerializeScenario(config));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace accessq
