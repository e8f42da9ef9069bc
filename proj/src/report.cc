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

#include "accessq/report.h"

#include <fstream>
#include <ostream>

#include "json.hpp"

#include "accessq/scenario_file.h"
#include "accessq/units.h"

namespace accessq::report {

namespace {

using units::FormatSig6;

std::string Opt(const std::optional<double>& v) { return v ? FormatSig6(*v) : ""; }

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void EnsureDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void AppendRow(Table& t, const FlowRepetition& r, std::uint32_t rep) {
  t.rows.push_back({std::to_string(rep), r.subject, std::to_string(r.sent),
                    std::to_string(r.delivered), std::to_string(r.dropped), Opt(r.loss),
                    Opt(r.mean_delay),
                    r.jitter ? FormatSig6(r.jitter->max_variation) : "",
                    r.jitter ? FormatSig6(r.jitter->smoothed) : ""});
}

}  // namespace

void Table::WriteCsv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

void Table::WriteDat(std::ostream& out) const {
  out << "#";
  for (const auto& c : columns) out << " " << c;
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      // gnuplot treats "?" as a missing value.
      out << (i ? " " : "") << (row[i].empty() ? "?" : row[i]);
    }
    out << "\n";
  }
}

Table SummaryTable(const ExperimentResult& result) {
  Table t{{"metric", "flow", "mean", "ci95_halfwidth", "n"}, {}};
  for (const auto& s : result.summaries) {
    t.rows.push_back({s.metric, s.subject, FormatSig6(s.mean), Opt(s.ci95_half_width),
                      std::to_string(s.n)});
  }
  return t;
}

Table RepetitionsTable(const ExperimentResult& result) {
  Table t{{"rep", "flow", "sent", "delivered", "dropped", "loss", "mean_delay", "max_jitter",
           "smoothed_jitter"},
          {}};
  for (const auto& rec : result.repetitions) {
    for (const auto& f : rec.flows) AppendRow(t, f, rec.index);
    for (const auto& s : rec.services) AppendRow(t, s, rec.index);
    AppendRow(t, rec.combined, rec.index);
  }
  return t;
}

Table HistogramTable(const Histogram& histogram) {
  Table t{{"bin_lo", "bin_hi", "fraction"}, {}};
  for (const auto& b : histogram.bins) {
    t.rows.push_back({FormatSig6(b.lo), FormatSig6(b.hi), FormatSig6(b.fraction)});
  }
  return t;
}

Table SweepTable(std::span<const SweepPoint> points, std::string_view parameter) {
  Table t{{std::string(parameter), "flow", "mean_loss", "ci95_halfwidth", "n"}, {}};
  for (const auto& p : points) {
    for (const auto& s : p.result.summaries) {
      if (s.metric != "loss") continue;
      t.rows.push_back({FormatSig6(p.value), s.subject, FormatSig6(s.mean),
                        Opt(s.ci95_half_width), std::to_string(s.n)});
    }
  }
  return t;
}

Table MosSummaryTable(const MosReport& report) {
  Table t{{"network_delay_ms", "total_delay_ms", "calls", "mean_mos"}, {}};
  for (const auto& d : report.delays) {
    t.rows.push_back({FormatSig6(d.network_delay_ms), FormatSig6(d.total_delay_ms),
                      std::to_string(d.mos.size()), Opt(d.mean)});
  }
  return t;
}

std::string SafeName(std::string_view subject) {
  std::string out(subject);
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

void WriteTableFiles(const std::filesystem::path& dir, const std::string& stem, const Table& table) {
  EnsureDir(dir);
  auto csv = OpenOut(dir / (stem + ".csv"));
  table.WriteCsv(csv);
  auto dat = OpenOut(dir / (stem + ".dat"));
  table.WriteDat(dat);
  if (!csv || !dat) throw IoError("failed writing " + (dir / stem).string());
}

void WriteExperiment(const std::filesystem::path& dir, const ExperimentResult& result,
                     const ScenarioConfig& config) {
  EnsureDir(dir);
  WriteTableFiles(dir, "summary", SummaryTable(result));
  WriteTableFiles(dir, "repetitions", RepetitionsTable(result));
  for (const auto& [subject, histogram] : result.loss_histograms) {
    const Table t = HistogramTable(histogram);
    WriteTableFiles(dir, "histogram_loss_" + SafeName(subject), t);
    if (subject == "all") WriteTableFiles(dir, "histogram_loss", t);
  }

  nlohmann::ordered_json prov;
  prov["scenario"] = result.scenario_name;
  prov["config_hash"] = result.config_hash;
  prov["seed"] = result.seed;
  prov["tool_version"] = kToolVersion;
  prov["repetitions"] = result.repetitions.size();
  prov["loss_histogram_bin_width_pp"] = kLossHistogramBinWidth;
  prov["effective_scenario"] = "effective.scn";
  auto json = OpenOut(dir / "provenance.json");
  json << prov.dump(2) << "\n";
  auto scn = OpenOut(dir / "effective.scn");
  scn << SerializeScenario(config);
  if (!json || !scn) throw IoError("failed writing provenance to " + dir.string());
}

void WriteSweep(const std::filesystem::path& dir, std::span<const SweepPoint> points,
                SweepParameter parameter) {
  EnsureDir(dir);
  for (const auto& p : points) {
    const std::string sub = std::string(SweepParameterName(parameter)) + "_" + FormatSig6(p.value);
    WriteExperiment(dir / sub, p.result, p.config);
  }
  WriteTableFiles(dir, "sweep_summary", SweepTable(points, SweepParameterName(parameter)));
}

void WriteMosReport(const std::filesystem::path& dir, const MosReport& report) {
  EnsureDir(dir);
  for (const auto& d : report.delays) {
    WriteTableFiles(dir, "histogram_mos_" + FormatSig6(d.network_delay_ms) + "ms",
                    HistogramTable(d.histogram));
  }
  WriteTableFiles(dir, "mos_summary", MosSummaryTable(report));
}

}  // namespace accessq::report
