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

#ifndef ACCESSQ_REPORT_H_
#define ACCESSQ_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "accessq/scenario.h"

// CSV output plus gnuplot-friendly .dat mirrors (space separated, '#' header).
namespace accessq::report {

inline constexpr const char* kToolVersion = "accessq 0.3.0";

// A small table that can be rendered as CSV or .dat.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void WriteCsv(std::ostream& out) const;
  void WriteDat(std::ostream& out) const;
};

Table SummaryTable(const ExperimentResult& result);
Table RepetitionsTable(const ExperimentResult& result);
Table HistogramTable(const Histogram& histogram);
Table SweepTable(std::span<const SweepPoint> points, std::string_view parameter);
Table MosSummaryTable(const MosReport& report);

// File-name-safe form of a subject ("service:voip" -> "service_voip").
std::string SafeName(std::string_view subject);

// Writes summary, repetitions, histogram_loss_<subject> (+ .dat) and
// provenance.json. Throws IoError.
void WriteExperiment(const std::filesystem::path& dir, const ExperimentResult& result,
                     const ScenarioConfig& config);

// One sub-directory per value plus sweep_summary.csv/.dat.
void WriteSweep(const std::filesystem::path& dir, std::span<const SweepPoint> points,
                SweepParameter parameter);

// histogram_mos_<d>ms and mos_summary (+ .dat).
void WriteMosReport(const std::filesystem::path& dir, const MosReport& report);

void WriteTableFiles(const std::filesystem::path& dir, const std::string& stem, const Table& table);

}  // namespace accessq::report

#endif  // ACCESSQ_REPORT_H_
