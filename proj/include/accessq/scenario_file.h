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

#ifndef ACCESSQ_SCENARIO_FILE_H_
#define ACCESSQ_SCENARIO_FILE_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "accessq/scenario.h"

// Scenario files are INI-style text:
//
//   [link]            r_in, r_out
//   [buffer]          discipline, mode, capacity, red_min_th, red_max_th,
//                     red_max_p, red_weight
//   [flow]            repeatable; id, kind, class, service, start_offset,
//                     replay_group, nominal_rate and the kind's parameters
//   [run]             duration, warmup, repetitions, seed, start_offset_window
//   [sweep]           optional; parameter, values (comma separated)
//
// Values take unit suffixes (kbps/Mbps/Gbps, us/ms/s, B/KB/MB/GB).
// Overrides are "section.key=value" or "flows[i].key=value" and are applied on
// top of the file before conversion.
namespace accessq {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ScenarioError for syntax or conversion problems (with line numbers
// or field paths). Relative trace paths resolve against `base_dir`.
ScenarioConfig ParseScenario(std::istream& in, std::string_view source_name,
                             std::span<const std::string> overrides = {},
                             const std::filesystem::path& base_dir = {});

// Throws IoError if the file cannot be read.
ScenarioConfig LoadScenario(const std::filesystem::path& path,
                            std::span<const std::string> overrides = {});

// Canonical text in base units; parses back to an equivalent config.
std::string SerializeScenario(const ScenarioConfig& config);

// FNV-1a of the canonical text, 16 hex digits.
std::string ConfigHash(const ScenarioConfig& config);

}  // namespace accessq

#endif  // ACCESSQ_SCENARIO_FILE_H_
