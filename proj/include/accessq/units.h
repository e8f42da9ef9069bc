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

#ifndef ACCESSQ_UNITS_H_
#define ACCESSQ_UNITS_H_

#include <optional>
#include <string>
#include <string_view>

// Quantity parsing for config files and the command line. Bare numbers are
// taken in the canonical unit (bits/s, seconds, bytes). Prefixes are decimal.
namespace accessq::units {

std::optional<double> ParseRate(std::string_view text);      // bps, kbps, Mbps, Gbps
std::optional<double> ParseDuration(std::string_view text);  // ns, us, ms, s
std::optional<double> ParseBytes(std::string_view text);     // B, KB, MB, GB
std::optional<double> ParseNumber(std::string_view text);

std::string FormatRate(double bps);      // "7.97872 Mbps"
std::string FormatBytes(double bytes);   // "125 MB"
std::string FormatDuration(double seconds);

// Six significant digits in plain decimal notation (no exponent).
std::string FormatSig6(double value);

}  // namespace accessq::units

#endif  // ACCESSQ_UNITS_H_
