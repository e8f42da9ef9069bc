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

#include "accessq/units.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace accessq::units {

namespace {

struct Suffix {
  std::string_view text;
  double scale;
};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

// Splits "12.5 Mbps" into 12.5 and "Mbps".
std::optional<std::pair<double, std::string_view>> SplitQuantity(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;
  std::size_t end = 0;
  while (end < text.size() &&
         (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.' ||
          text[end] == '-' || text[end] == '+' || text[end] == 'e' || text[end] == 'E')) {
    // Stop at an 'e' that is not an exponent (no digit or sign after it).
    if ((text[end] == 'e' || text[end] == 'E') &&
        (end + 1 >= text.size() ||
         !(std::isdigit(static_cast<unsigned char>(text[end + 1])) || text[end + 1] == '-' ||
           text[end + 1] == '+'))) {
      break;
    }
    ++end;
  }
  const std::string number(text.substr(0, end));
  if (number.empty()) return std::nullopt;
  char* stop = nullptr;
  const double value = std::strtod(number.c_str(), &stop);
  if (stop != number.c_str() + number.size() || !std::isfinite(value)) return std::nullopt;
  return std::make_pair(value, Trim(text.substr(end)));
}

template <std::size_t N>
std::optional<double> ParseWith(std::string_view text, const std::array<Suffix, N>& suffixes) {
  const auto q = SplitQuantity(text);
  if (!q) return std::nullopt;
  if (q->second.empty()) return q->first;
  for (const auto& s : suffixes) {
    if (EqualsIgnoreCase(q->second, s.text)) return q->first * s.scale;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> ParseRate(std::string_view text) {
  static constexpr std::array<Suffix, 8> kSuffixes = {{{"bps", 1.0},
                                                       {"b/s", 1.0},
                                                       {"kbps", 1e3},
                                                       {"kb/s", 1e3},
                                                       {"mbps", 1e6},
                                                       {"mb/s", 1e6},
                                                       {"gbps", 1e9},
                                                       {"gb/s", 1e9}}};
  return ParseWith(text, kSuffixes);
}

std::optional<double> ParseDuration(std::string_view text) {
  static constexpr std::array<Suffix, 5> kSuffixes = {
      {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}, {"min", 60.0}}};
  return ParseWith(text, kSuffixes);
}

std::optional<double> ParseBytes(std::string_view text) {
  static constexpr std::array<Suffix, 5> kSuffixes = {
      {{"b", 1.0}, {"kb", 1e3}, {"mb", 1e6}, {"gb", 1e9}, {"bytes", 1.0}}};
  // "b" here means bytes; rates carry the "ps" suffix.
  return ParseWith(text, kSuffixes);
}

std::optional<double> ParseNumber(std::string_view text) {
  const auto q = SplitQuantity(text);
  if (!q || !q->second.empty()) return std::nullopt;
  return q->first;
}

std::string FormatSig6(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  if (value == 0.0) return "0";
  const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const int decimals = std::max(0, 5 - magnitude);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s(buf);
  // Rounding can carry into a new digit (9.999995 -> 10.00000); re-trim.
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

namespace {

std::string Scaled(double value, const std::array<Suffix, 4>& ladder) {
  const Suffix* pick = &ladder[0];
  for (const auto& s : ladder) {
    if (std::abs(value) >= s.scale) pick = &s;
  }
  return FormatSig6(value / pick->scale) + " " + std::string(pick->text);
}

}  // namespace

std::string FormatRate(double bps) {
  static constexpr std::array<Suffix, 4> kLadder = {
      {{"bps", 1.0}, {"kbps", 1e3}, {"Mbps", 1e6}, {"Gbps", 1e9}}};
  return Scaled(bps, kLadder);
}

std::string FormatBytes(double bytes) {
  static constexpr std::array<Suffix, 4> kLadder = {{{"B", 1.0}, {"KB", 1e3}, {"MB", 1e6}, {"GB", 1e9}}};
  return Scaled(bytes, kLadder);
}

std::string FormatDuration(double seconds) {
  static constexpr std::array<Suffix, 4> kLadder = {{{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}}};
  return Scaled(seconds, kLadder);
}

}  // namespace accessq::units
