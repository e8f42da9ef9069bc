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

#ifndef ACCESSQ_SIM_TIME_H_
#define ACCESSQ_SIM_TIME_H_

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace accessq {

// Simulation clock value. Integer nanoseconds so that event ordering is exact.
class SimTime {
 public:
  constexpr SimTime() = default;

  static constexpr SimTime FromNanos(std::int64_t ns) { return SimTime(ns); }
  static constexpr SimTime FromMicros(std::int64_t us) { return SimTime(us * 1000); }
  static constexpr SimTime FromMillis(std::int64_t ms) { return SimTime(ms * 1000000); }
  // Rounds to the nearest nanosecond.
  static SimTime FromSeconds(double seconds);
  static constexpr SimTime Zero() { return SimTime(0); }
  static constexpr SimTime Max() { return SimTime(std::numeric_limits<std::int64_t>::max()); }

  constexpr std::int64_t nanos() const { return ns_; }
  constexpr double seconds() const { return static_cast<double>(ns_) * 1e-9; }
  constexpr double millis() const { return static_cast<double>(ns_) * 1e-6; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime other) {
    ns_ += other.ns_;
    return *this;
  }
  constexpr SimTime& operator-=(SimTime other) {
    ns_ -= other.ns_;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime(a.ns_ + b.ns_); }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime(a.ns_ - b.ns_); }
  friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return SimTime(a.ns_ * k); }
  friend constexpr SimTime operator*(std::int64_t k, SimTime a) { return SimTime(a.ns_ * k); }

  std::string ToString() const;

 private:
  constexpr explicit SimTime(std::int64_t ns) : ns_(ns) {}

  std::int64_t ns_ = 0;
};

constexpr SimTime Max(SimTime a, SimTime b) { return a < b ? b : a; }

// Time to clock `size_bytes` onto a link of `rate_bps` bits/s, rounded to the
// nearest nanosecond. Throws std::invalid_argument for size 0 or rate <= 0.
SimTime SerializationTime(std::uint64_t size_bytes, double rate_bps);

}  // namespace accessq

#endif  // ACCESSQ_SIM_TIME_H_
