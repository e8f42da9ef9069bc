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

#ifndef ACCESSQ_TESTS_ORACLE_H_
#define ACCESSQ_TESTS_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

// Straight-line reference for a drop-tail FIFO counted in packets, written
// without the event queue: sort every arrival, then walk them once keeping the
// departure times of the packets still in the system.
namespace oracle {

struct Input {
  std::int64_t created_ns;
  std::uint32_t size;
};

struct FlowCounts {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::vector<double> delays;  // seconds, departure order
};

inline std::int64_t TxNs(std::uint32_t size, double rate) {
  return std::llround(static_cast<double>(size) * 8.0 / rate * 1e9);
}

inline std::vector<FlowCounts> DropTail(const std::vector<std::vector<Input>>& flows, double r_in,
                                        double r_out, std::uint64_t capacity,
                                        std::int64_t measure_from, std::int64_t end) {
  struct Arrival {
    std::int64_t at;
    std::size_t flow;
    std::size_t index;
  };
  std::vector<Arrival> arrivals;
  for (std::size_t f = 0; f < flows.size(); ++f) {
    std::int64_t free = 0;
    for (std::size_t i = 0; i < flows[f].size(); ++i) {
      const auto& p = flows[f][i];
      if (p.created_ns >= end) break;
      free = std::max(p.created_ns, free) + TxNs(p.size, r_in);
      arrivals.push_back({free, f, i});
    }
  }
  std::stable_sort(arrivals.begin(), arrivals.end(),
                   [](const Arrival& a, const Arrival& b) { return a.at < b.at; });

  std::vector<FlowCounts> out(flows.size());
  struct Departure {
    std::int64_t at;
    std::size_t flow;
    std::int64_t created;
  };
  std::deque<Departure> system;
  std::vector<Departure> departed;
  std::int64_t last = 0;
  for (const auto& a : arrivals) {
    const auto& p = flows[a.flow][a.index];
    const bool counted = p.created_ns >= measure_from && p.created_ns < end;
    if (counted) ++out[a.flow].sent;
    if (a.at >= end) continue;  // never reaches the router inside the run
    // A departure at the same instant as an arrival happens after it.
    while (!system.empty() && system.front().at < a.at) {
      departed.push_back(system.front());
      system.pop_front();
    }
    if (system.size() <= capacity) {
      last = std::max(a.at, last) + TxNs(p.size, r_out);
      system.push_back({last, a.flow, p.created_ns});
    } else if (counted) {
      ++out[a.flow].dropped;
    }
  }
  for (const auto& d : system) departed.push_back(d);
  for (const auto& d : departed) {
    if (d.at < end && d.created >= measure_from && d.created < end) {
      ++out[d.flow].delivered;
      out[d.flow].delays.push_back(static_cast<double>(d.at - d.created) * 1e-9);
    }
  }
  return out;
}

}  // namespace oracle

#endif  // ACCESSQ_TESTS_ORACLE_H_
