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

#include "accessq/sim_time.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace accessq {

SimTime SimTime::FromSeconds(double seconds) {
  if (!std::isfinite(seconds)) throw std::invalid_argument("non-finite time");
  return SimTime(static_cast<std::int64_t>(std::llround(seconds * 1e9)));
}

std::string SimTime::ToString() const {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9fs", seconds());
  return buf;
}

SimTime SerializationTime(std::uint64_t size_bytes, double rate_bps) {
  if (size_bytes == 0) throw std::invalid_argument("packet size must be at least 1 byte");
  if (!(rate_bps > 0.0)) throw std::invalid_argument("link rate must be positive");
  return SimTime::FromSeconds(static_cast<double>(size_bytes) * 8.0 / rate_bps);
}

}  // namespace accessq
