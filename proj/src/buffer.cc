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

#include "accessq/buffer.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace accessq {

std::string_view DisciplineName(Discipline d) {
  switch (d) {
    case Discipline::kDropTail: return "drop_tail";
    case Discipline::kFifoFast: return "fifo_fast";
    case Discipline::kRed: return "red";
  }
  return "?";
}

std::optional<Discipline> ParseDiscipline(std::string_view name) {
  if (name == "drop_tail") return Discipline::kDropTail;
  if (name == "fifo_fast") return Discipline::kFifoFast;
  if (name == "red") return Discipline::kRed;
  return std::nullopt;
}

std::string_view CapacityModeName(CapacityMode m) {
  return m == CapacityMode::kPackets ? "packets" : "bytes";
}

std::optional<CapacityMode> ParseCapacityMode(std::string_view name) {
  if (name == "packets") return CapacityMode::kPackets;
  if (name == "bytes") return CapacityMode::kBytes;
  return std::nullopt;
}

std::string_view DropReasonName(DropReason r) {
  return r == DropReason::kFull ? "full" : "red";
}

double RedDropProbability(double avg, const RedParams& p) {
  if (avg < p.min_th) return 0.0;
  if (avg >= p.max_th) return 1.0;
  return p.max_p * (avg - p.min_th) / (p.max_th - p.min_th);
}

double RedUpdateAverage(double avg, double occupancy, double weight) {
  return (1.0 - weight) * avg + weight * occupancy;
}

bool QueueDisc::Fits(const Packet& packet) const {
  if (policy_.mode == CapacityMode::kPackets) return packets_ + 1 <= policy_.capacity;
  return bytes_ + packet.size <= policy_.capacity;
}

void QueueDisc::Account(const Packet& packet, int sign) {
  if (sign > 0) {
    packets_ += 1;
    bytes_ += packet.size;
  } else {
    packets_ -= 1;
    bytes_ -= packet.size;
  }
}

DropTailQueue::DropTailQueue(BufferPolicy policy) : QueueDisc(policy) {}

EnqueueResult DropTailQueue::Enqueue(const Packet& packet, SimTime) {
  if (!Fits(packet)) return {DropReason::kFull};
  fifo_.push_back(packet);
  Account(packet, +1);
  return {};
}

std::optional<Packet> DropTailQueue::Dequeue() {
  if (fifo_.empty()) return std::nullopt;
  Packet p = fifo_.front();
  fifo_.pop_front();
  Account(p, -1);
  return p;
}

FifoFastQueue::FifoFastQueue(BufferPolicy policy) : QueueDisc(policy) {}

EnqueueResult FifoFastQueue::Enqueue(const Packet& packet, SimTime) {
  if (packet.traffic_class >= kNumTrafficClasses) {
    throw std::invalid_argument("traffic class out of range");
  }
  if (!Fits(packet)) return {DropReason::kFull};
  bands_[packet.traffic_class].push_back(packet);
  Account(packet, +1);
  return {};
}

std::optional<Packet> FifoFastQueue::Dequeue() {
  for (auto& band : bands_) {
    if (band.empty()) continue;
    Packet p = band.front();
    band.pop_front();
    Account(p, -1);
    return p;
  }
  return std::nullopt;
}

RedQueue::RedQueue(BufferPolicy policy, Rng rng)
    : QueueDisc(policy), params_(policy.red.value()), rng_(std::move(rng)) {}

EnqueueResult RedQueue::Enqueue(const Packet& packet, SimTime) {
  avg_ = RedUpdateAverage(avg_, static_cast<double>(occupancy()), params_.weight);
  if (!Fits(packet)) return {DropReason::kFull};
  const double p = RedDropProbability(avg_, params_);
  if (p >= 1.0) return {DropReason::kRedEarly};
  if (p > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p) {
    return {DropReason::kRedEarly};
  }
  fifo_.push_back(packet);
  Account(packet, +1);
  return {};
}

std::optional<Packet> RedQueue::Dequeue() {
  if (fifo_.empty()) return std::nullopt;
  Packet p = fifo_.front();
  fifo_.pop_front();
  Account(p, -1);
  return p;
}

void CheckBufferPolicy(const BufferPolicy& policy) {
  if (policy.capacity == 0) throw std::invalid_argument("buffer capacity must be positive");
  if (policy.red.has_value() != (policy.discipline == Discipline::kRed)) {
    throw std::invalid_argument("RED parameters are required for, and only for, the red discipline");
  }
  if (const auto& red = policy.red) {
    if (!(red->min_th > 0.0 && red->min_th < red->max_th &&
          red->max_th <= static_cast<double>(policy.capacity))) {
      throw std::invalid_argument("RED thresholds need 0 < min_th < max_th <= capacity");
    }
    if (!(red->max_p > 0.0 && red->max_p <= 1.0)) {
      throw std::invalid_argument("RED max_p must be in (0, 1]");
    }
    if (!(red->weight > 0.0 && red->weight <= 1.0)) {
      throw std::invalid_argument("RED weight must be in (0, 1]");
    }
  }
}

std::unique_ptr<QueueDisc> MakeQueueDisc(const BufferPolicy& policy, Rng rng) {
  CheckBufferPolicy(policy);
  switch (policy.discipline) {
    case Discipline::kDropTail: return std::make_unique<DropTailQueue>(policy);
    case Discipline::kFifoFast: return std::make_unique<FifoFastQueue>(policy);
    case Discipline::kRed: return std::make_unique<RedQueue>(policy, std::move(rng));
  }
  throw std::invalid_argument("unknown discipline");
}

}  // namespace accessq
