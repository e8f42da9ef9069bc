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

#ifndef ACCESSQ_BUFFER_H_
#define ACCESSQ_BUFFER_H_

#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string_view>

#include "accessq/packet.h"
#include "accessq/rng.h"
#include "accessq/sim_time.h"

namespace accessq {

enum class Discipline { kDropTail, kFifoFast, kRed };
enum class CapacityMode { kPackets, kBytes };

std::string_view DisciplineName(Discipline d);
std::optional<Discipline> ParseDiscipline(std::string_view name);
std::string_view CapacityModeName(CapacityMode m);
std::optional<CapacityMode> ParseCapacityMode(std::string_view name);

// Thresholds are in the buffer's capacity unit (packets or bytes).
struct RedParams {
  double min_th = 5;
  double max_th = 15;
  double max_p = 0.1;
  double weight = 0.002;
};

struct BufferPolicy {
  Discipline discipline = Discipline::kDropTail;
  CapacityMode mode = CapacityMode::kPackets;
  std::uint64_t capacity = 40;
  std::optional<RedParams> red;
};

enum class DropReason { kFull, kRedEarly };
std::string_view DropReasonName(DropReason r);

struct EnqueueResult {
  std::optional<DropReason> drop;  // empty when accepted
  bool accepted() const { return !drop.has_value(); }
};

// Linear RED profile: 0 below min_th, max_p*(avg-min_th)/(max_th-min_th) up to
// max_th, and 1 from max_th on.
double RedDropProbability(double avg, const RedParams& params);

// EWMA step: (1 - weight) * avg + weight * occupancy.
double RedUpdateAverage(double avg, double occupancy, double weight);

// Bottleneck buffer. The packet being transmitted is not stored here.
class QueueDisc {
 public:
  virtual ~QueueDisc() = default;

  virtual EnqueueResult Enqueue(const Packet& packet, SimTime now) = 0;
  virtual std::optional<Packet> Dequeue() = 0;

  std::uint64_t packets() const { return packets_; }
  std::uint64_t bytes() const { return bytes_; }
  bool empty() const { return packets_ == 0; }
  const BufferPolicy& policy() const { return policy_; }

  // Occupancy in the configured capacity unit.
  std::uint64_t occupancy() const {
    return policy_.mode == CapacityMode::kPackets ? packets_ : bytes_;
  }

 protected:
  explicit QueueDisc(BufferPolicy policy) : policy_(policy) {}

  // True if adding `packet` keeps occupancy within capacity.
  bool Fits(const Packet& packet) const;
  void Account(const Packet& packet, int sign);

  BufferPolicy policy_;
  std::uint64_t packets_ = 0;
  std::uint64_t bytes_ = 0;
};

class DropTailQueue : public QueueDisc {
 public:
  explicit DropTailQueue(BufferPolicy policy);
  EnqueueResult Enqueue(const Packet& packet, SimTime now) override;
  std::optional<Packet> Dequeue() override;

 private:
  std::deque<Packet> fifo_;
};

// Three strict-priority FIFOs sharing one capacity; class 0 is served first.
class FifoFastQueue : public QueueDisc {
 public:
  explicit FifoFastQueue(BufferPolicy policy);
  EnqueueResult Enqueue(const Packet& packet, SimTime now) override;
  std::optional<Packet> Dequeue() override;

  std::size_t band_size(TrafficClass c) const { return bands_.at(c).size(); }

 private:
  std::array<std::deque<Packet>, kNumTrafficClasses> bands_;
};

// Floyd-Jacobson RED on a single FIFO. The average is updated on every
// arrival from the occupancy seen by that arrival; a full buffer still drops.
class RedQueue : public QueueDisc {
 public:
  RedQueue(BufferPolicy policy, Rng rng);
  EnqueueResult Enqueue(const Packet& packet, SimTime now) override;
  std::optional<Packet> Dequeue() override;

  double average() const { return avg_; }

 private:
  std::deque<Packet> fifo_;
  RedParams params_;
  double avg_ = 0.0;
  Rng rng_;
};

// Throws std::invalid_argument if the policy violates its invariants.
void CheckBufferPolicy(const BufferPolicy& policy);

std::unique_ptr<QueueDisc> MakeQueueDisc(const BufferPolicy& policy, Rng rng);

}  // namespace accessq

#endif  // ACCESSQ_BUFFER_H_
