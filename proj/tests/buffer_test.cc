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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "accessq/buffer.h"
#include "accessq/simulator.h"
#include "accessq/traffic.h"

namespace accessq {
namespace {

Packet Pkt(std::uint64_t id, std::uint32_t size = 1500, TrafficClass c = kDefaultTrafficClass) {
  return Packet{id, 0, size, c, SimTime::Zero(), std::nullopt, std::nullopt};
}

BufferPolicy Policy(Discipline d, std::uint64_t capacity, CapacityMode mode = CapacityMode::kPackets) {
  BufferPolicy p;
  p.discipline = d;
  p.capacity = capacity;
  p.mode = mode;
  if (d == Discipline::kRed) p.red = RedParams{};
  return p;
}

TEST(DropTail, AcceptsIntoEmptyBuffer) {
  DropTailQueue q(Policy(Discipline::kDropTail, 15));
  EXPECT_TRUE(q.Enqueue(Pkt(0), SimTime::Zero()).accepted());
  EXPECT_EQ(q.packets(), 1U);
}

TEST(DropTail, FullBufferDropsWithReasonFull) {
  DropTailQueue q(Policy(Discipline::kDropTail, 15));
  for (int i = 0; i < 15; ++i) ASSERT_TRUE(q.Enqueue(Pkt(i), SimTime::Zero()).accepted());
  const auto r = q.Enqueue(Pkt(15), SimTime::Zero());
  ASSERT_FALSE(r.accepted());
  EXPECT_EQ(*r.drop, DropReason::kFull);
  EXPECT_EQ(q.packets(), 15U);
}

TEST(DropTail, ByteModeFavorsSmallPackets) {
  DropTailQueue q(Policy(Discipline::kDropTail, 3000, CapacityMode::kBytes));
  ASSERT_TRUE(q.Enqueue(Pkt(0, 1500), SimTime::Zero()).accepted());
  ASSERT_TRUE(q.Enqueue(Pkt(1, 1400), SimTime::Zero()).accepted());
  EXPECT_EQ(q.bytes(), 2900U);
  EXPECT_FALSE(q.Enqueue(Pkt(2, 200), SimTime::Zero()).accepted());
  EXPECT_TRUE(q.Enqueue(Pkt(3, 60), SimTime::Zero()).accepted());
  EXPECT_EQ(q.occupancy(), 2960U);
}

TEST(DropTail, FifoOrder) {
  DropTailQueue q(Policy(Discipline::kDropTail, 10));
  for (std::uint64_t id : {7, 8, 9}) q.Enqueue(Pkt(id), SimTime::Zero());
  EXPECT_EQ(q.Dequeue()->id, 7U);
  EXPECT_EQ(q.Dequeue()->id, 8U);
  EXPECT_EQ(q.Dequeue()->id, 9U);
  EXPECT_FALSE(q.Dequeue().has_value());
  EXPECT_EQ(q.bytes(), 0U);
}

TEST(FifoFast, LowerClassNumberIsServedFirst) {
  FifoFastQueue q(Policy(Discipline::kFifoFast, 10));
  q.Enqueue(Pkt(1, 100, 2), SimTime::Zero());
  q.Enqueue(Pkt(2, 100, 1), SimTime::Zero());
  EXPECT_EQ(q.Dequeue()->id, 2U);
  q.Enqueue(Pkt(3, 100, 0), SimTime::Zero());
  q.Enqueue(Pkt(4, 100, 1), SimTime::Zero());
  EXPECT_EQ(q.Dequeue()->id, 3U);
  EXPECT_EQ(q.Dequeue()->id, 4U);
  EXPECT_EQ(q.Dequeue()->id, 1U);
  EXPECT_FALSE(q.Dequeue().has_value());
}

TEST(FifoFast, BandsShareOneCapacity) {
  FifoFastQueue q(Policy(Discipline::kFifoFast, 4));
  q.Enqueue(Pkt(0, 100, 2), SimTime::Zero());
  q.Enqueue(Pkt(1, 100, 2), SimTime::Zero());
  q.Enqueue(Pkt(2, 100, 1), SimTime::Zero());
  q.Enqueue(Pkt(3, 100, 0), SimTime::Zero());
  EXPECT_FALSE(q.Enqueue(Pkt(4, 100, 0), SimTime::Zero()).accepted());
  EXPECT_EQ(q.band_size(0), 1U);
  EXPECT_EQ(q.band_size(2), 2U);
}

TEST(FifoFast, ClassTwoLeavesOnlyWhenHigherBandsAreEmpty) {
  FifoFastQueue q(Policy(Discipline::kFifoFast, 1000));
  std::mt19937 rng(3);
  int id = 0;
  for (int step = 0; step < 5000; ++step) {
    if (rng() % 3 != 0) {
      q.Enqueue(Pkt(static_cast<std::uint64_t>(id++), 100, static_cast<TrafficClass>(rng() % 3)),
                SimTime::Zero());
    } else {
      const std::size_t b0 = q.band_size(0), b1 = q.band_size(1);
      if (auto p = q.Dequeue()) {
        if (p->traffic_class == 2) {
          EXPECT_EQ(b0, 0U);
          EXPECT_EQ(b1, 0U);
        } else if (p->traffic_class == 1) {
          EXPECT_EQ(b0, 0U);
        }
      }
    }
  }
}

TEST(Red, ProbabilityProfile) {
  const RedParams p{5, 15, 0.1, 0.002};
  EXPECT_EQ(RedDropProbability(0.0, p), 0.0);
  EXPECT_EQ(RedDropProbability(4.999, p), 0.0);
  EXPECT_EQ(RedDropProbability(5.0, p), 0.0);
  EXPECT_DOUBLE_EQ(RedDropProbability(10.0, p), 0.05);
  EXPECT_DOUBLE_EQ(RedDropProbability(12.5, p), 0.075);
  EXPECT_EQ(RedDropProbability(15.0, p), 1.0);
  EXPECT_EQ(RedDropProbability(40.0, p), 1.0);
}

TEST(Red, ProbabilityIsMonotoneAndContinuousBelowMaxTh) {
  const RedParams p{5, 15, 0.3, 0.002};
  double prev = 0.0;
  for (double avg = 0.0; avg < 15.0; avg += 0.001) {
    const double pr = RedDropProbability(avg, p);
    EXPECT_GE(pr, prev);
    EXPECT_LE(pr - prev, 0.3 / 10 * 0.001 + 1e-12);
    prev = pr;
  }
}

TEST(Red, AverageUpdate) {
  EXPECT_EQ(RedUpdateAverage(3.0, 9.0, 1.0), 9.0);
  for (double w : {0.002, 0.1, 0.7}) EXPECT_DOUBLE_EQ(RedUpdateAverage(10.0, 10.0, w), 10.0);
  double avg = 0.0;
  for (int i = 0; i < 1000; ++i) avg = RedUpdateAverage(avg, 10.0, 0.002);
  EXPECT_NEAR(avg, 10.0 * (1.0 - std::pow(0.998, 1000)), 1e-9);
  EXPECT_NEAR(avg, 8.65, 0.005);
}

TEST(Red, NeverDropsBelowMinThreshold) {
  BufferPolicy policy = Policy(Discipline::kRed, 40);
  policy.red = RedParams{5, 15, 1.0, 1.0};  // average = instantaneous occupancy
  RedQueue q(policy, Rng(1));
  for (int i = 0; i < 6; ++i) EXPECT_TRUE(q.Enqueue(Pkt(i), SimTime::Zero()).accepted()) << i;
  EXPECT_DOUBLE_EQ(q.average(), 5.0);
}

TEST(Red, DropsEverythingAtOrAboveMaxThreshold) {
  BufferPolicy policy = Policy(Discipline::kRed, 40);
  policy.red = RedParams{5, 15, 0.5, 1.0};
  RedQueue q(policy, Rng(1));
  while (q.packets() < 15) {
    q.Enqueue(Pkt(q.packets()), SimTime::Zero());
  }
  for (int i = 0; i < 100; ++i) {
    const auto r = q.Enqueue(Pkt(100 + i), SimTime::Zero());
    ASSERT_FALSE(r.accepted());
    EXPECT_EQ(*r.drop, DropReason::kRedEarly);
  }
}

TEST(Red, MidpointDropRateMatchesProfile) {
  BufferPolicy policy = Policy(Discipline::kRed, 40);
  policy.red = RedParams{5, 15, 0.2, 1.0};
  RedQueue q(policy, Rng(77));
  while (q.packets() < 10) q.Enqueue(Pkt(q.packets()), SimTime::Zero());
  // Hold occupancy at 10: every accepted arrival is followed by a departure.
  int drops = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    if (q.Enqueue(Pkt(100 + i), SimTime::Zero()).accepted()) {
      q.Dequeue();
    } else {
      ++drops;
    }
  }
  // Expected 0.1 drop probability; 4 standard deviations of a binomial.
  EXPECT_NEAR(static_cast<double>(drops) / n, 0.1, 4 * std::sqrt(0.09 / n));
}

TEST(Red, DegeneratesToDropTail) {
  // Thresholds squeezed against the capacity with max_p = 1 and an
  // instantaneous average: RED drops exactly when drop-tail would.
  std::vector<FlowStream> flows;
  for (int f = 0; f < 3; ++f) {
    Rng rng = DeriveStream(12, 0, "f" + std::to_string(f));
    flows.push_back({"f" + std::to_string(f),
                     GenerateBurst({20, 1500, 0.1, 0.03}, SimTime::FromSeconds(20),
                                   SimTime::FromMillis(f * 13), rng)});
  }
  BufferPolicy drop_tail = Policy(Discipline::kDropTail, 25);
  BufferPolicy red = Policy(Discipline::kRed, 25);
  red.red = RedParams{25 - 1e-6, 25, 1.0, 1.0};
  const SimWindow window{SimTime::FromSeconds(1), SimTime::FromSeconds(20)};
  const SimResult a = Simulate({100e6, 4e6}, drop_tail, flows, window, Rng(1));
  const SimResult b = Simulate({100e6, 4e6}, red, flows, window, Rng(1));
  ASSERT_GT(a.TotalDropped(), 0U);
  for (std::size_t f = 0; f < flows.size(); ++f) {
    EXPECT_EQ(a.flows[f].dropped, b.flows[f].dropped);
    EXPECT_EQ(a.flows[f].delivered, b.flows[f].delivered);
  }
}

TEST(Red, EarlyDropsAreTaggedInRuns) {
  std::vector<FlowStream> flows;
  Rng rng(4);
  flows.push_back({"cam", GenerateBurst({30, 1500, 0.1, 0.02}, SimTime::FromSeconds(20),
                                        SimTime::Zero(), rng)});
  BufferPolicy red = Policy(Discipline::kRed, 60);
  red.red = RedParams{5, 30, 0.1, 0.02};
  const SimResult r = Simulate({100e6, 4e6}, red, flows,
                               {SimTime::Zero(), SimTime::FromSeconds(20)}, Rng(1));
  EXPECT_GT(r.flows[0].dropped_early, 0U);
  EXPECT_EQ(r.flows[0].dropped, r.flows[0].dropped_early + r.flows[0].dropped_full);
}

TEST(BufferPolicy, InvariantsAreChecked) {
  EXPECT_THROW(CheckBufferPolicy(Policy(Discipline::kDropTail, 0)), std::invalid_argument);
  BufferPolicy red_without_params = Policy(Discipline::kDropTail, 10);
  red_without_params.discipline = Discipline::kRed;
  EXPECT_THROW(CheckBufferPolicy(red_without_params), std::invalid_argument);
  BufferPolicy bad_thresholds = Policy(Discipline::kRed, 10);
  bad_thresholds.red = RedParams{8, 6, 0.1, 0.002};
  EXPECT_THROW(CheckBufferPolicy(bad_thresholds), std::invalid_argument);
  BufferPolicy above_capacity = Policy(Discipline::kRed, 10);
  above_capacity.red = RedParams{5, 15, 0.1, 0.002};
  EXPECT_THROW(CheckBufferPolicy(above_capacity), std::invalid_argument);
  BufferPolicy stray_red = Policy(Discipline::kDropTail, 10);
  stray_red.red = RedParams{};
  EXPECT_THROW(CheckBufferPolicy(stray_red), std::invalid_argument);
  EXPECT_NO_THROW(CheckBufferPolicy(Policy(Discipline::kRed, 40)));
}

TEST(BufferPolicy, NamesRoundTrip) {
  for (auto d : {Discipline::kDropTail, Discipline::kFifoFast, Discipline::kRed}) {
    EXPECT_EQ(ParseDiscipline(DisciplineName(d)), d);
  }
  for (auto m : {CapacityMode::kPackets, CapacityMode::kBytes}) {
    EXPECT_EQ(ParseCapacityMode(CapacityModeName(m)), m);
  }
  EXPECT_FALSE(ParseDiscipline("codel"));
}

}  // namespace
}  // namespace accessq
