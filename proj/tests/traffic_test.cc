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
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "accessq/traffic.h"

namespace accessq {
namespace {

FlowSpec MakeFlow(std::string id, FlowParams params) {
  FlowSpec f;
  f.id = std::move(id);
  f.params = std::move(params);
  return f;
}

double StreamBitrate(const PacketStream& s, double seconds) {
  double bytes = 0;
  for (const auto& p : s) bytes += p.size;
  return bytes * 8.0 / seconds;
}

TEST(Cbr, VoipProfileOverAMinute) {
  const auto s = GenerateCbr({60, SimTime::FromMillis(20)}, SimTime::FromSeconds(60), SimTime::Zero());
  EXPECT_EQ(s.size(), 3000U);
  EXPECT_DOUBLE_EQ(StreamBitrate(s, 60.0), 24000.0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_EQ(s[k].created.nanos(), static_cast<std::int64_t>(k) * 20'000'000);
    EXPECT_EQ(s[k].size, 60U);
  }
}

TEST(Cbr, DurationOfOneIntervalGivesOnePacketAtTheOffset) {
  const auto s = GenerateCbr({60, SimTime::FromMillis(20)}, SimTime::FromMillis(20),
                             SimTime::FromSeconds(3));
  ASSERT_EQ(s.size(), 1U);
  EXPECT_EQ(s[0].created, SimTime::FromSeconds(3));
}

TEST(Cbr, TenMegabitSourceForOneSecond) {
  const auto s = GenerateCbr({1500, SimTime::FromMicros(1200)}, SimTime::FromSeconds(1), SimTime::Zero());
  EXPECT_EQ(s.size(), 834U);
  EXPECT_DOUBLE_EQ(1500 * 8 / 1.2e-3, 10e6);
}

TEST(Cbr, RejectsNonPositiveDuration) {
  EXPECT_THROW(GenerateCbr({60, SimTime::FromMillis(20)}, SimTime::Zero(), SimTime::Zero()),
               std::invalid_argument);
}

TEST(Burst, CameraProfileOverAMinute) {
  const BurstParams cam;  // 26 x 1500 B, 0.278 s +/- 0.06 s
  double bursts = 0;
  double rate = 0;
  const int runs = 50;
  for (int i = 0; i < runs; ++i) {
    Rng rng = DeriveStream(42, static_cast<std::uint32_t>(i), "cam");
    const auto s = GenerateBurst(cam, SimTime::FromSeconds(60), SimTime::Zero(), rng);
    ASSERT_EQ(s.size() % 26, 0U);
    bursts += static_cast<double>(s.size()) / 26.0;
    rate += StreamBitrate(s, 60.0);
  }
  // 60 / 0.278 = 215.8 bursts; rate 26 * 1500 * 8 / 0.278 = 1.1223 Mbps.
  EXPECT_NEAR(bursts / runs, 216.3, 1.5);
  EXPECT_NEAR(rate / runs, 1.1223e6, 0.02e6);
}

TEST(Burst, EveryBurstIsCompleteAndSharesItsInstant) {
  Rng rng(3);
  const BurstParams cam{7, 900, 0.05, 0.01};
  const auto s = GenerateBurst(cam, SimTime::FromSeconds(5), SimTime::FromMillis(10), rng);
  std::map<std::int64_t, int> per_instant;
  for (const auto& p : s) {
    ++per_instant[p.created.nanos()];
    EXPECT_EQ(p.size, 900U);
  }
  for (const auto& [t, n] : per_instant) EXPECT_EQ(n, 7) << t;
  EXPECT_EQ(s.front().created, SimTime::FromMillis(10));
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(s[i - 1].created, s[i].created);
}

TEST(Burst, ZeroStddevIsPeriodic) {
  Rng rng(1);
  const BurstParams cam{2, 100, 0.25, 0.0};
  const auto s = GenerateBurst(cam, SimTime::FromSeconds(1), SimTime::Zero(), rng);
  ASSERT_EQ(s.size(), 8U);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].created.nanos(), static_cast<std::int64_t>(i / 2) * 250'000'000);
  }
}

TEST(Burst, SamplerMeanOverTenThousandDraws) {
  const BurstParams cam;
  Rng rng(2024);
  double sum = 0, sq = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double g = SampleInterBurstGap(cam, rng).seconds();
    EXPECT_GE(g, 1e-3);
    sum += g;
    sq += g * g;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.278, 3 * 0.06 / 100);
  EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 0.06, 0.003);
}

TEST(Burst, TruncationNeverReturnsTinyGaps) {
  // Half of this normal lies below zero; every draw must still be >= 1 ms.
  const BurstParams wide{1, 100, 0.001, 0.01};
  Rng rng(5);
  for (int i = 0; i < 5000; ++i) EXPECT_GE(SampleInterBurstGap(wide, rng), kMinInterBurstGap);
}

TEST(BurstSizeForCompression, MeasuredPairs) {
  EXPECT_EQ(BurstSizeForCompression("704x576", 32), 26);
  EXPECT_EQ(BurstSizeForCompression("704x576", 50), 41);
  EXPECT_EQ(BurstSizeForCompression("704x576", 16), 10);
  EXPECT_EQ(BurstSizeForCompression("352x288", 13), 9);
  EXPECT_EQ(BurstSizeForCompression("352x288", 4), 3);
  EXPECT_THROW(BurstSizeForCompression("352x288", 32), std::out_of_range);
  EXPECT_THROW(BurstSizeForCompression("1920x1080", 50), std::out_of_range);
}

TraceParams InlineTrace(const std::string& text, std::optional<double> loop = std::nullopt) {
  std::istringstream in(text);
  TraceParams p;
  p.path = "<inline>";
  p.loop_period = loop;
  p.data = std::make_shared<const Trace>(ParseTrace(in, "<inline>"));
  return p;
}

TEST(Trace, ShiftedByOffset) {
  const auto p = InlineTrace("0.0 1500\n0.1 200\n", 10.0);
  const auto s = GenerateTrace(p, SimTime::FromSeconds(2), SimTime::FromSeconds(1));
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s[0].created, SimTime::FromSeconds(1.0));
  EXPECT_EQ(s[0].size, 1500U);
  EXPECT_EQ(s[1].created, SimTime::FromSeconds(1.1));
  EXPECT_EQ(s[1].size, 200U);
}

TEST(Trace, TwoSecondTraceLoopsTwoAndAHalfTimesInFive) {
  // Four evenly spaced packets; the default loop period is 2 s.
  const auto p = InlineTrace("0 100\n0.5 100\n1.0 100\n1.5 100\n");
  EXPECT_DOUBLE_EQ(p.data->DefaultLoopPeriod(), 2.0);
  const auto s = GenerateTrace(p, SimTime::FromSeconds(5), SimTime::Zero());
  ASSERT_EQ(s.size(), 10U);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].created.nanos(), static_cast<std::int64_t>(i) * 500'000'000);
  }
}

TEST(Trace, TimeScaleStretchesTheTimeline) {
  auto p = InlineTrace("0 100\n0.5 100\n", 1.0);
  p.time_scale = 2.0;
  const auto s = GenerateTrace(p, SimTime::FromSeconds(4), SimTime::Zero());
  ASSERT_EQ(s.size(), 4U);
  EXPECT_EQ(s[1].created, SimTime::FromSeconds(1));
  EXPECT_EQ(s[2].created, SimTime::FromSeconds(2));
}

TEST(Trace, CommentsBlankLinesAndClasses) {
  const auto p = InlineTrace("# header\n\n0.0 60 0  # voice\n0.02 60\n");
  ASSERT_EQ(p.data->records.size(), 2U);
  EXPECT_EQ(p.data->records[0].traffic_class, TrafficClass{0});
  EXPECT_FALSE(p.data->records[1].traffic_class.has_value());
  const auto s = GenerateTrace(p, SimTime::FromMillis(30), SimTime::Zero(), 2);
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s[0].traffic_class, 0);
  EXPECT_EQ(s[1].traffic_class, 2);
}

int ParseErrorLine(const std::string& text) {
  std::istringstream in(text);
  try {
    ParseTrace(in, "t");
  } catch (const TraceParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Trace, MalformedLinesReportTheirLineNumber) {
  EXPECT_EQ(ParseErrorLine("0 100\nabc 100\n"), 2);
  EXPECT_EQ(ParseErrorLine("0 100\n# c\n0.1\n"), 3);
  EXPECT_EQ(ParseErrorLine("0 0\n"), 1);
  EXPECT_EQ(ParseErrorLine("0 100\n0.5 100 7\n"), 2);
  EXPECT_EQ(ParseErrorLine("1.0 100\n0.5 100\n"), 2);
  EXPECT_EQ(ParseErrorLine("0 100 1 extra\n"), 1);
  EXPECT_EQ(ParseErrorLine("-1 100\n"), 1);
  EXPECT_EQ(ParseErrorLine("0 100\n"), -1);
}

TEST(Trace, MissingFileThrows) {
  EXPECT_THROW(LoadTrace("/nonexistent/trace.txt"), std::runtime_error);
}

TEST(Trace, ReplayIsLosslessThroughWriteTrace) {
  Rng rng(8);
  const SyntheticVideoParams video{1.5e6, SimTime::FromNanos(33333333), 0.4, 1500};
  const auto original = GenerateSyntheticVideo(video, SimTime::FromSeconds(3), SimTime::FromSeconds(2), rng);
  std::stringstream text;
  WriteTrace(text, original, SimTime::FromSeconds(2), true);
  TraceParams p;
  p.data = std::make_shared<const Trace>(ParseTrace(text));
  p.loop_period = 100.0;
  const auto replay = GenerateTrace(p, SimTime::FromSeconds(3), SimTime::FromSeconds(2));
  ASSERT_EQ(replay.size(), original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    EXPECT_EQ(replay[i].created, original[i].created) << i;
    EXPECT_EQ(replay[i].size, original[i].size) << i;
  }
}

TEST(Trace, SyntheticVideoTraceKeepsItsBitrateWhenReplayed) {
  Rng rng(9);
  const SyntheticVideoParams video{1.5e6, SimTime::FromNanos(33333333), 0.4, 1500};
  const auto gen = GenerateSyntheticVideo(video, SimTime::FromSeconds(20), SimTime::Zero(), rng);
  const auto path = std::filesystem::temp_directory_path() / "accessq_video_trace.txt";
  {
    std::ofstream out(path);
    WriteTrace(out, gen);
  }
  FlowSpec flow = MakeFlow("v", TraceParams{path.string(), 1.0, std::nullopt, nullptr});
  LoadTraceInto(std::get<TraceParams>(flow.params));
  EXPECT_NEAR(GeneratorMeanRate(flow), 1.5e6, 0.05 * 1.5e6);
  const auto replay =
      GenerateTrace(std::get<TraceParams>(flow.params), SimTime::FromSeconds(60), SimTime::Zero());
  EXPECT_NEAR(StreamBitrate(replay, 60.0), 1.5e6, 0.05 * 1.5e6);
  std::filesystem::remove(path);
}

TEST(SyntheticVideo, ConstantFramesFragmentIntoFourFullPacketsAndARemainder) {
  Rng rng(1);
  const SyntheticVideoParams video{1.5e6, SimTime::FromNanos(33333333), 0.0, 1500};
  const auto s = GenerateSyntheticVideo(video, SimTime::FromSeconds(1), SimTime::Zero(), rng);
  // 1.5e6 * 0.033333333 / 8 = 6249.99994 B, rounded to 6250 = 4 * 1500 + 250.
  ASSERT_EQ(s.size() % 5, 0U);
  // 30 frame intervals end at 999999990 ns, so a 31st frame still starts inside the second.
  EXPECT_EQ(s.size() / 5, 31U);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].size, i % 5 == 4 ? 250U : 1500U);
    EXPECT_EQ(s[i].created, s[i - i % 5].created);
  }
}

TEST(SyntheticVideo, OneFrameDurationGivesOneMiniBurst) {
  Rng rng(1);
  const SyntheticVideoParams video{1.5e6, SimTime::FromNanos(33333333), 0.0, 1500};
  const auto s = GenerateSyntheticVideo(video, SimTime::FromNanos(33333333), SimTime::FromSeconds(1), rng);
  ASSERT_EQ(s.size(), 5U);
  for (const auto& p : s) EXPECT_EQ(p.created, SimTime::FromSeconds(1));
}

TEST(SyntheticVideo, LongRunBitrateWithVariableFrames) {
  for (std::uint32_t rep = 0; rep < 5; ++rep) {
    Rng rng = DeriveStream(1, rep, "video");
    const SyntheticVideoParams video{1.5e6, SimTime::FromNanos(33333333), 0.4, 1500};
    const auto s = GenerateSyntheticVideo(video, SimTime::FromSeconds(60), SimTime::Zero(), rng);
    EXPECT_NEAR(StreamBitrate(s, 60.0), 1.5e6, 0.05 * 1.5e6);
  }
}

TEST(GenerateFlow, StochasticKindsAreReproducibleFromTheSameStream) {
  FlowSpec cam = MakeFlow("cam", BurstParams{});
  Rng a = DeriveStream(5, 2, "cam");
  Rng b = DeriveStream(5, 2, "cam");
  EXPECT_EQ(GenerateFlow(cam, SimTime::FromSeconds(10), SimTime::Zero(), a),
            GenerateFlow(cam, SimTime::FromSeconds(10), SimTime::Zero(), b));
  Rng c = DeriveStream(5, 3, "cam");
  Rng d = DeriveStream(5, 2, "cam2");
  const auto base = GenerateFlow(cam, SimTime::FromSeconds(10), SimTime::Zero(), a);
  EXPECT_NE(GenerateFlow(cam, SimTime::FromSeconds(10), SimTime::Zero(), c), base);
  EXPECT_NE(GenerateFlow(cam, SimTime::FromSeconds(10), SimTime::Zero(), d), base);
}

TEST(GenerateFlow, UsesTheFlowClass) {
  FlowSpec voip = MakeFlow("v", CbrParams{});
  voip.traffic_class = 0;
  Rng rng(1);
  for (const auto& p : GenerateFlow(voip, SimTime::FromSeconds(1), SimTime::Zero(), rng)) {
    EXPECT_EQ(p.traffic_class, 0);
  }
}

TEST(FlowKind, NamesRoundTrip) {
  for (auto k : {FlowKind::kCbr, FlowKind::kBurst, FlowKind::kTrace, FlowKind::kSyntheticVideo}) {
    EXPECT_EQ(ParseFlowKind(FlowKindName(k)), k);
  }
  EXPECT_FALSE(ParseFlowKind("poisson"));
}

}  // namespace
}  // namespace accessq
