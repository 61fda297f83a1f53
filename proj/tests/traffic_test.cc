// Copyright (C) 2026 The citysim Authors
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

#include "citysim/traffic.h"

#include <gtest/gtest.h>

#include "support/traffic_reference.h"

namespace citysim {
namespace {

using testing::GreenGrant;
using testing::PresenceReport;

class TrafficTest : public ::testing::Test {
 protected:
  TrafficTest() : telemetry_(kernel_.config().epoch), traffic_(kernel_, telemetry_) {
    kernel_.Register(traffic_);
  }

  void Report(std::int64_t at, int road, bool present) {
    kernel_.Schedule(AtMillis(at), std::string(TrafficController::kId),
                     Stimulus{"presence", Json{{"road", road}, {"present", present}}});
  }

  Kernel kernel_;
  Telemetry telemetry_;
  TrafficController traffic_;
};

TEST_F(TrafficTest, IdleJunctionIsDark) {
  kernel_.RunUntil(AtMillis(60000));
  for (int road = 1; road <= 4; ++road) EXPECT_EQ(traffic_.signal(road), Signal::kOff);
  EXPECT_EQ(traffic_.countdown(kernel_.now()), Millis{0});
}

TEST_F(TrafficTest, FirstArrivalGetsGreenImmediately) {
  Report(3000, 3, true);
  kernel_.RunUntil(AtMillis(3000));
  EXPECT_EQ(traffic_.green_road(), 3);
  EXPECT_EQ(traffic_.signal(1), Signal::kRed);
  EXPECT_EQ(traffic_.countdown(AtMillis(10000)), Millis{13000});
}

TEST_F(TrafficTest, RoadsOneAndFourAlternate) {
  Report(0, 1, true);
  Report(0, 4, true);
  kernel_.RunUntil(AtMillis(79999));
  EXPECT_EQ(traffic_.green_history(), (std::vector<int>{1, 4, 1, 4}));
  ASSERT_EQ(traffic_.green_starts().size(), 4u);
  EXPECT_EQ(traffic_.green_starts()[3].second, AtMillis(60000));
}

TEST_F(TrafficTest, SingleBusyRoadLoops) {
  Report(0, 2, true);
  kernel_.RunUntil(AtMillis(100000));
  EXPECT_EQ(traffic_.green_history(), (std::vector<int>{2, 2, 2, 2, 2, 2}));
}

TEST_F(TrafficTest, AllRoadsBusyIsStrictRoundRobin) {
  for (int road = 1; road <= 4; ++road) Report(0, road, true);
  kernel_.RunUntil(AtMillis(140000));
  EXPECT_EQ(traffic_.green_history(), (std::vector<int>{1, 2, 3, 4, 1, 2, 3, 4}));
}

TEST_F(TrafficTest, ClearingMidGreenStillServesFullInterval) {
  Report(0, 1, true);
  Report(5000, 1, false);
  kernel_.RunUntil(AtMillis(19999));
  EXPECT_EQ(traffic_.green_road(), 1);
  kernel_.RunUntil(AtMillis(20000));
  EXPECT_EQ(traffic_.green_road(), 0);
  EXPECT_EQ(traffic_.signal(1), Signal::kOff);
}

TEST_F(TrafficTest, ArrivalAtPhaseBoundaryIsSeen) {
  Report(0, 1, true);
  Report(20000, 1, false);
  Report(20000, 3, true);
  kernel_.RunUntil(AtMillis(20000));
  EXPECT_EQ(traffic_.green_road(), 3);
}

TEST_F(TrafficTest, RowsPerSignalChange) {
  Report(0, 2, true);
  kernel_.RunUntil(AtMillis(0));
  const auto& rows = telemetry_.rows(Table::kTraffic);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].values, (std::vector<std::string>{"2", "GREEN"}));
  EXPECT_EQ(rows[0].values, (std::vector<std::string>{"1", "RED"}));
}

TEST_F(TrafficTest, InvalidRoad) {
  try {
    traffic_.OnApproachPresence(5, true, AtMillis(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRoad);
  }
}

TEST_F(TrafficTest, GreenOverrideHook) {
  traffic_.SetGreenDuration(1, Millis{30000});
  Report(0, 1, true);
  Report(0, 2, true);
  kernel_.RunUntil(AtMillis(30000));
  EXPECT_EQ(traffic_.green_history(), (std::vector<int>{1, 2}));
}

TEST(PlateTest, NormalizeAndRegister) {
  EXPECT_EQ(NormalizePlate("  Lhr   786 "), "LHR 786");
  PlateRegistry registry;
  EXPECT_EQ(registry.Register("Lhr 786", "X", PlateStatus::kRegistered).plate, "LHR 786");
  EXPECT_EQ(registry.Register("ABC1", "Y", PlateStatus::kRegistered).plate, "ABC1");
  try {
    registry.Register("lhr 786", "Z", PlateStatus::kRegistered);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicatePlate);
  }
  EXPECT_NE(registry.Find("LHR  786"), nullptr);
}

TEST(PlateTest, Verdicts) {
  Kernel kernel;
  Telemetry telemetry(kernel.config().epoch);
  TrafficController traffic(kernel, telemetry);
  traffic.RegisterPlate("Lhr 786", "Owner", PlateStatus::kRegistered);
  traffic.RegisterPlate("BAD 1", "Crook", PlateStatus::kCriminal);

  const PlateResult ok = traffic.OnPlateRead(1, "Lhr 786", AtMillis(0));
  EXPECT_EQ(ok.verdict, PlateVerdict::kRegistered);
  ASSERT_TRUE(ok.record);
  EXPECT_EQ(ok.record->owner, "Owner");
  EXPECT_FALSE(traffic.plate_alarm());

  EXPECT_EQ(traffic.OnPlateRead(2, "ZZZ999", AtMillis(1)).verdict, PlateVerdict::kUnregistered);
  EXPECT_TRUE(traffic.plate_alarm());
  traffic.ResetPlateAlarm();
  EXPECT_EQ(traffic.OnPlateRead(3, "bad 1", AtMillis(2)).verdict, PlateVerdict::kCriminal);
  EXPECT_TRUE(traffic.plate_alarm());

  const auto& rows = telemetry.rows(Table::kPlate);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].values, (std::vector<std::string>{"2", "ZZZ999", "unregistered"}));
  EXPECT_THROW(traffic.OnPlateRead(1, "   ", AtMillis(3)), Error);
}

TEST(TrafficReferenceTest, HandWorkedSchedules) {
  // [T,F,F,T] from the start.
  EXPECT_EQ(testing::ReferenceGreens({{0, 1, true}, {0, 4, true}}, 79999),
            (std::vector<GreenGrant>{{1, 0}, {4, 20000}, {1, 40000}, {4, 60000}}));
  // Road 2 alone, then it empties during its second green.
  EXPECT_EQ(testing::ReferenceGreens({{100, 2, true}, {30000, 2, false}}, 100000),
            (std::vector<GreenGrant>{{2, 100}, {2, 20100}}));
  // A late arrival on a dark junction.
  EXPECT_EQ(testing::ReferenceGreens({{0, 3, true}, {1, 3, false}, {50000, 1, true}}, 60000),
            (std::vector<GreenGrant>{{3, 0}, {1, 50000}}));
}

TEST(TrafficPropertyTest, MatchesReferenceOnRandomSchedules) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto reports = testing::RandomPresenceSchedule(seed);
    const std::int64_t horizon = reports.back().at_ms + 60000;
    const auto run = testing::SimulateTraffic(reports, horizon);
    ASSERT_EQ(run.grants, testing::ReferenceGreens(reports, horizon)) << "seed " << seed;
    EXPECT_LE(run.max_greens, 1) << "seed " << seed;
    EXPECT_EQ(run.green_without_traffic, 0) << "seed " << seed;
    EXPECT_EQ(run.lit_while_dark, 0) << "seed " << seed;
  }
}

TEST(TrafficPropertyTest, PresentRoadIsServedWithinThreePhases) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto reports = testing::RandomPresenceSchedule(seed, 60);
    std::erase_if(reports, [](const PresenceReport& r) { return r.road == 3; });
    reports.insert(reports.begin(), PresenceReport{0, 3, true});
    const auto run = testing::SimulateTraffic(reports, 400000);
    std::int64_t last = -1;
    for (const auto& grant : run.grants) {
      if (grant.road != 3) continue;
      if (last >= 0) {
        EXPECT_LE(grant.at_ms - last, 4 * 20000) << "seed " << seed;
      }
      last = grant.at_ms;
    }
    EXPECT_GE(last, 0);
  }
}

}  // namespace
}  // namespace citysim
