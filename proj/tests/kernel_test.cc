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

#include "citysim/kernel.h"

#include <gtest/gtest.h>

#include "support/test_support.h"

namespace citysim {
namespace {

using testing::RecordingDevice;

TEST(KernelTest, DispatchesInTimeThenInsertionOrder) {
  Kernel kernel;
  RecordingDevice a("a");
  RecordingDevice b("b");
  kernel.Register(a);
  kernel.Register(b);

  kernel.Schedule(AtMillis(300), "a", Stimulus{"third", {}});
  kernel.Schedule(AtMillis(100), "b", Stimulus{"first", {}});
  kernel.Schedule(AtMillis(100), "a", Stimulus{"second", {}});
  kernel.RunUntil(AtMillis(1000));

  ASSERT_EQ(kernel.transcript().size(), 3u);
  EXPECT_EQ(kernel.TranscriptText(),
            "100,2,b,stimulus\n"
            "100,3,a,stimulus\n"
            "300,1,a,stimulus\n");
  EXPECT_EQ(std::get<Stimulus>(a.seen()[0].payload).name, "second");
  EXPECT_EQ(kernel.now(), AtMillis(1000));
}

TEST(KernelTest, RunUntilStopsAtBoundaryInclusive) {
  Kernel kernel;
  RecordingDevice a("a");
  kernel.Register(a);
  kernel.Schedule(AtMillis(500), "a", Stimulus{"x", {}});
  kernel.Schedule(AtMillis(501), "a", Stimulus{"y", {}});

  EXPECT_EQ(kernel.RunUntil(AtMillis(500)), 1u);
  EXPECT_EQ(kernel.now(), AtMillis(500));
  EXPECT_EQ(kernel.pending(), 1u);
  EXPECT_EQ(kernel.NextEventTime(), AtMillis(501));
}

TEST(KernelTest, RejectsPastTimestamps) {
  Kernel kernel;
  kernel.RunUntil(AtMillis(2000));
  try {
    kernel.Schedule(AtMillis(1999), "a", Stimulus{"late", {}});
    FAIL() << "expected past-timestamp";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPastTimestamp);
  }
  EXPECT_NO_THROW(kernel.Schedule(AtMillis(2000), "a", Stimulus{"now", {}}));
}

TEST(KernelTest, UnknownTargetIsDroppedWithoutMovingClock) {
  Kernel kernel;
  kernel.Schedule(AtMillis(10), "ghost", Stimulus{"boo", {}});
  try {
    kernel.Step();
    FAIL() << "expected unknown-target";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownTarget);
  }
  EXPECT_EQ(kernel.now(), AtMillis(0));
  EXPECT_EQ(kernel.pending(), 0u);
  EXPECT_TRUE(kernel.transcript().empty());
}

TEST(KernelTest, EventsScheduledDuringDispatchAtSameInstantRunAfter) {
  Kernel kernel;
  RecordingDevice a("a");
  RecordingDevice b("b");
  kernel.Register(a);
  kernel.Register(b);
  a.on_event = [&kernel](const SimEvent& e) {
    const auto* stimulus = std::get_if<Stimulus>(&e.payload);
    if (stimulus != nullptr && stimulus->name == "ping") {
      kernel.Schedule(e.at, "a", TimerExpiry{"echo", 1});
    }
  };
  kernel.Schedule(AtMillis(50), "a", Stimulus{"ping", {}});
  kernel.Schedule(AtMillis(50), "b", Stimulus{"other", {}});
  kernel.RunUntil(AtMillis(50));

  EXPECT_EQ(kernel.TranscriptText(),
            "50,1,a,stimulus\n"
            "50,2,b,stimulus\n"
            "50,3,a,timer-expiry\n");
}

TEST(KernelTest, DeviceErrorsBecomeDiagnostics) {
  Kernel kernel;
  RecordingDevice a("a");
  a.on_event = [](const SimEvent&) {
    throw Error(ErrorCode::kOutOfRange, "reading too hot");
  };
  kernel.Register(a);
  kernel.Schedule(AtMillis(7), "a", Stimulus{"sample", {}});
  kernel.Schedule(AtMillis(8), "a", Stimulus{"sample", {}});
  kernel.RunUntil(AtMillis(10));

  ASSERT_EQ(kernel.diagnostics().size(), 2u);
  EXPECT_EQ(kernel.diagnostics()[0].at, AtMillis(7));
  EXPECT_EQ(kernel.diagnostics()[0].code, ErrorCode::kOutOfRange);
  EXPECT_EQ(kernel.transcript().size(), 2u);
}

TEST(KernelTest, ObserversSeeEveryDispatch) {
  Kernel kernel;
  RecordingDevice a("a");
  kernel.Register(a);
  std::vector<std::uint64_t> seqs;
  kernel.AddDispatchObserver([&seqs](const SimEvent& e) { seqs.push_back(e.seq); });
  kernel.Schedule(AtMillis(3), "a", Stimulus{"x", {}});
  kernel.Schedule(AtMillis(1), "a", Stimulus{"y", {}});
  kernel.RunUntil(AtMillis(5));
  EXPECT_EQ(seqs, (std::vector<std::uint64_t>{2, 1}));
}

TEST(KernelTest, PayloadKindsInTranscript) {
  Kernel kernel;
  RecordingDevice a("a");
  kernel.Register(a);
  kernel.Schedule(AtMillis(1), "a", FrameDelivery{"link", SerialBytes{"H"}});
  kernel.Schedule(AtMillis(2), "a", TimerExpiry{"t", 9});
  kernel.RunUntil(AtMillis(2));
  EXPECT_EQ(kernel.TranscriptText(),
            "1,1,a,frame-delivery\n"
            "2,2,a,timer-expiry\n");
}

TEST(KernelTest, DuplicateRegistrationIsRejected) {
  Kernel kernel;
  RecordingDevice a("a");
  RecordingDevice again("a");
  kernel.Register(a);
  EXPECT_THROW(kernel.Register(again), Error);
  kernel.Unregister("a");
  EXPECT_FALSE(kernel.IsRegistered("a"));
}

TEST(TimeTest, EpochRoundTripAndTelemetryClock) {
  const Epoch epoch = ParseEpoch("2021-06-01T23:59:59.500Z");
  EXPECT_EQ(FormatEpoch(epoch), "2021-06-01T23:59:59.500Z");
  EXPECT_EQ(FormatDate(epoch, AtMillis(499)), "2021-06-01");
  EXPECT_EQ(FormatDate(epoch, AtMillis(500)), "2021-06-02");
  EXPECT_EQ(FormatTimeOfDay(epoch, AtMillis(1750)), "00:00:01.250");
  EXPECT_THROW(ParseEpoch("June 1st"), Error);
  EXPECT_THROW(ParseEpoch("2021-13-01T00:00:00Z"), Error);
}

}  // namespace
}  // namespace citysim
