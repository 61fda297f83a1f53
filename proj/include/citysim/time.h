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

#ifndef CITYSIM_TIME_H_
#define CITYSIM_TIME_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace citysim {

// Tag clock for the simulator's virtual timeline. Never read from; it only
// gives VirtualTime a distinct type.
struct SimClock {
  using duration = std::chrono::milliseconds;
  using rep = duration::rep;
  using period = duration::period;
  using time_point = std::chrono::time_point<SimClock, duration>;
  static constexpr bool is_steady = true;
};

using Millis = std::chrono::milliseconds;
using VirtualTime = SimClock::time_point;

constexpr VirtualTime AtMillis(std::int64_t ms) { return VirtualTime{Millis{ms}}; }
constexpr std::int64_t ToMillis(VirtualTime t) {
  return t.time_since_epoch().count();
}

// Calendar instant mapped to VirtualTime zero.
using Epoch = std::chrono::sys_time<Millis>;

// Accepts "YYYY-MM-DDTHH:MM:SS[.mmm][Z]" (space also accepted as separator).
// Throws Error(kConfigError) on anything else.
Epoch ParseEpoch(std::string_view text);
std::string FormatEpoch(Epoch epoch);

// "YYYY-MM-DD" and "HH:MM:SS.mmm" of epoch + at.
std::string FormatDate(Epoch epoch, VirtualTime at);
std::string FormatTimeOfDay(Epoch epoch, VirtualTime at);

inline constexpr std::string_view kDefaultEpoch = "2021-06-01T00:00:00Z";

struct SimConfig {
  Epoch epoch = ParseEpoch(kDefaultEpoch);
  std::uint64_t seed = 0;
};

}  // namespace citysim

#endif  // CITYSIM_TIME_H_
