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

#ifndef CITYSIM_TESTS_SUPPORT_TRAFFIC_REFERENCE_H_
#define CITYSIM_TESTS_SUPPORT_TRAFFIC_REFERENCE_H_

#include <cstdint>
#include <vector>


namespace citysim::testing {

struct PresenceReport {
  std::int64_t at_ms;
  int road;  // 1..4
  bool present;
};

struct GreenGrant {
  int road;
  std::int64_t at_ms;
  bool operator==(const GreenGrant&) const = default;
};

// Millisecond-by-millisecond replay of the junction rules: every report at
// an instant is applied before that instant's decision; a decision happens
// when a green interval runs out, or when the junction is dark and some
// road reports traffic. The decision walks the roads one by one after the
// last green road (wrapping, the last green road itself checked last).
std::vector<GreenGrant> ReferenceGreens(std::vector<PresenceReport> reports,
                                        std::int64_t horizon_ms,
                                        std::int64_t green_ms = 20000);

struct TrafficRun {
  std::vector<GreenGrant> grants;
  int max_greens = 0;           // most GREEN heads seen after any dispatch
  int green_without_traffic = 0;  // grants to a road with no traffic
  int lit_while_dark = 0;       // dispatches leaving a head lit with no green
};

// Feeds the reports to a real controller and watches it after every
// dispatch.
TrafficRun SimulateTraffic(const std::vector<PresenceReport>& reports,
                           std::int64_t horizon_ms);

std::vector<PresenceReport> RandomPresenceSchedule(std::uint64_t seed,
                                                   int max_events = 200);

}  // namespace citysim::testing

#endif  // CITYSIM_TESTS_SUPPORT_TRAFFIC_REFERENCE_H_
