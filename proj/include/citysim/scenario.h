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

#ifndef CITYSIM_SCENARIO_H_
#define CITYSIM_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/city.h"

namespace citysim {

// Scenario files are line-delimited JSON. Each non-blank line not starting
// with '#' is one of:
//
//   {"config": {...}}                                    (at most once)
//   {"at_ms": 0, "target": "streetlight", "event": "command", "byte": "H"}
//   {"at_ms": 5000, "assert": "traffic.green", "expected": 1}
//
// A step may carry "submitted_ms": it is then handed to the kernel only once
// virtual time reaches that instant (recorded live sessions use this).
// Steps without it are all scheduled before the run starts.

struct ScenarioStep {
  std::int64_t at_ms = 0;
  std::int64_t submitted_ms = 0;
  std::string target;
  std::string event;
  Json args = Json::object();
  int line = 0;
};

struct ScenarioAssertion {
  std::int64_t at_ms = 0;
  std::string query;
  Json expected;
  int line = 0;
};

struct Scenario {
  CityConfig config;
  std::vector<ScenarioStep> steps;  // stably sorted by at_ms
  std::vector<ScenarioAssertion> assertions;
  std::vector<std::string> warnings;
};

class ScenarioError : public Error {
 public:
  ScenarioError(ErrorCode code, int line, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Throws ScenarioError (kParseError, kUnknownTarget, ...) naming the line.
Scenario ParseScenario(std::string_view text);
Scenario LoadScenario(const std::filesystem::path& path);

struct AssertionOutcome {
  ScenarioAssertion assertion;
  Json actual;
  bool passed = false;
  std::string error;  // set when the query itself failed
};

AssertionOutcome CheckAssertion(const City& city,
                                const ScenarioAssertion& assertion);
// "PASS|FAIL line N at T ms: query expected X, actual Y".
std::string DescribeOutcome(const AssertionOutcome& outcome);

struct RunOptions {
  std::optional<std::int64_t> until_ms;
  std::optional<Epoch> epoch;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  std::vector<AssertionOutcome> outcomes;
  std::size_t failures = 0;
  std::int64_t end_ms = 0;

  int exit_code() const { return failures == 0 ? 0 : 1; }
};

// Replays a scenario on a fresh City. The horizon is the latest step,
// assertion or --until-ms instant; assertions see the state after every
// event at or before their instant.
class ScenarioRunner {
 public:
  explicit ScenarioRunner(const Scenario& scenario, RunOptions options = {});

  RunResult Run();

  City& city() { return *city_; }
  const City& city() const { return *city_; }

  // telemetry CSVs, telemetry.json, transcript.csv, sms_inbox.json.
  void WriteExports(const std::filesystem::path& directory) const;

 private:
  const Scenario& scenario_;
  RunOptions options_;
  std::unique_ptr<City> city_;
};

}  // namespace citysim

#endif  // CITYSIM_SCENARIO_H_
