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

#include "citysim/scenario.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "citysim/catalog.h"

namespace citysim {
namespace {

std::int64_t TimeField(const Json& object, const char* key, int line) {
  const Json& value = object.at(key);
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ScenarioError(ErrorCode::kParseError, line,
                        std::string("'") + key + "' must be a non-negative integer");
  }
  return value.get<std::int64_t>();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
}

}  // namespace

Scenario ParseScenario(std::string_view text) {
  Scenario scenario;
  bool have_config = false;
  int line_no = 0;
  std::int64_t last_step_at = 0;
  std::istringstream input{std::string(text)};
  std::string line;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    Json object;
    try {
      object = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ScenarioError(ErrorCode::kParseError, line_no, e.what());
    }
    if (!object.is_object()) {
      throw ScenarioError(ErrorCode::kParseError, line_no, "expected a JSON object");
    }

    if (object.contains("config")) {
      if (object.size() != 1) {
        throw ScenarioError(ErrorCode::kParseError, line_no,
                            "a config line holds only \"config\"");
      }
      if (have_config) {
        throw ScenarioError(ErrorCode::kParseError, line_no, "second config line");
      }
      have_config = true;
      try {
        scenario.config = ParseCityConfig(object["config"]);
      } catch (const Error& e) {
        throw ScenarioError(e.code(), line_no, e.what());
      }
      continue;
    }

    if (!object.contains("at_ms")) {
      throw ScenarioError(ErrorCode::kParseError, line_no, "missing \"at_ms\"");
    }
    const std::int64_t at_ms = TimeField(object, "at_ms", line_no);

    if (object.contains("assert")) {
      for (const auto& [key, value] : object.items()) {
        if (key != "at_ms" && key != "assert" && key != "expected") {
          throw ScenarioError(ErrorCode::kParseError, line_no,
                              "unknown assertion field '" + key + "'");
        }
      }
      if (!object["assert"].is_string() || !object.contains("expected")) {
        throw ScenarioError(ErrorCode::kParseError, line_no,
                            "assertion needs a string \"assert\" and \"expected\"");
      }
      scenario.assertions.push_back(ScenarioAssertion{
          at_ms, object["assert"].get<std::string>(), object["expected"], line_no});
      continue;
    }

    if (!object.contains("target") || !object["target"].is_string() ||
        !object.contains("event") || !object["event"].is_string()) {
      throw ScenarioError(ErrorCode::kParseError, line_no,
                          "step needs string \"target\" and \"event\"");
    }
    ScenarioStep step;
    step.at_ms = at_ms;
    step.target = object["target"].get<std::string>();
    step.event = object["event"].get<std::string>();
    step.line = line_no;
    if (object.contains("submitted_ms")) {
      step.submitted_ms = TimeField(object, "submitted_ms", line_no);
      if (step.submitted_ms > step.at_ms) {
        throw ScenarioError(ErrorCode::kParseError, line_no,
                            "submitted_ms is after at_ms");
      }
    }
    for (const auto& [key, value] : object.items()) {
      if (key != "at_ms" && key != "target" && key != "event" && key != "submitted_ms") {
        step.args[key] = value;
      }
    }
    try {
      ValidateArgs(FindEvent(step.target, step.event), step.args);
    } catch (const Error& e) {
      throw ScenarioError(e.code(), line_no, e.what());
    }
    if (at_ms < last_step_at) {
      scenario.warnings.push_back("line " + std::to_string(line_no) +
                                  ": non-monotonic time " + std::to_string(at_ms) +
                                  " ms after " + std::to_string(last_step_at) +
                                  " ms; steps re-sorted");
    }
    last_step_at = std::max(last_step_at, at_ms);
    scenario.steps.push_back(std::move(step));
  }

  std::stable_sort(scenario.steps.begin(), scenario.steps.end(),
                   [](const ScenarioStep& a, const ScenarioStep& b) {
                     return a.at_ms < b.at_ms;
                   });
  std::stable_sort(scenario.assertions.begin(), scenario.assertions.end(),
                   [](const ScenarioAssertion& a, const ScenarioAssertion& b) {
                     return a.at_ms < b.at_ms;
                   });
  return scenario;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return ParseScenario(text.str());
}

AssertionOutcome CheckAssertion(const City& city,
                                const ScenarioAssertion& assertion) {
  AssertionOutcome outcome{assertion, Json(), false, ""};
  try {
    outcome.actual = city.Query(assertion.query);
    outcome.passed = outcome.actual == assertion.expected;
  } catch (const Error& e) {
    outcome.error = e.what();
  }
  return outcome;
}

std::string DescribeOutcome(const AssertionOutcome& outcome) {
  std::string text = outcome.passed ? "PASS" : "FAIL";
  text += " line " + std::to_string(outcome.assertion.line) + " at " +
          std::to_string(outcome.assertion.at_ms) + " ms: " +
          outcome.assertion.query + " expected " + outcome.assertion.expected.dump();
  if (!outcome.error.empty()) {
    text += ", error " + outcome.error;
  } else {
    text += ", actual " + outcome.actual.dump();
  }
  return text;
}

ScenarioRunner::ScenarioRunner(const Scenario& scenario, RunOptions options)
    : scenario_(scenario), options_(options) {
  CityConfig config = scenario.config;
  if (options_.epoch) config.sim.epoch = *options_.epoch;
  if (options_.seed) config.sim.seed = *options_.seed;
  city_ = std::make_unique<City>(std::move(config));
}

RunResult ScenarioRunner::Run() {
  Kernel& kernel = city_->kernel();

  std::vector<const ScenarioStep*> submissions;
  for (const auto& step : scenario_.steps) submissions.push_back(&step);
  std::stable_sort(submissions.begin(), submissions.end(),
                   [](const ScenarioStep* a, const ScenarioStep* b) {
                     return a->submitted_ms < b->submitted_ms;
                   });

  std::int64_t horizon = options_.until_ms.value_or(0);
  for (const auto& step : scenario_.steps) horizon = std::max(horizon, step.at_ms);
  for (const auto& a : scenario_.assertions) horizon = std::max(horizon, a.at_ms);

  RunResult result;
  std::size_t next_step = 0;
  std::size_t next_assertion = 0;
  const auto& assertions = scenario_.assertions;
  while (next_step < submissions.size() || next_assertion < assertions.size()) {
    const bool inject =
        next_step < submissions.size() &&
        (next_assertion >= assertions.size() ||
         submissions[next_step]->submitted_ms <= assertions[next_assertion].at_ms);
    if (inject) {
      // Everything submitted at one instant is scheduled as one batch.
      const std::int64_t batch = submissions[next_step]->submitted_ms;
      kernel.RunUntil(std::max(kernel.now(), AtMillis(batch)));
      while (next_step < submissions.size() &&
             submissions[next_step]->submitted_ms == batch) {
        const ScenarioStep& step = *submissions[next_step++];
        try {
          city_->Inject(AtMillis(step.at_ms), step.target, step.event, step.args);
        } catch (const Error& e) {
          throw ScenarioError(e.code(), step.line, e.what());
        }
      }
    } else {
      const ScenarioAssertion& assertion = assertions[next_assertion++];
      kernel.RunUntil(std::max(kernel.now(), AtMillis(assertion.at_ms)));
      AssertionOutcome outcome = CheckAssertion(*city_, assertion);
      if (!outcome.passed) ++result.failures;
      result.outcomes.push_back(std::move(outcome));
    }
  }
  kernel.RunUntil(std::max(kernel.now(), AtMillis(horizon)));
  result.end_ms = ToMillis(kernel.now());
  return result;
}

void ScenarioRunner::WriteExports(const std::filesystem::path& directory) const {
  city_->telemetry().ExportCsv(directory);
  WriteFile(directory / "telemetry.json", city_->telemetry().ExportJson().dump(2) + "\n");
  WriteFile(directory / "transcript.csv",
            "at,seq,target,kind\n" + city_->kernel().TranscriptText());
  WriteFile(directory / "sms_inbox.json", city_->sms().ExportJson().dump(2) + "\n");
}

}  // namespace citysim
