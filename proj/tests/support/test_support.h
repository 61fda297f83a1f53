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

#ifndef CITYSIM_TESTS_SUPPORT_TEST_SUPPORT_H_
#define CITYSIM_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/kernel.h"
#include "citysim/scenario.h"

namespace citysim::testing {

std::filesystem::path ScenarioDir();
std::vector<std::filesystem::path> CorpusScenarios();

std::string ReadFile(const std::filesystem::path& path);

// Fresh empty directory under the system temp dir.
std::filesystem::path TempDir(std::string_view name);

// Minimal RFC 4180 reader, independent of the exporter.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

// Records every event handed to it.
class RecordingDevice : public Device {
 public:
  explicit RecordingDevice(std::string id) : id_(std::move(id)) {}

  std::string_view id() const override { return id_; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  const std::vector<SimEvent>& seen() const { return seen_; }
  std::function<void(const SimEvent&)> on_event;

 private:
  std::string id_;
  std::vector<SimEvent> seen_;
};

struct RunArtifacts {
  RunResult result;
  std::string transcript;
  std::string telemetry_json;
  std::vector<std::string> csv;  // one per table, schema order
  std::string sms_json;
};

RunArtifacts RunScenarioText(std::string_view text, RunOptions options = {});

// A random but valid scenario touching every subsystem.
std::string RandomScenario(std::mt19937_64& rng);

}  // namespace citysim::testing

#endif  // CITYSIM_TESTS_SUPPORT_TEST_SUPPORT_H_
