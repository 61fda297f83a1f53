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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "citysim/gateway_server.h"
#include "citysim/scenario.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

void PrintDiagnostics(const citysim::City& city) {
  for (const auto& d : city.kernel().diagnostics()) {
    std::cerr << "diagnostic " << citysim::ToMillis(d.at) << " ms " << d.target << ": "
              << citysim::ErrorCodeName(d.code) << ": " << d.message << '\n';
  }
}

int Run(const std::string& scenario_path, const std::string& out_dir,
        std::optional<std::int64_t> until_ms, const std::string& epoch,
        std::optional<std::uint64_t> seed) {
  citysim::Scenario scenario;
  citysim::RunOptions options;
  try {
    scenario = citysim::LoadScenario(scenario_path);
    if (!epoch.empty()) options.epoch = citysim::ParseEpoch(epoch);
  } catch (const citysim::Error& e) {
    std::cerr << scenario_path << ": " << citysim::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& warning : scenario.warnings) {
    std::cerr << scenario_path << ": warning: " << warning << '\n';
  }
  options.until_ms = until_ms;
  options.seed = seed;

  try {
    citysim::ScenarioRunner runner(scenario, options);
    const citysim::RunResult result = runner.Run();
    for (const auto& outcome : result.outcomes) {
      std::cout << citysim::DescribeOutcome(outcome) << '\n';
    }
    PrintDiagnostics(runner.city());
    runner.WriteExports(out_dir);
    std::cout << result.outcomes.size() - result.failures << "/" << result.outcomes.size()
              << " assertions passed, virtual time " << result.end_ms << " ms\n";
    return result.failures == 0 ? kExitOk : kExitAssertion;
  } catch (const citysim::Error& e) {
    std::cerr << scenario_path << ": " << citysim::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return kExitUsage;
  }
}

int Serve(const std::string& scenario_path, const std::string& listen,
          const std::string& record) {
  citysim::Scenario scenario;
  citysim::GatewayOptions options;
  try {
    scenario = citysim::LoadScenario(scenario_path);
    citysim::ParseListenAddress(listen, options);
  } catch (const citysim::Error& e) {
    std::cerr << scenario_path << ": " << citysim::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return kExitUsage;
  }

  citysim::City city(scenario.config);
  for (const auto& step : scenario.steps) {
    city.Inject(citysim::AtMillis(step.at_ms), step.target, step.event, step.args);
  }
  citysim::GatewayServer server(city, options);
  try {
    server.Start();
  } catch (const citysim::Error& e) {
    std::cerr << "citysim: " << e.what() << '\n';
    return kExitUsage;
  }
  std::cerr << "listening on " << options.address << ":" << server.port() << '\n';
  server.Wait();
  server.Stop();

  if (!record.empty()) {
    std::ofstream file(record, std::ios::binary | std::ios::trunc);
    file << server.runner().LogAsScenario();
    if (!file) {
      std::cerr << "citysim: cannot write " << record << '\n';
      return kExitUsage;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"citysim: deterministic smart city simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<std::int64_t> until_ms;
  std::string epoch;
  std::optional<std::uint64_t> seed;
  std::string listen;
  std::string record;

  auto* run = app.add_subcommand("run", "Replay a scenario and export telemetry");
  run->add_option("--scenario", scenario_path, "Scenario file (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--until-ms", until_ms, "Run at least until this virtual instant")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--epoch", epoch, "Wall time of virtual 0 (ISO 8601)");
  run->add_option("--seed", seed, "Seed for lossy links");

  auto* serve = app.add_subcommand("serve", "Run live behind the operator gateway");
  serve->add_option("--scenario", scenario_path, "Scenario file (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  serve->add_option("--listen", listen, "host:port")->required();
  serve->add_option("--record", record, "Write the operator command log here on exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) return Run(scenario_path, out_dir, until_ms, epoch, seed);
  return Serve(scenario_path, listen, record);
}
