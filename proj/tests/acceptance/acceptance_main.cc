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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citysim/city.h"
#include "citysim/nmea.h"
#include "citysim/scenario.h"
#include "citysim/telemetry.h"
#include "support/test_support.h"
#include "support/traffic_reference.h"

namespace citysim {
namespace {

using testing::ParseCsv;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::string failure;

  void Fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
};

using Criterion = std::function<void(Verdict&)>;

void CorpusScenarios(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const auto files = testing::CorpusScenarios();
  if (files.size() != 8) v.Fail("expected 8 corpus scenarios, found " + std::to_string(files.size()));
  std::size_t assertions = 0;
  for (const auto& file : files) {
    const Scenario scenario = LoadScenario(file);
    ScenarioRunner runner(scenario);
    const RunResult result = runner.Run();
    assertions += result.outcomes.size();
    if (result.failures != 0 || result.outcomes.empty()) {
      v.Fail(file.filename().string() + " has failing assertions");
    }
    const std::string name = file.stem().string();
    if (name == "traffic_junction") {
      const std::vector<std::pair<int, VirtualTime>> expected = {
          {1, AtMillis(0)}, {4, AtMillis(20000)}, {1, AtMillis(40000)}, {4, AtMillis(60000)}};
      if (runner.city().traffic().green_starts() != expected) {
        v.Fail("junction green order is not 1,4,1,4 at 20000 ms steps");
      }
    }
    if (name == "parking_lot") {
      bool seen = false;
      for (const auto& o : result.outcomes) {
        if (o.assertion.query == "parking.available" && o.assertion.at_ms == 15000) {
          seen = o.passed && o.actual == 2;
        }
      }
      if (!seen) v.Fail("parking available != 2 at 15000 ms");
    }
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (elapsed.count() >= 5000) v.Fail("corpus took " + std::to_string(elapsed.count()) + " ms");
  v.detail << files.size() << " scenarios, " << assertions << " assertions, "
           << elapsed.count() << " ms";
}

bool SameArtifacts(const testing::RunArtifacts& a, const testing::RunArtifacts& b) {
  return a.transcript == b.transcript && a.telemetry_json == b.telemetry_json &&
         a.csv == b.csv && a.sms_json == b.sms_json && a.result.end_ms == b.result.end_ms;
}

void Determinism(Verdict& v) {
  int runs = 0;
  for (const auto& file : testing::CorpusScenarios()) {
    const std::string text = testing::ReadFile(file);
    if (!SameArtifacts(testing::RunScenarioText(text), testing::RunScenarioText(text))) {
      v.Fail(file.filename().string() + " differs between runs");
    }
    ++runs;
  }
  std::mt19937_64 rng(20210601);
  for (int i = 0; i < 100; ++i) {
    const std::string text = testing::RandomScenario(rng);
    if (!SameArtifacts(testing::RunScenarioText(text), testing::RunScenarioText(text))) {
      v.Fail("random scenario " + std::to_string(i) + " differs between runs");
    }
    ++runs;
  }
  v.detail << runs << " scenarios run twice";
}

void TrafficOracle(Verdict& v) {
  constexpr std::int64_t kHorizon = 400000;
  int grants = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto reports = testing::RandomPresenceSchedule(seed);
    if (reports.size() > 200) v.Fail("schedule " + std::to_string(seed) + " too long");
    const auto run = testing::SimulateTraffic(reports, kHorizon);
    if (run.grants != testing::ReferenceGreens(reports, kHorizon)) {
      v.Fail("seed " + std::to_string(seed) + " diverges from reference");
    }
    if (run.max_greens > 1) v.Fail("seed " + std::to_string(seed) + " has two greens");
    if (run.green_without_traffic > 0) {
      v.Fail("seed " + std::to_string(seed) + " grants an empty road");
    }
    grants += static_cast<int>(run.grants.size());
  }
  v.detail << "1000 schedules, " << grants << " grants";
}

// Open intervals of a boolean observed after every dispatch.
struct IntervalWatch {
  std::vector<std::pair<std::int64_t, std::int64_t>> closed;
  std::optional<std::int64_t> open_since;

  void Update(bool open, std::int64_t at) {
    if (open && !open_since) open_since = at;
    if (!open && open_since) {
      closed.emplace_back(*open_since, at);
      open_since.reset();
    }
  }
};

// Every interval must end exactly `hold` after the last trigger inside it.
void CheckHold(Verdict& v, const std::string& what, const IntervalWatch& watch,
               const std::vector<std::int64_t>& triggers, std::int64_t hold, int& isolated) {
  for (const auto& [from, to] : watch.closed) {
    std::optional<std::int64_t> last;
    int count = 0;
    for (auto t : triggers) {
      if (t >= from && t < to) {
        last = t;
        ++count;
      }
    }
    if (!last || to - *last != hold) {
      v.Fail(what + " interval [" + std::to_string(from) + "," + std::to_string(to) +
             ") does not end " + std::to_string(hold) + " ms after its last trigger");
    }
    if (count == 1) {
      ++isolated;
      if (to - from != hold) v.Fail(what + " single-trigger interval is not " + std::to_string(hold));
    }
  }
}

void TimingExactness(Verdict& v) {
  std::mt19937_64 rng(77);
  auto uniform = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  int door_isolated = 0, gate_isolated = 0, greens = 0, env_gaps = 0;

  for (int round = 0; round < 50; ++round) {
    CityConfig config;
    config.fingerprints = {"alice", "bob"};
    config.whitelist = {{"04A1B2C3", "P-01"}};
    City city(config);
    IntervalWatch door, gate;
    std::vector<std::int64_t> door_grants, gate_triggers;
    city.kernel().AddDispatchObserver([&](const SimEvent& e) {
      door.Update(city.door().is_open(), ToMillis(e.at));
      gate.Update(city.parking().gate_open(), ToMillis(e.at));
    });
    std::int64_t t = 0;
    for (int i = 0; i < 40; ++i) {
      t += uniform(1, 9000);
      switch (uniform(0, 3)) {
        case 0:
          city.Inject(AtMillis(t), "door", "verify", Json{{"token", "alice"}});
          door_grants.push_back(t);
          break;
        case 1:
          city.Inject(AtMillis(t), "door", "verify", Json{{"token", "mallory"}});
          break;
        case 2:
          city.Inject(AtMillis(t), "parking", "card", Json{{"uid", "04a1b2c3"}});
          gate_triggers.push_back(t);
          break;
        default:
          city.Inject(AtMillis(t), "parking", "entry", Json{{"detected", true}});
          gate_triggers.push_back(t);
          break;
      }
    }
    city.kernel().RunUntil(AtMillis(t + 10000));
    if (door.open_since || gate.open_since) v.Fail("door or gate left open at the horizon");
    CheckHold(v, "door", door, door_grants, 5000, door_isolated);
    CheckHold(v, "gate", gate, gate_triggers, 5000, gate_isolated);
  }

  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto reports = testing::RandomPresenceSchedule(seed);
    City city;
    std::vector<std::pair<std::int64_t, int>> changes;  // green road after each change
    city.kernel().AddDispatchObserver([&](const SimEvent& e) {
      int green = 0;
      for (int road = 1; road <= 4; ++road) {
        if (city.traffic().signal(road) == Signal::kGreen) green = road;
      }
      if (changes.empty() || changes.back().second != green) {
        changes.emplace_back(ToMillis(e.at), green);
      }
    });
    for (const auto& r : reports) {
      city.Inject(AtMillis(r.at_ms), "traffic", "presence",
                  Json{{"road", r.road}, {"present", r.present}});
    }
    city.kernel().RunUntil(AtMillis(400000));
    const auto& starts = city.traffic().green_starts();
    for (std::size_t i = 0; i < starts.size(); ++i) {
      const std::int64_t begin = ToMillis(starts[i].second);
      if (begin + 20000 > 400000) continue;
      ++greens;
      // The phase ends with a new grant or a dark junction, exactly 20 s in.
      std::optional<std::int64_t> end;
      if (i + 1 < starts.size() && ToMillis(starts[i + 1].second) == begin + 20000) {
        end = begin + 20000;
      }
      for (const auto& [at, green] : changes) {
        if (at > begin && at <= begin + 20000 && green != starts[i].first) {
          end = at;
          break;
        }
      }
      if (!end || *end != begin + 20000) {
        v.Fail("green on road " + std::to_string(starts[i].first) + " at " +
               std::to_string(begin) + " does not last 20000 ms");
      }
    }
  }

  for (int round = 0; round < 50; ++round) {
    City city;
    std::int64_t t = uniform(0, 5000);
    for (int i = 0; i < 30; ++i) {
      city.Inject(AtMillis(t), "info", "env",
                  Json{{"temp_c", uniform(0, 500) / 10.0}, {"rh_pct", uniform(200, 900) / 10.0}});
      t += uniform(1, 15000);
    }
    city.kernel().RunUntil(AtMillis(t + 30000));
    const auto& rows = city.telemetry().rows(Table::kInfoEnv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      ++env_gaps;
      if (rows[i].at - rows[i - 1].at != Millis{10000}) v.Fail("info_env rows not 10000 ms apart");
    }
  }
  if (door_isolated == 0 || gate_isolated == 0) v.Fail("no isolated open interval exercised");
  v.detail << door_isolated << " single door opens, " << gate_isolated << " single gate opens, "
           << greens << " greens, " << env_gaps << " env gaps";
}

void ParkingConservation(Verdict& v) {
  std::mt19937_64 rng(18);
  City city;
  std::array<bool, 4> model{};
  for (int i = 0; i < 10000; ++i) {
    const int slot = std::uniform_int_distribution<int>(1, 4)(rng);
    const bool occupied = std::bernoulli_distribution(0.5)(rng);
    city.Inject(AtMillis(i), "parking", "slot", Json{{"slot", slot}, {"occupied", occupied}});
    city.kernel().RunUntil(AtMillis(i));
    model[slot - 1] = occupied;
    int free = 0, taken = 0;
    for (int s = 1; s <= 4; ++s) {
      if (city.parking().occupied(s)) {
        ++taken;
      } else {
        ++free;
      }
      if (city.parking().occupied(s) != model[s - 1]) v.Fail("slot state diverges from events");
    }
    const int recount = static_cast<int>(std::count(model.begin(), model.end(), false));
    if (city.parking().available() + taken != 4 || free != city.parking().available()) {
      v.Fail("available + occupied != 4 at event " + std::to_string(i));
    }
    char row[32];
    std::snprintf(row, sizeof(row), "Available: %-5d", recount);
    if (city.parking().lcd().row(1) != row) {
      v.Fail("LCD shows '" + city.parking().lcd().row(1) + "' for " + std::to_string(recount));
    }
  }
  v.detail << "10000 slot events";
}

void SecuritySoundness(Verdict& v) {
  std::mt19937_64 rng(13);
  FingerprintStore store;
  std::set<std::string> enrolled;
  const int k = std::uniform_int_distribution<int>(1, 1024)(rng);
  auto token = [&rng]() {
    return "fp-" + std::to_string(std::uniform_int_distribution<int>(0, 3000)(rng));
  };
  while (static_cast<int>(enrolled.size()) < k) {
    const std::string t = token();
    if (enrolled.insert(t).second) store.Enroll(t);
  }
  int matched = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string t = token();
    const bool hit = store.Match(t).has_value();
    matched += hit;
    if (hit != (enrolled.count(t) == 1)) v.Fail("token " + t + " verify mismatch");
  }
  for (int i = 0; static_cast<int>(store.size()) < FingerprintStore::kCapacity; ++i) {
    store.Enroll("fill-" + std::to_string(i));
  }
  try {
    store.Enroll("one-too-many");
    v.Fail("enroll 1025 succeeded");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStoreFull) v.Fail("enroll 1025 failed with the wrong code");
  }

  Telemetry telemetry(ParseEpoch(kDefaultEpoch));
  SecuritySystem security(telemetry);
  std::int64_t t = 0;
  std::vector<double> distances = {0.0, 9.99, 9.9999, 10.0, 10.0001, 400.0};
  std::uniform_real_distribution<double> d(0.0, 30.0);
  for (int i = 0; i < 1000; ++i) distances.push_back(d(rng));
  for (double distance : distances) {
    for (bool armed : {true, false}) {
      security.SetArmed(armed, AtMillis(t++));
      security.OnPresenceSample(distance, AtMillis(t++));
      const bool expected = armed && distance < 10.0;
      if (security.thief_alarm() != expected) {
        v.Fail("presence at " + std::to_string(distance) + " cm, armed " +
               std::to_string(armed) + " gives wrong alarm");
      }
      security.SetArmed(false, AtMillis(t++));
    }
  }
  v.detail << k << " enrolled, " << matched << "/1000 matched, " << distances.size()
           << " presence samples";
}

void DispatchAccounting(Verdict& v) {
  const std::map<Department, std::string> numbers = {{Department::kFire, "+923001110016"},
                                                     {Department::kPolice, "+923001110015"},
                                                     {Department::kAmbulance, "+923001111122"}};
  const std::regex body_re(R"(^(FIRE|FIRE ALERT|POLICE ALERT|AMBULANCE ALERT) lat=(-?\d+\.\d{4}) lon=(-?\d+\.\d{4})$)");
  std::mt19937_64 rng(20);
  auto uniform = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::uniform_real_distribution<double> lat_d(-89.9, 89.9), lon_d(-179.9, 179.9);
  std::size_t messages = 0;

  for (int round = 0; round < 100; ++round) {
    CityConfig config;
    config.accident.directory = numbers;
    City city(config);
    std::map<std::string, std::size_t> expected;
    std::map<std::string, std::vector<std::pair<double, double>>> expected_fix;
    std::optional<std::pair<double, double>> fix;
    bool latched = false;
    std::int64_t t = 0;
    const int steps = static_cast<int>(uniform(5, 60));
    for (int i = 0; i < steps; ++i) {
      t += 1000;
      switch (uniform(0, 4)) {
        case 0: {
          fix = std::pair{lat_d(rng), lon_d(rng)};
          city.Inject(AtMillis(t), "accident", "gps",
                      Json{{"lat", fix->first}, {"lon", fix->second}, {"valid", true}});
          break;
        }
        case 1: {
          const int value = static_cast<int>(uniform(0, 1023));
          city.Inject(AtMillis(t), "accident", "flame", Json{{"value", value}});
          if (value > 400 && !latched) {
            latched = true;
            ++expected[numbers.at(Department::kFire)];
            if (fix) expected_fix[numbers.at(Department::kFire)].push_back(*fix);
          }
          break;
        }
        case 2:
          city.Inject(AtMillis(t), "accident", "reset", Json::object());
          latched = false;
          break;
        default: {
          const Department dep = kAllDepartments[uniform(0, 2)];
          city.Inject(AtMillis(t), "accident", "button",
                      Json{{"kind", std::string(DepartmentName(dep))}});
          ++expected[numbers.at(dep)];
          if (fix) expected_fix[numbers.at(dep)].push_back(*fix);
          break;
        }
      }
    }
    city.kernel().RunUntil(AtMillis(t + 5000));
    for (const auto& [dep, number] : numbers) {
      const auto inbox = city.sms().inbox(number);
      if (inbox.size() != expected[number]) {
        v.Fail("round " + std::to_string(round) + ": " + number + " got " +
               std::to_string(inbox.size()) + " messages, expected " +
               std::to_string(expected[number]));
        continue;
      }
      messages += inbox.size();
      std::size_t located = 0;
      for (const auto& message : inbox) {
        std::smatch m;
        if (message.body.find("LOCATION UNKNOWN") != std::string::npos) continue;
        if (!std::regex_match(message.body, m, body_re)) {
          v.Fail("unparseable body '" + message.body + "'");
          continue;
        }
        const auto& want = expected_fix[number];
        if (located >= want.size() ||
            std::fabs(std::stod(m[2]) - want[located].first) > 1e-4 ||
            std::fabs(std::stod(m[3]) - want[located].second) > 1e-4) {
          v.Fail("body '" + message.body + "' does not match the fix");
        }
        ++located;
      }
      if (located != expected_fix[number].size()) v.Fail("located message count mismatch");
    }
  }

  std::size_t corrupted = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string sentence = ComposeNmeaRmc(lat_d(rng), lon_d(rng), true);
    const std::size_t star = sentence.find('*');
    if (i % 2 == 0) {
      // Wrong checksum digits.
      const unsigned good = std::stoul(sentence.substr(star + 1, 2), nullptr, 16);
      const unsigned bad = (good + 1 + uniform(0, 254)) % 256;
      char hex[3];
      std::snprintf(hex, sizeof(hex), "%02X", bad);
      sentence.replace(star + 1, 2, hex);
    } else {
      // Flipped payload character.
      const std::size_t at = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(star) - 1));
      sentence[at] = sentence[at] == '0' ? '1' : (sentence[at] == ',' ? ';' : '0');
    }
    ++corrupted;
    try {
      ParseNmeaRmc(sentence);
      v.Fail("corrupted sentence accepted: " + sentence);
    } catch (const Error&) {
    }
  }
  v.detail << messages << " messages checked, " << corrupted << " corrupted sentences rejected";
}

void TelemetrySchema(Verdict& v) {
  const std::map<std::string, std::string> headers = {
      {"streetlight", "date,time,light1,light2,light3,light4,light5,light6,light7,light8"},
      {"home_alarm", "date,time,thief_alarm,fire_alarm"},
      {"home_appliance", "date,time,appliance,new_state"},
      {"door", "date,time,result"},
      {"traffic", "date,time,road,signal"},
      {"plate", "date,time,road,plate,verdict"},
      {"private_parking", "date,time,card_result"},
      {"smart_parking", "date,time,slot,occupied"},
      {"info_env", "date,time,temp_c,rh_pct"},
      {"info_notice", "date,time,text"},
      {"accident", "date,time,kind,lat,lon"},
  };
  std::vector<std::string> texts;
  for (const auto& file : testing::CorpusScenarios()) texts.push_back(testing::ReadFile(file));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) texts.push_back(testing::RandomScenario(rng));

  std::size_t rows_checked = 0;
  for (const auto& text : texts) {
    const Scenario scenario = ParseScenario(text);
    ScenarioRunner runner(scenario);
    runner.Run();
    const Telemetry& telemetry = runner.city().telemetry();
    const OrderedJson json = telemetry.ExportJson();
    if (json.size() != headers.size()) v.Fail("JSON export table count differs");
    for (const auto& schema : TableSchemas()) {
      const std::string name(schema.name);
      const auto csv = ParseCsv(telemetry.CsvText(schema.table));
      if (csv.empty()) {
        v.Fail(name + " CSV has no header");
        continue;
      }
      std::string header;
      for (const auto& h : csv[0]) header += (header.empty() ? "" : ",") + h;
      if (headers.count(name) == 0 || header != headers.at(name)) v.Fail(name + " header differs");
      const auto& rows = json.at(name);
      if (rows.size() + 1 != csv.size()) {
        v.Fail(name + " CSV and JSON row counts differ");
        continue;
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != csv[0].size() || csv[r + 1].size() != csv[0].size()) {
          v.Fail(name + " row width differs");
          continue;
        }
        std::size_t c = 0;
        for (const auto& [key, value] : rows[r].items()) {
          if (key != csv[0][c] || value.get<std::string>() != csv[r + 1][c]) {
            v.Fail(name + " row " + std::to_string(r) + " differs between CSV and JSON");
          }
          ++c;
        }
        ++rows_checked;
      }
    }
  }
  v.detail << texts.size() << " runs, " << rows_checked << " rows";
}

}  // namespace
}  // namespace citysim

int main() {
  using citysim::Criterion;
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"corpus-scenarios", citysim::CorpusScenarios},
      {"determinism", citysim::Determinism},
      {"traffic-oracle", citysim::TrafficOracle},
      {"timing-exactness", citysim::TimingExactness},
      {"parking-conservation", citysim::ParkingConservation},
      {"security-soundness", citysim::SecuritySoundness},
      {"dispatch-accounting", citysim::DispatchAccounting},
      {"telemetry-schema", citysim::TelemetrySchema},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    citysim::Verdict verdict;
    try {
      check(verdict);
    } catch (const std::exception& e) {
      verdict.Fail(std::string("exception: ") + e.what());
    }
    ++index;
    failures += !verdict.pass;
    std::string detail = verdict.detail.str();
    if (!verdict.pass) detail = verdict.failure + (detail.empty() ? "" : "; " + detail);
    std::printf("%s %d %s: %s\n", verdict.pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
