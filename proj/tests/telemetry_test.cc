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

#include "citysim/telemetry.h"

#include <gtest/gtest.h>

#include "support/test_support.h"

namespace citysim {
namespace {

using testing::ParseCsv;

TEST(TelemetrySchemaTest, FixedHeaders) {
  const std::map<std::string, std::string> expected = {
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
  ASSERT_EQ(TableSchemas().size(), expected.size());
  Telemetry telemetry(ParseEpoch(kDefaultEpoch));
  for (const auto& schema : TableSchemas()) {
    const std::string header = telemetry.CsvText(schema.table);
    EXPECT_EQ(header, expected.at(std::string(schema.name)) + "\n") << schema.name;
    EXPECT_EQ(TableFromName(schema.name), schema.table);
  }
  EXPECT_EQ(TableFromName("weather"), std::nullopt);
}

TEST(TelemetryTest, RejectsWrongArityAndTimeTravel) {
  Telemetry telemetry(ParseEpoch(kDefaultEpoch));
  telemetry.Record(Table::kDoor, AtMillis(100), {"open"});
  auto code_of = [&](Table table, VirtualTime at, std::vector<std::string> values) {
    try {
      telemetry.Record(table, at, std::move(values));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kConfigError;
  };
  EXPECT_EQ(code_of(Table::kDoor, AtMillis(200), {"open", "extra"}), ErrorCode::kSchemaMismatch);
  EXPECT_EQ(code_of(Table::kDoor, AtMillis(50), {"closed"}), ErrorCode::kSchemaMismatch);
  EXPECT_EQ(telemetry.rows(Table::kDoor).size(), 1u);
}

TEST(TelemetryTest, DateAndTimeComeFromEpoch) {
  Telemetry telemetry(ParseEpoch("2021-06-01T18:30:00Z"));
  telemetry.Record(Table::kDoor, AtMillis(5 * 3600 * 1000 + 1234), {"open"});
  EXPECT_EQ(telemetry.CsvText(Table::kDoor),
            "date,time,result\n"
            "2021-06-01,23:30:01.234,open\n");
}

TEST(TelemetryTest, CsvQuotingRoundTrips) {
  Telemetry telemetry(ParseEpoch(kDefaultEpoch));
  const std::vector<std::string> notices = {"plain", "a,b", "say \"hi\"", "x\ny", ""};
  for (std::size_t i = 0; i < notices.size(); ++i) {
    telemetry.Record(Table::kInfoNotice, AtMillis(i), {notices[i]});
  }
  const auto rows = ParseCsv(telemetry.CsvText(Table::kInfoNotice));
  ASSERT_EQ(rows.size(), notices.size() + 1);
  for (std::size_t i = 0; i < notices.size(); ++i) {
    ASSERT_EQ(rows[i + 1].size(), 3u);
    EXPECT_EQ(rows[i + 1][2], notices[i]);
  }
}

TEST(TelemetryTest, JsonMirrorsCsv) {
  Telemetry telemetry(ParseEpoch(kDefaultEpoch));
  telemetry.Record(Table::kAccident, AtMillis(10), {"fire", "28.4200", "70.3000"});
  telemetry.Record(Table::kAccident, AtMillis(20), {"police", "-1.0000", "2.5000"});
  const OrderedJson json = telemetry.ExportJson();
  ASSERT_EQ(json.size(), kTableCount);
  const auto csv = ParseCsv(telemetry.CsvText(Table::kAccident));
  const auto& rows = json["accident"];
  ASSERT_EQ(rows.size() + 1, csv.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t c = 0;
    for (const auto& [key, value] : rows[r].items()) {
      EXPECT_EQ(key, csv[0][c]);
      EXPECT_EQ(value.get<std::string>(), csv[r + 1][c]);
      ++c;
    }
  }
}

TEST(TelemetryTest, ExportWritesEveryTable) {
  const auto dir = testing::TempDir("export");
  Telemetry telemetry(ParseEpoch(kDefaultEpoch));
  telemetry.ExportCsv(dir);
  for (const auto& schema : TableSchemas()) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(schema.name) + ".csv")));
  }
  std::filesystem::remove_all(dir);
}

TEST(CsvReaderTest, HandlesQuotesAndEmptyFields) {
  const auto rows = ParseCsv("a,,\"b,c\"\n\"\"\"\",x\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "", "b,c"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"\"", "x"}));
}

}  // namespace
}  // namespace citysim
