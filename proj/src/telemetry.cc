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

#include <fstream>
#include <sstream>

#include "citysim/error.h"

namespace citysim {

const std::array<TableSchema, kTableCount>& TableSchemas() {
  static const std::array<TableSchema, kTableCount> schemas = {{
      {Table::kStreetlight,
       "streetlight",
       {"date", "time", "light1", "light2", "light3", "light4", "light5",
        "light6", "light7", "light8"}},
      {Table::kHomeAlarm, "home_alarm",
       {"date", "time", "thief_alarm", "fire_alarm"}},
      {Table::kHomeAppliance, "home_appliance",
       {"date", "time", "appliance", "new_state"}},
      {Table::kDoor, "door", {"date", "time", "result"}},
      {Table::kTraffic, "traffic", {"date", "time", "road", "signal"}},
      {Table::kPlate, "plate", {"date", "time", "road", "plate", "verdict"}},
      {Table::kPrivateParking, "private_parking",
       {"date", "time", "card_result"}},
      {Table::kSmartParking, "smart_parking",
       {"date", "time", "slot", "occupied"}},
      {Table::kInfoEnv, "info_env", {"date", "time", "temp_c", "rh_pct"}},
      {Table::kInfoNotice, "info_notice", {"date", "time", "text"}},
      {Table::kAccident, "accident", {"date", "time", "kind", "lat", "lon"}},
  }};
  return schemas;
}

const TableSchema& SchemaOf(Table table) {
  return TableSchemas()[static_cast<std::size_t>(table)];
}

std::optional<Table> TableFromName(std::string_view name) {
  for (const auto& schema : TableSchemas()) {
    if (schema.name == name) return schema.table;
  }
  return std::nullopt;
}

void Telemetry::Record(Table table, VirtualTime at,
                       std::vector<std::string> values) {
  const TableSchema& schema = SchemaOf(table);
  if (values.size() + 2 != schema.columns.size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                std::string(schema.name) + " row needs " +
                    std::to_string(schema.columns.size() - 2) +
                    " values, got " + std::to_string(values.size()));
  }
  auto& log = tables_[static_cast<std::size_t>(table)];
  if (!log.empty() && at < log.back().at) {
    throw Error(ErrorCode::kSchemaMismatch,
                std::string(schema.name) + " row is older than the last row");
  }
  log.push_back(TelemetryRow{table, at, std::move(values)});
}

std::size_t Telemetry::size() const {
  std::size_t total = 0;
  for (const auto& log : tables_) total += log.size();
  return total;
}

std::vector<std::string> Telemetry::FullRow(const TelemetryRow& row) const {
  std::vector<std::string> full;
  full.reserve(row.values.size() + 2);
  full.push_back(FormatDate(epoch_, row.at));
  full.push_back(FormatTimeOfDay(epoch_, row.at));
  full.insert(full.end(), row.values.begin(), row.values.end());
  return full;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string Telemetry::CsvText(Table table) const {
  std::ostringstream out;
  const auto& columns = SchemaOf(table).columns;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  for (const auto& row : rows(table)) {
    const auto full = FullRow(row);
    for (std::size_t i = 0; i < full.size(); ++i) {
      out << (i ? "," : "") << CsvEscape(full[i]);
    }
    out << '\n';
  }
  return out.str();
}

void Telemetry::ExportCsv(const std::filesystem::path& directory) const {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create " + directory.string() + ": " + ec.message());
  }
  for (const auto& schema : TableSchemas()) {
    const auto path = directory / (std::string(schema.name) + ".csv");
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << CsvText(schema.table);
    if (!file) {
      throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
    }
  }
}

OrderedJson Telemetry::TableJson(Table table) const {
  const auto& columns = SchemaOf(table).columns;
  OrderedJson out = OrderedJson::array();
  for (const auto& row : rows(table)) {
    const auto full = FullRow(row);
    OrderedJson object = OrderedJson::object();
    for (std::size_t i = 0; i < columns.size(); ++i) {
      object[std::string(columns[i])] = full[i];
    }
    out.push_back(std::move(object));
  }
  return out;
}

OrderedJson Telemetry::ExportJson() const {
  OrderedJson out = OrderedJson::object();
  for (const auto& schema : TableSchemas()) {
    out[std::string(schema.name)] = TableJson(schema.table);
  }
  return out;
}

}  // namespace citysim
