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

#ifndef CITYSIM_TELEMETRY_H_
#define CITYSIM_TELEMETRY_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/event.h"
#include "citysim/time.h"

namespace citysim {

enum class Table {
  kStreetlight,
  kHomeAlarm,
  kHomeAppliance,
  kDoor,
  kTraffic,
  kPlate,
  kPrivateParking,
  kSmartParking,
  kInfoEnv,
  kInfoNotice,
  kAccident,
};

inline constexpr std::size_t kTableCount = 11;

struct TableSchema {
  Table table;
  std::string_view name;
  // Full header, starting with "date", "time".
  std::vector<std::string_view> columns;
};

const std::array<TableSchema, kTableCount>& TableSchemas();
const TableSchema& SchemaOf(Table table);
std::optional<Table> TableFromName(std::string_view name);

struct TelemetryRow {
  Table table{};
  VirtualTime at{};
  // Values after date and time, in schema order.
  std::vector<std::string> values;
};

// Append-only per-table log. Dates and times are derived from the epoch.
class Telemetry {
 public:
  explicit Telemetry(Epoch epoch) : epoch_(epoch) {}

  // Throws kSchemaMismatch on wrong arity or a timestamp earlier than the
  // table's last row.
  void Record(Table table, VirtualTime at, std::vector<std::string> values);

  const std::vector<TelemetryRow>& rows(Table table) const {
    return tables_[static_cast<std::size_t>(table)];
  }
  std::size_t size() const;

  // RFC 4180 text with LF line endings, header first.
  std::string CsvText(Table table) const;
  // Writes <table>.csv for every table. Throws kIoFailure.
  void ExportCsv(const std::filesystem::path& directory) const;

  // [{date, time, <columns>...}, ...]
  OrderedJson TableJson(Table table) const;
  // {table-name: [...], ...} with every table present.
  OrderedJson ExportJson() const;

  Epoch epoch() const { return epoch_; }

 private:
  std::vector<std::string> FullRow(const TelemetryRow& row) const;

  Epoch epoch_;
  std::array<std::vector<TelemetryRow>, kTableCount> tables_;
};

// Quotes a field when it contains a comma, quote, CR or LF.
std::string CsvEscape(std::string_view field);

}  // namespace citysim

#endif  // CITYSIM_TELEMETRY_H_
