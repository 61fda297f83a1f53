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

#include "citysim/accident.h"

#include <cstdio>

namespace citysim {
namespace {

std::string Coordinate(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string Location(const std::optional<GpsFix>& fix) {
  if (!fix) return "LOCATION UNKNOWN";
  return "lat=" + Coordinate(fix->lat) + " lon=" + Coordinate(fix->lon);
}

}  // namespace

std::string_view DepartmentName(Department department) {
  switch (department) {
    case Department::kFire: return "fire";
    case Department::kPolice: return "police";
    case Department::kAmbulance: return "ambulance";
  }
  return "";
}

Department ParseDepartment(std::string_view name) {
  for (Department department : kAllDepartments) {
    if (DepartmentName(department) == name) return department;
  }
  throw Error(ErrorCode::kMalformedField,
              "department must be fire, police or ambulance, got '" +
                  std::string(name) + "'");
}

std::string FlameAlertBody(const std::optional<GpsFix>& fix) {
  return "FIRE " + Location(fix);
}

std::string ButtonAlertBody(Department department,
                            const std::optional<GpsFix>& fix) {
  std::string kind(DepartmentName(department));
  for (char& c : kind) c = static_cast<char>(c - 'a' + 'A');
  return kind + " ALERT " + Location(fix);
}

AccidentManager::AccidentManager(Telemetry& telemetry, Transports& transports,
                                 AccidentConfig config)
    : telemetry_(telemetry), transports_(transports), config_(std::move(config)) {
  if (config_.flame_threshold < 0 || config_.flame_threshold > 1023) {
    throw Error(ErrorCode::kConfigError, "flame threshold must be in 0..1023");
  }
}

void AccidentManager::SetNumber(Department department, std::string number) {
  config_.directory[department] = std::move(number);
}

std::uint64_t AccidentManager::counter(Department department) const {
  auto it = counters_.find(department);
  return it == counters_.end() ? 0 : it->second;
}

void AccidentManager::OnGpsFix(const GpsFix& fix) {
  if (fix.valid) last_fix_ = fix;
}

void AccidentManager::Dispatch(Department department, std::string body,
                               VirtualTime at) {
  auto it = config_.directory.find(department);
  if (it == config_.directory.end() || it->second.empty()) {
    throw Error(ErrorCode::kUnknownDepartment,
                "no phone number configured for " +
                    std::string(DepartmentName(department)));
  }
  transports_.SendSms(it->second, std::move(body));
  ++counters_[department];
  telemetry_.Record(Table::kAccident, at,
                    {std::string(DepartmentName(department)),
                     last_fix_ ? Coordinate(last_fix_->lat) : "",
                     last_fix_ ? Coordinate(last_fix_->lon) : ""});
}

void AccidentManager::OnFlameSample(int value, VirtualTime at) {
  if (value < 0 || value > 1023) {
    throw Error(ErrorCode::kOutOfRange,
                "flame sample " + std::to_string(value) + " is not in 0..1023");
  }
  if (value <= config_.flame_threshold || pump_) return;
  pump_ = true;
  alarm_ = true;
  Dispatch(Department::kFire, FlameAlertBody(last_fix_), at);
}

void AccidentManager::OnButtonPress(Department department, VirtualTime at) {
  Dispatch(department, ButtonAlertBody(department, last_fix_), at);
}

void AccidentManager::Reset() {
  pump_ = false;
  alarm_ = false;
}

void AccidentManager::Handle(const SimEvent& event) {
  if (const auto* delivery = std::get_if<FrameDelivery>(&event.payload)) {
    const auto* gps = std::get_if<GpsSentence>(&delivery->frame);
    if (gps == nullptr) {
      throw Error(ErrorCode::kUnknownCommand, "accident expects GPS sentences");
    }
    OnGpsFix(ParseNmeaRmc(gps->text, event.at));
    return;
  }
  const auto* stimulus = std::get_if<Stimulus>(&event.payload);
  if (stimulus == nullptr) return;
  const Json& args = stimulus->args;
  if (stimulus->name == "flame") {
    OnFlameSample(args.at("value").get<int>(), event.at);
  } else if (stimulus->name == "button") {
    OnButtonPress(ParseDepartment(args.at("kind").get<std::string>()), event.at);
  } else if (stimulus->name == "reset") {
    Reset();
  } else {
    throw Error(ErrorCode::kUnknownCommand,
                "accident has no stimulus '" + stimulus->name + "'");
  }
}

OrderedJson AccidentManager::Snapshot(VirtualTime) const {
  OrderedJson counters = OrderedJson::object();
  for (Department department : kAllDepartments) {
    counters[std::string(DepartmentName(department))] = counter(department);
  }
  OrderedJson fix;
  if (last_fix_) fix = OrderedJson{{"lat", last_fix_->lat}, {"lon", last_fix_->lon}};
  return OrderedJson{{"pump", pump_ ? "ON" : "OFF"},
                     {"alarm", alarm_ ? "ON" : "OFF"},
                     {"counters", std::move(counters)},
                     {"last_fix", std::move(fix)},
                     {"flame_threshold", config_.flame_threshold}};
}

}  // namespace citysim
