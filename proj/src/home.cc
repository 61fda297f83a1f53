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

#include "citysim/home.h"

#include <string>

namespace citysim {

std::string_view ApplianceName(Appliance appliance) {
  switch (appliance) {
    case Appliance::kFridge: return "fridge";
    case Appliance::kAc: return "ac";
    case Appliance::kLight1: return "light1";
    case Appliance::kLight2: return "light2";
    case Appliance::kFan: return "fan";
    case Appliance::kTv: return "tv";
  }
  return "";
}

Appliance ParseAppliance(std::string_view name) {
  for (Appliance appliance : kAllAppliances) {
    if (ApplianceName(appliance) == name) return appliance;
  }
  throw Error(ErrorCode::kUnknownAppliance,
              "unknown appliance '" + std::string(name) + "'");
}

bool HomeAutomation::HandleAppCommand(Appliance appliance, bool on,
                                      VirtualTime at) {
  const auto i = static_cast<std::size_t>(appliance);
  if (states_[i] == on) return false;
  states_[i] = on;
  ++toggles_[i];
  telemetry_.Record(Table::kHomeAppliance, at,
                    {std::string(ApplianceName(appliance)), on ? "ON" : "OFF"});
  return true;
}

bool HomeAutomation::HandleAppMessage(const Json& message, VirtualTime at) {
  if (!message.is_object() || !message.contains("appliance") ||
      !message.contains("on") || !message["appliance"].is_string() ||
      !message["on"].is_boolean()) {
    throw Error(ErrorCode::kMalformedField,
                "home message must be {\"appliance\": string, \"on\": bool}");
  }
  return HandleAppCommand(
      ParseAppliance(message["appliance"].get<std::string>()),
      message["on"].get<bool>(), at);
}

void HomeAutomation::Handle(const SimEvent& event) {
  if (const auto* delivery = std::get_if<FrameDelivery>(&event.payload)) {
    if (const auto* lan = std::get_if<LanMessage>(&delivery->frame)) {
      HandleAppMessage(lan->body, event.at);
      return;
    }
  } else if (const auto* stimulus = std::get_if<Stimulus>(&event.payload)) {
    if (stimulus->name == "set") {
      HandleAppMessage(stimulus->args, event.at);
      return;
    }
  }
  throw Error(ErrorCode::kUnknownCommand, "home only accepts appliance commands");
}

OrderedJson HomeAutomation::Snapshot(VirtualTime) const {
  OrderedJson snapshot = OrderedJson::object();
  OrderedJson counts = OrderedJson::object();
  for (Appliance appliance : kAllAppliances) {
    const std::string name(ApplianceName(appliance));
    snapshot[name] = is_on(appliance) ? "ON" : "OFF";
    counts[name] = toggle_count(appliance);
  }
  snapshot["toggle_counts"] = std::move(counts);
  return snapshot;
}

}  // namespace citysim
