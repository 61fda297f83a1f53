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

#include "citysim/catalog.h"

#include <string>

#include "citysim/error.h"

namespace citysim {
namespace {

using enum FieldType;

bool Matches(FieldType type, const Json& value) {
  switch (type) {
    case kInteger: return value.is_number_integer();
    case kNumber: return value.is_number();
    case kBoolean: return value.is_boolean();
    case kString: return value.is_string();
  }
  return false;
}

std::string_view TypeName(FieldType type) {
  switch (type) {
    case kInteger: return "integer";
    case kNumber: return "number";
    case kBoolean: return "boolean";
    case kString: return "string";
  }
  return "";
}

}  // namespace

const std::vector<EventSpec>& EventCatalog() {
  static const std::vector<EventSpec> catalog = {
      {"streetlight", "command", {{"byte", kString, true}}, "bt-streetlight", true},
      {"streetlight", "ldr", {{"value", kInteger, true}}, "", true},
      {"streetlight", "lane",
       {{"lane", kInteger, true}, {"distance_cm", kNumber, true}}, "", true},
      {"home", "set",
       {{"appliance", kString, true}, {"on", kBoolean, true}}, "wifi-home", true},
      {"door", "enroll", {{"token", kString, true}}, "", false},
      {"door", "verify", {{"token", kString, true}}, "", true},
      {"security", "arm", {{"armed", kBoolean, true}}, "", true},
      {"security", "presence", {{"distance_cm", kNumber, true}}, "", true},
      {"security", "smoke", {{"value", kInteger, true}}, "", true},
      {"traffic", "presence",
       {{"road", kInteger, true}, {"present", kBoolean, true}}, "", true},
      {"traffic", "plate",
       {{"road", kInteger, true}, {"plate", kString, true}}, "", true},
      {"traffic", "register_plate",
       {{"plate", kString, true}, {"owner", kString, false},
        {"status", kString, false}},
       "", false},
      {"traffic", "reset_alarm", {}, "", true},
      {"parking", "card", {{"uid", kString, true}}, "", true},
      {"parking", "entry", {{"detected", kBoolean, true}}, "", true},
      {"parking", "slot",
       {{"slot", kInteger, true}, {"occupied", kBoolean, true}}, "", true},
      {"accident", "gps",
       {{"sentence", kString, false}, {"lat", kNumber, false},
        {"lon", kNumber, false}, {"valid", kBoolean, false}},
       "gps", true},
      {"accident", "flame", {{"value", kInteger, true}}, "", true},
      {"accident", "button", {{"kind", kString, true}}, "", true},
      {"accident", "reset", {}, "", true},
      {"info", "env",
       {{"temp_c", kNumber, true}, {"rh_pct", kNumber, true}}, "", true},
      {"info", "text", {{"msg", kString, true}}, "bt-info", true},
  };
  return catalog;
}

bool IsKnownTarget(std::string_view target) {
  for (const auto& spec : EventCatalog()) {
    if (spec.target == target) return true;
  }
  return false;
}

const EventSpec& FindEvent(std::string_view target, std::string_view event) {
  if (!IsKnownTarget(target)) {
    throw Error(ErrorCode::kUnknownTarget,
                "unknown target '" + std::string(target) + "'");
  }
  for (const auto& spec : EventCatalog()) {
    if (spec.target == target && spec.event == event) return spec;
  }
  throw Error(ErrorCode::kUnknownCommand, "target '" + std::string(target) +
                                              "' has no event '" +
                                              std::string(event) + "'");
}

void ValidateArgs(const EventSpec& spec, const Json& args) {
  if (!args.is_object()) {
    throw Error(ErrorCode::kMalformedField, "event arguments must be an object");
  }
  for (const auto& [key, value] : args.items()) {
    bool known = false;
    for (const auto& field : spec.fields) {
      if (field.name != key) continue;
      known = true;
      if (!Matches(field.type, value)) {
        throw Error(ErrorCode::kMalformedField,
                    "field '" + key + "' of " + std::string(spec.target) + "." +
                        std::string(spec.event) + " must be a " +
                        std::string(TypeName(field.type)));
      }
    }
    if (!known) {
      throw Error(ErrorCode::kMalformedField,
                  "unknown field '" + key + "' for " + std::string(spec.target) +
                      "." + std::string(spec.event));
    }
  }
  for (const auto& field : spec.fields) {
    if (field.required && !args.contains(field.name)) {
      throw Error(ErrorCode::kMalformedField,
                  "missing field '" + std::string(field.name) + "' for " +
                      std::string(spec.target) + "." + std::string(spec.event));
    }
  }
  if (spec.target == "accident" && spec.event == "gps") {
    const bool sentence = args.contains("sentence");
    const bool coords = args.contains("lat") && args.contains("lon");
    if (sentence == coords || (sentence && (args.contains("lat") || args.contains("lon") ||
                                            args.contains("valid")))) {
      throw Error(ErrorCode::kMalformedField,
                  "accident.gps takes either 'sentence' or 'lat'+'lon'[+'valid']");
    }
  }
  if (spec.target == "streetlight" && spec.event == "command" &&
      args.at("byte").get<std::string>().empty()) {
    throw Error(ErrorCode::kMalformedField, "streetlight command byte is empty");
  }
}

}  // namespace citysim
