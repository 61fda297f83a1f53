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

#ifndef CITYSIM_CATALOG_H_
#define CITYSIM_CATALOG_H_

#include <string_view>
#include <vector>

#include "citysim/event.h"

namespace citysim {

enum class FieldType { kInteger, kNumber, kBoolean, kString };

struct FieldSpec {
  std::string_view name;
  FieldType type;
  bool required;
};

// One injectable (target, event) pair, shared by scenario files and the
// operator gateway. Events with a link travel over that transport; the rest
// are delivered to the target directly.
struct EventSpec {
  std::string_view target;
  std::string_view event;
  std::vector<FieldSpec> fields;
  std::string_view link;
  bool operator_allowed;
};

const std::vector<EventSpec>& EventCatalog();
bool IsKnownTarget(std::string_view target);
// Throws kUnknownTarget or kUnknownCommand.
const EventSpec& FindEvent(std::string_view target, std::string_view event);
// Checks field presence and JSON types; unknown fields are rejected.
// Throws kMalformedField.
void ValidateArgs(const EventSpec& spec, const Json& args);

}  // namespace citysim

#endif  // CITYSIM_CATALOG_H_
