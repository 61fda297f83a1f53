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

#ifndef CITYSIM_HOME_H_
#define CITYSIM_HOME_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "citysim/kernel.h"
#include "citysim/telemetry.h"

namespace citysim {

enum class Appliance { kFridge, kAc, kLight1, kLight2, kFan, kTv };

inline constexpr std::array<Appliance, 6> kAllAppliances = {
    Appliance::kFridge, Appliance::kAc,  Appliance::kLight1,
    Appliance::kLight2, Appliance::kFan, Appliance::kTv};

std::string_view ApplianceName(Appliance appliance);
// Throws kUnknownAppliance.
Appliance ParseAppliance(std::string_view name);

// Six-relay appliance bank driven by {"appliance": ..., "on": ...} LAN
// messages. Commands are absolute; repeating one is a no-op.
class HomeAutomation : public Device {
 public:
  static constexpr std::string_view kId = "home";

  explicit HomeAutomation(Telemetry& telemetry) : telemetry_(telemetry) {}

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  // Returns true if the state changed.
  bool HandleAppCommand(Appliance appliance, bool on, VirtualTime at);
  // Parses and applies a wire message; throws kUnknownAppliance or
  // kMalformedField.
  bool HandleAppMessage(const Json& message, VirtualTime at);

  bool is_on(Appliance appliance) const {
    return states_[static_cast<std::size_t>(appliance)];
  }
  std::uint64_t toggle_count(Appliance appliance) const {
    return toggles_[static_cast<std::size_t>(appliance)];
  }

 private:
  Telemetry& telemetry_;
  std::array<bool, 6> states_{};
  std::array<std::uint64_t, 6> toggles_{};
};

}  // namespace citysim

#endif  // CITYSIM_HOME_H_
