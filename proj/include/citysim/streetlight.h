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

#ifndef CITYSIM_STREETLIGHT_H_
#define CITYSIM_STREETLIGHT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "citysim/kernel.h"
#include "citysim/telemetry.h"

namespace citysim {

enum class LightLevel { kOff, kDim, kHigh };
enum class LightMode { kManual, kAutomatic };

std::string_view LightLevelName(LightLevel level);
std::string_view LightModeName(LightMode mode);

struct StreetlightConfig {
  int ldr_threshold = 15;          // reading < threshold means night
  double detection_cm = 100.0;     // lane sensor reading below this is a vehicle
  Millis hold = Millis{5000};      // HIGH pulse after a detection at night
};

// Eight-channel street-light controller.
//
// Command bytes: 'A' automatic, 'H' all HIGH, 'D' all DIM, 'F' all OFF,
// '1'..'8' latch that channel HIGH, '0' all OFF. Any byte other than 'A'
// selects MANUAL mode.
class Streetlight : public Device {
 public:
  static constexpr std::string_view kId = "streetlight";
  static constexpr int kChannels = 8;

  Streetlight(Kernel& kernel, Telemetry& telemetry,
              StreetlightConfig config = {});

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  // Throws kUnknownCommand; state is unchanged in that case.
  void HandleCommand(char byte, VirtualTime at);
  // Throws kOutOfRange for readings outside 0..1023.
  void OnLdrSample(int value, VirtualTime at);
  void OnLanePresence(int lane, double distance_cm, VirtualTime at);
  void OnHoldExpiry(int lane, std::uint64_t token, VirtualTime at);

  LightMode mode() const { return mode_; }
  bool is_night() const { return is_night_; }
  LightLevel level(int channel) const;
  std::uint64_t vehicle_count(int lane) const;
  const StreetlightConfig& config() const { return config_; }
  void set_ldr_threshold(int threshold);

 private:
  struct Channel {
    LightLevel level = LightLevel::kOff;
    std::optional<VirtualTime> hold_until;
    std::uint64_t hold_token = 0;
  };

  using Levels = std::array<LightLevel, kChannels>;

  Levels levels() const;
  void SetAll(LightLevel level);
  void RecordIfChanged(const Levels& before, VirtualTime at);

  Kernel& kernel_;
  Telemetry& telemetry_;
  StreetlightConfig config_;
  LightMode mode_ = LightMode::kManual;
  bool is_night_ = false;
  std::array<Channel, kChannels> channels_{};
  std::array<bool, kChannels> lane_detected_{};
  std::array<std::uint64_t, kChannels> vehicle_count_{};
};

}  // namespace citysim

#endif  // CITYSIM_STREETLIGHT_H_
