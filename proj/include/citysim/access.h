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

#ifndef CITYSIM_ACCESS_H_
#define CITYSIM_ACCESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "citysim/kernel.h"
#include "citysim/telemetry.h"

namespace citysim {

// Exact-match template store with ids 1..capacity.
class FingerprintStore {
 public:
  static constexpr int kCapacity = 1024;

  // Returns the smallest free id. Throws kStoreFull or kDuplicateTemplate.
  int Enroll(const std::string& token);
  std::optional<int> Match(const std::string& token) const;
  std::size_t size() const { return by_id_.size(); }

 private:
  std::map<int, std::string> by_id_;
  std::map<std::string, int, std::less<>> by_token_;
};

inline constexpr Millis kDoorOpenTime{5000};

// Fingerprint-gated door; closes by itself 5 s after the latest match.
class FingerprintDoor : public Device {
 public:
  static constexpr std::string_view kId = "door";

  FingerprintDoor(Kernel& kernel, Telemetry& telemetry)
      : kernel_(kernel), telemetry_(telemetry) {}

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  int Enroll(const std::string& token) { return store_.Enroll(token); }
  // On a match the door opens and the close timer moves to at + 5 s.
  std::optional<int> Verify(const std::string& token, VirtualTime at);
  void OnCloseTimer(std::uint64_t token, VirtualTime at);

  bool is_open() const { return open_; }
  std::optional<VirtualTime> close_at() const { return close_at_; }
  const FingerprintStore& store() const { return store_; }

 private:
  Kernel& kernel_;
  Telemetry& telemetry_;
  FingerprintStore store_;
  bool open_ = false;
  std::optional<VirtualTime> close_at_;
  std::uint64_t close_token_ = 0;
  std::string last_result_ = "none";
};

struct SecurityConfig {
  int smoke_threshold = 400;        // reading > threshold is fire
  double presence_range_cm = 10.0;  // reading < range while armed is an intruder
};

// Armed-mode intrusion alarm plus smoke alarm that also opens the window.
// Alarm rows go to the home_alarm table as (thief_alarm, fire_alarm).
class SecuritySystem : public Device {
 public:
  static constexpr std::string_view kId = "security";

  SecuritySystem(Telemetry& telemetry, SecurityConfig config = {});

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  // Disarming clears both alarm causes.
  void SetArmed(bool armed, VirtualTime at);
  void OnPresenceSample(double distance_cm, VirtualTime at);
  // Throws kOutOfRange for readings outside 0..1023.
  void OnSmokeSample(int value, VirtualTime at);

  bool armed() const { return armed_; }
  bool alarm_on() const { return thief_ || fire_; }
  bool thief_alarm() const { return thief_; }
  bool fire_alarm() const { return fire_; }
  bool window_open() const { return window_open_; }
  const SecurityConfig& config() const { return config_; }

 private:
  void SetAlarms(bool thief, bool fire, VirtualTime at);

  Telemetry& telemetry_;
  SecurityConfig config_;
  bool armed_ = false;
  bool thief_ = false;
  bool fire_ = false;
  bool window_open_ = false;
};

}  // namespace citysim

#endif  // CITYSIM_ACCESS_H_
