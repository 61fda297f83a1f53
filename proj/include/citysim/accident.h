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

#ifndef CITYSIM_ACCIDENT_H_
#define CITYSIM_ACCIDENT_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "citysim/kernel.h"
#include "citysim/nmea.h"
#include "citysim/telemetry.h"
#include "citysim/transports.h"

namespace citysim {

enum class Department { kFire, kPolice, kAmbulance };

inline constexpr std::array<Department, 3> kAllDepartments = {
    Department::kFire, Department::kPolice, Department::kAmbulance};

std::string_view DepartmentName(Department department);  // "fire", ...
// Throws kMalformedField.
Department ParseDepartment(std::string_view name);

// SMS bodies, bit-exact:
//   flame trigger: "FIRE lat=<d.dddd> lon=<d.dddd>"
//   button press:  "<KIND> ALERT lat=<d.dddd> lon=<d.dddd>"
// With no cached fix the coordinates are replaced by "LOCATION UNKNOWN".
std::string FlameAlertBody(const std::optional<GpsFix>& fix);
std::string ButtonAlertBody(Department department,
                            const std::optional<GpsFix>& fix);

struct AccidentConfig {
  int flame_threshold = 400;  // reading > threshold is fire
  std::map<Department, std::string> directory;
};

// Roadside fire detector (pump + alarm + SMS to the fire brigade) and
// police/ambulance/fire buttons that text the cached GPS position. Pump and
// alarm latch until Reset(); a flame reading only dispatches while they are
// not already latched.
class AccidentManager : public Device {
 public:
  static constexpr std::string_view kId = "accident";

  AccidentManager(Telemetry& telemetry, Transports& transports,
                  AccidentConfig config = {});

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  void OnGpsFix(const GpsFix& fix);
  // Throws kOutOfRange or kUnknownDepartment.
  void OnFlameSample(int value, VirtualTime at);
  // Throws kUnknownDepartment when the directory has no number for it.
  void OnButtonPress(Department department, VirtualTime at);
  void Reset();

  void SetNumber(Department department, std::string number);

  bool pump_on() const { return pump_; }
  bool alarm_on() const { return alarm_; }
  std::uint64_t counter(Department department) const;
  const std::optional<GpsFix>& last_fix() const { return last_fix_; }
  const AccidentConfig& config() const { return config_; }

 private:
  void Dispatch(Department department, std::string body, VirtualTime at);

  Telemetry& telemetry_;
  Transports& transports_;
  AccidentConfig config_;
  bool pump_ = false;
  bool alarm_ = false;
  std::optional<GpsFix> last_fix_;
  std::map<Department, std::uint64_t> counters_;
};

}  // namespace citysim

#endif  // CITYSIM_ACCIDENT_H_
