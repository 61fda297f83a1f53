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

#ifndef CITYSIM_CITY_H_
#define CITYSIM_CITY_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/access.h"
#include "citysim/accident.h"
#include "citysim/home.h"
#include "citysim/info_display.h"
#include "citysim/kernel.h"
#include "citysim/parking.h"
#include "citysim/streetlight.h"
#include "citysim/telemetry.h"
#include "citysim/traffic.h"
#include "citysim/transports.h"

namespace citysim {

struct CityConfig {
  SimConfig sim;
  StreetlightConfig streetlight;
  SecurityConfig security;
  AccidentConfig accident;
  Millis env_period = kEnvSamplePeriod;
  std::map<std::string, std::string> whitelist;  // card uid -> slot label
  std::vector<PlateRecord> plates;
  std::vector<std::string> fingerprints;
  std::map<std::string, Millis> latency;       // per link id
  std::map<std::string, double> loss;          // per link id
  std::optional<Millis> sms_latency;
  std::map<int, Millis> green_ms;              // per road
};

// Builds a config from a scenario "config" object. Unknown keys and bad
// values throw kConfigError.
CityConfig ParseCityConfig(const Json& object);

// The whole simulated city: kernel, transports, telemetry and every device,
// wired together.
class City {
 public:
  explicit City(CityConfig config = {});

  City(const City&) = delete;
  City& operator=(const City&) = delete;

  // Schedules exactly one kernel event for a catalogued (target, event)
  // pair: a direct stimulus, or a send over the event's link. Returns its
  // sequence number. Throws kUnknownTarget, kUnknownCommand, kMalformedField
  // or kPastTimestamp.
  std::uint64_t Inject(VirtualTime at, std::string_view target,
                       std::string_view event, const Json& args);

  // Dotted path into a device snapshot ("parking.available",
  // "traffic.signals.2", "kernel.now_ms"). Throws kUnknownQueryPath.
  Json Query(std::string_view path) const;
  // {device-id: snapshot} for every device.
  OrderedJson SnapshotAll() const;
  std::vector<std::string> DeviceIds() const { return kernel_.DeviceIds(); }

  Kernel& kernel() { return kernel_; }
  const Kernel& kernel() const { return kernel_; }
  Telemetry& telemetry() { return telemetry_; }
  const Telemetry& telemetry() const { return telemetry_; }
  Transports& transports() { return transports_; }
  const Transports& transports() const { return transports_; }

  Streetlight& streetlight() { return streetlight_; }
  HomeAutomation& home() { return home_; }
  FingerprintDoor& door() { return door_; }
  SecuritySystem& security() { return security_; }
  TrafficController& traffic() { return traffic_; }
  Parking& parking() { return parking_; }
  AccidentManager& accident() { return accident_; }
  InfoDisplay& info() { return info_; }
  const SmsNetwork& sms() const { return transports_.sms(); }

 private:
  Kernel kernel_;
  Telemetry telemetry_;
  Transports transports_;
  Transmitter transmitter_;
  Streetlight streetlight_;
  HomeAutomation home_;
  FingerprintDoor door_;
  SecuritySystem security_;
  TrafficController traffic_;
  Parking parking_;
  AccidentManager accident_;
  InfoDisplay info_;
};

}  // namespace citysim

#endif  // CITYSIM_CITY_H_
