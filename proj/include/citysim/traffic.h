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

#ifndef CITYSIM_TRAFFIC_H_
#define CITYSIM_TRAFFIC_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/kernel.h"
#include "citysim/telemetry.h"

namespace citysim {

enum class Signal { kOff, kRed, kGreen };
enum class PlateStatus { kRegistered, kCriminal };
enum class PlateVerdict { kRegistered, kUnregistered, kCriminal };

std::string_view SignalName(Signal signal);
std::string_view PlateStatusName(PlateStatus status);
std::string_view PlateVerdictName(PlateVerdict verdict);
// "REGISTERED" / "CRIMINAL", case-insensitive. Throws kMalformedField.
PlateStatus ParsePlateStatus(std::string_view text);

// Uppercases, trims and collapses inner whitespace runs to one space.
std::string NormalizePlate(std::string_view plate);

struct PlateRecord {
  std::string plate;
  std::string owner;
  PlateStatus status = PlateStatus::kRegistered;
};

class PlateRegistry {
 public:
  // Throws kDuplicatePlate or kEmptyPlate.
  const PlateRecord& Register(std::string_view plate, std::string owner,
                              PlateStatus status);
  const PlateRecord* Find(std::string_view plate) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, PlateRecord, std::less<>> entries_;
};

inline constexpr Millis kGreenTime{20000};

struct PlateResult {
  PlateVerdict verdict = PlateVerdict::kUnregistered;
  std::optional<PlateRecord> record;
};

// Four-approach signal controller. At each phase boundary the roads are
// scanned round-robin starting after the last green road; the first road
// with traffic gets GREEN and every other road RED. With no traffic anywhere
// every head is OFF until a presence report arrives. Presence changes during
// a green interval are only read at its end.
class TrafficController : public Device {
 public:
  static constexpr std::string_view kId = "traffic";
  static constexpr int kRoads = 4;

  TrafficController(Kernel& kernel, Telemetry& telemetry)
      : kernel_(kernel), telemetry_(telemetry) {}

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  // Throws kInvalidRoad.
  void OnApproachPresence(int road, bool present, VirtualTime at);
  void OnPhaseTimer(std::uint64_t token, VirtualTime at);
  // Per-road override of the 20 s green interval.
  void SetGreenDuration(int road, Millis duration);

  const PlateRecord& RegisterPlate(std::string_view plate, std::string owner,
                                   PlateStatus status) {
    return registry_.Register(plate, std::move(owner), status);
  }
  PlateResult OnPlateRead(int road, std::string_view plate, VirtualTime at);
  void ResetPlateAlarm() { plate_alarm_ = false; }

  // 0 when no road is green.
  int green_road() const { return green_road_; }
  Signal signal(int road) const;
  bool present(int road) const;
  Millis countdown(VirtualTime now) const;
  const std::vector<int>& green_history() const { return green_history_; }
  // (road, start) for every green interval granted so far.
  const std::vector<std::pair<int, VirtualTime>>& green_starts() const {
    return green_starts_;
  }
  bool plate_alarm() const { return plate_alarm_; }
  const PlateRegistry& registry() const { return registry_; }

 private:
  void Decide(VirtualTime at);
  void SetSignals(const std::array<Signal, kRoads>& next, VirtualTime at);

  Kernel& kernel_;
  Telemetry& telemetry_;
  std::array<bool, kRoads> present_{};
  std::array<Signal, kRoads> signals_{Signal::kOff, Signal::kOff, Signal::kOff,
                                      Signal::kOff};
  std::array<Millis, kRoads> green_time_{kGreenTime, kGreenTime, kGreenTime,
                                         kGreenTime};
  int green_road_ = 0;
  int last_green_ = 0;
  std::optional<VirtualTime> phase_end_;
  bool decision_pending_ = false;
  std::uint64_t phase_token_ = 0;
  std::vector<int> green_history_;
  std::vector<std::pair<int, VirtualTime>> green_starts_;

  PlateRegistry registry_;
  bool plate_alarm_ = false;
  std::optional<std::pair<std::string, PlateResult>> last_plate_;
};

}  // namespace citysim

#endif  // CITYSIM_TRAFFIC_H_
