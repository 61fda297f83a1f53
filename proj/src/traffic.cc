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

#include "citysim/traffic.h"

#include <cctype>

namespace citysim {
namespace {

constexpr std::string_view kPhaseTimer = "phase";

void CheckRoad(int road) {
  if (road < 1 || road > TrafficController::kRoads) {
    throw Error(ErrorCode::kInvalidRoad,
                "road " + std::to_string(road) + " is not in 1..4");
  }
}

std::string Upper(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view SignalName(Signal signal) {
  switch (signal) {
    case Signal::kOff: return "OFF";
    case Signal::kRed: return "RED";
    case Signal::kGreen: return "GREEN";
  }
  return "OFF";
}

std::string_view PlateStatusName(PlateStatus status) {
  return status == PlateStatus::kRegistered ? "REGISTERED" : "CRIMINAL";
}

std::string_view PlateVerdictName(PlateVerdict verdict) {
  switch (verdict) {
    case PlateVerdict::kRegistered: return "registered";
    case PlateVerdict::kUnregistered: return "unregistered";
    case PlateVerdict::kCriminal: return "criminal";
  }
  return "unregistered";
}

PlateStatus ParsePlateStatus(std::string_view text) {
  const std::string upper = Upper(text);
  if (upper == "REGISTERED") return PlateStatus::kRegistered;
  if (upper == "CRIMINAL") return PlateStatus::kCriminal;
  throw Error(ErrorCode::kMalformedField,
              "plate status must be REGISTERED or CRIMINAL, got '" +
                  std::string(text) + "'");
}

std::string NormalizePlate(std::string_view plate) {
  std::string out;
  bool pending_space = false;
  for (char c : plate) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

const PlateRecord& PlateRegistry::Register(std::string_view plate,
                                           std::string owner,
                                           PlateStatus status) {
  std::string key = NormalizePlate(plate);
  if (key.empty()) throw Error(ErrorCode::kEmptyPlate, "plate text is empty");
  if (entries_.count(key) != 0) {
    throw Error(ErrorCode::kDuplicatePlate, "plate '" + key + "' already registered");
  }
  PlateRecord record{key, std::move(owner), status};
  return entries_.emplace(std::move(key), std::move(record)).first->second;
}

const PlateRecord* PlateRegistry::Find(std::string_view plate) const {
  auto it = entries_.find(NormalizePlate(plate));
  return it == entries_.end() ? nullptr : &it->second;
}

Signal TrafficController::signal(int road) const {
  CheckRoad(road);
  return signals_[road - 1];
}

bool TrafficController::present(int road) const {
  CheckRoad(road);
  return present_[road - 1];
}

Millis TrafficController::countdown(VirtualTime now) const {
  if (green_road_ == 0 || !phase_end_ || *phase_end_ <= now) return Millis{0};
  return *phase_end_ - now;
}

void TrafficController::SetGreenDuration(int road, Millis duration) {
  CheckRoad(road);
  if (duration.count() <= 0) {
    throw Error(ErrorCode::kConfigError, "green duration must be positive");
  }
  green_time_[road - 1] = duration;
}

void TrafficController::OnApproachPresence(int road, bool present,
                                           VirtualTime at) {
  CheckRoad(road);
  present_[road - 1] = present;
  if (present && !phase_end_ && !decision_pending_) {
    // Decide at this same instant, after any other reports already queued
    // for it.
    decision_pending_ = true;
    kernel_.Schedule(at, std::string(kId),
                     TimerExpiry{std::string(kPhaseTimer), ++phase_token_});
  }
}

void TrafficController::OnPhaseTimer(std::uint64_t token, VirtualTime at) {
  if (token != phase_token_) return;  // stale
  Decide(at);
}

void TrafficController::Decide(VirtualTime at) {
  decision_pending_ = false;
  int chosen = 0;
  for (int step = 1; step <= kRoads; ++step) {
    const int road = (last_green_ + step - 1) % kRoads + 1;
    if (present_[road - 1]) {
      chosen = road;
      break;
    }
  }

  std::array<Signal, kRoads> next{};
  if (chosen == 0) {
    next.fill(Signal::kOff);
    green_road_ = 0;
    phase_end_.reset();
    SetSignals(next, at);
    return;
  }

  next.fill(Signal::kRed);
  next[chosen - 1] = Signal::kGreen;
  green_road_ = chosen;
  last_green_ = chosen;
  green_history_.push_back(chosen);
  green_starts_.emplace_back(chosen, at);
  phase_end_ = at + green_time_[chosen - 1];
  kernel_.Schedule(*phase_end_, std::string(kId),
                   TimerExpiry{std::string(kPhaseTimer), ++phase_token_});
  SetSignals(next, at);
}

void TrafficController::SetSignals(const std::array<Signal, kRoads>& next,
                                   VirtualTime at) {
  for (int i = 0; i < kRoads; ++i) {
    if (signals_[i] == next[i]) continue;
    signals_[i] = next[i];
    telemetry_.Record(Table::kTraffic, at,
                      {std::to_string(i + 1), std::string(SignalName(next[i]))});
  }
}

PlateResult TrafficController::OnPlateRead(int road, std::string_view plate,
                                           VirtualTime at) {
  CheckRoad(road);
  const std::string normalized = NormalizePlate(plate);
  if (normalized.empty()) throw Error(ErrorCode::kEmptyPlate, "plate text is empty");

  PlateResult result;
  if (const PlateRecord* record = registry_.Find(normalized)) {
    result.record = *record;
    result.verdict = record->status == PlateStatus::kCriminal
                         ? PlateVerdict::kCriminal
                         : PlateVerdict::kRegistered;
  }
  if (result.verdict != PlateVerdict::kRegistered) plate_alarm_ = true;
  telemetry_.Record(Table::kPlate, at,
                    {std::to_string(road), normalized,
                     std::string(PlateVerdictName(result.verdict))});
  last_plate_ = std::make_pair(normalized, result);
  return result;
}

void TrafficController::Handle(const SimEvent& event) {
  if (const auto* timer = std::get_if<TimerExpiry>(&event.payload)) {
    if (timer->timer == kPhaseTimer) OnPhaseTimer(timer->token, event.at);
    return;
  }
  const auto* stimulus = std::get_if<Stimulus>(&event.payload);
  if (stimulus == nullptr) {
    throw Error(ErrorCode::kUnknownCommand, "traffic does not take frames");
  }
  const Json& args = stimulus->args;
  if (stimulus->name == "presence") {
    OnApproachPresence(args.at("road").get<int>(), args.at("present").get<bool>(),
                       event.at);
  } else if (stimulus->name == "plate") {
    OnPlateRead(args.at("road").get<int>(), args.at("plate").get<std::string>(),
                event.at);
  } else if (stimulus->name == "register_plate") {
    RegisterPlate(args.at("plate").get<std::string>(),
                  args.value("owner", std::string()),
                  ParsePlateStatus(args.value("status", std::string("REGISTERED"))));
  } else if (stimulus->name == "reset_alarm") {
    ResetPlateAlarm();
  } else {
    throw Error(ErrorCode::kUnknownCommand,
                "traffic has no stimulus '" + stimulus->name + "'");
  }
}

OrderedJson TrafficController::Snapshot(VirtualTime now) const {
  OrderedJson signals = OrderedJson::object();
  OrderedJson present = OrderedJson::object();
  for (int road = 1; road <= kRoads; ++road) {
    signals[std::to_string(road)] = SignalName(signals_[road - 1]);
    present[std::to_string(road)] = present_[road - 1];
  }
  OrderedJson last_plate;
  if (last_plate_) {
    const auto& [plate, result] = *last_plate_;
    last_plate = OrderedJson{{"plate", plate},
                             {"verdict", PlateVerdictName(result.verdict)},
                             {"owner", result.record ? result.record->owner : ""}};
  }
  return OrderedJson{{"green", green_road_},
                     {"green_road", green_road_},
                     {"countdown_ms", countdown(now).count()},
                     {"signals", std::move(signals)},
                     {"present", std::move(present)},
                     {"green_history", green_history_},
                     {"plate_alarm", plate_alarm_},
                     {"last_plate", std::move(last_plate)},
                     {"registry_size", registry_.size()}};
}

}  // namespace citysim
