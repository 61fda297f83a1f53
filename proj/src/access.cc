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

#include "citysim/access.h"

namespace citysim {
namespace {

constexpr std::string_view kCloseTimer = "close";

}  // namespace

int FingerprintStore::Enroll(const std::string& token) {
  if (by_token_.count(token) != 0) {
    throw Error(ErrorCode::kDuplicateTemplate, "fingerprint already enrolled");
  }
  if (by_id_.size() >= static_cast<std::size_t>(kCapacity)) {
    throw Error(ErrorCode::kStoreFull, "fingerprint store holds 1024 ids");
  }
  int id = 1;
  for (const auto& [used, ignored] : by_id_) {
    if (used != id) break;
    ++id;
  }
  by_id_.emplace(id, token);
  by_token_.emplace(token, id);
  return id;
}

std::optional<int> FingerprintStore::Match(const std::string& token) const {
  auto it = by_token_.find(token);
  if (it == by_token_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FingerprintDoor::Verify(const std::string& token,
                                           VirtualTime at) {
  const auto match = store_.Match(token);
  if (!match) {
    last_result_ = "denied";
    telemetry_.Record(Table::kDoor, at, {"denied"});
    return std::nullopt;
  }
  const bool was_open = open_;
  open_ = true;
  close_at_ = at + kDoorOpenTime;
  ++close_token_;
  kernel_.Schedule(*close_at_, std::string(kId),
                   TimerExpiry{std::string(kCloseTimer), close_token_});
  last_result_ = "open";
  if (!was_open) telemetry_.Record(Table::kDoor, at, {"open"});
  return match;
}

void FingerprintDoor::OnCloseTimer(std::uint64_t token, VirtualTime at) {
  if (!open_ || token != close_token_) return;  // superseded
  open_ = false;
  close_at_.reset();
  telemetry_.Record(Table::kDoor, at, {"closed"});
}

void FingerprintDoor::Handle(const SimEvent& event) {
  if (const auto* stimulus = std::get_if<Stimulus>(&event.payload)) {
    const std::string token = stimulus->args.at("token").get<std::string>();
    if (stimulus->name == "enroll") {
      Enroll(token);
    } else if (stimulus->name == "verify") {
      Verify(token, event.at);
    } else {
      throw Error(ErrorCode::kUnknownCommand,
                  "door has no stimulus '" + stimulus->name + "'");
    }
  } else if (const auto* timer = std::get_if<TimerExpiry>(&event.payload)) {
    if (timer->timer == kCloseTimer) OnCloseTimer(timer->token, event.at);
  }
}

OrderedJson FingerprintDoor::Snapshot(VirtualTime) const {
  return OrderedJson{
      {"state", open_ ? "OPEN" : "CLOSED"},
      {"enrolled", store_.size()},
      {"last_result", last_result_},
      {"close_at_ms", close_at_ ? OrderedJson(ToMillis(*close_at_)) : OrderedJson()}};
}

SecuritySystem::SecuritySystem(Telemetry& telemetry, SecurityConfig config)
    : telemetry_(telemetry), config_(config) {
  if (config_.smoke_threshold < 0 || config_.smoke_threshold > 1023) {
    throw Error(ErrorCode::kConfigError, "smoke threshold must be in 0..1023");
  }
}

void SecuritySystem::SetAlarms(bool thief, bool fire, VirtualTime at) {
  if (thief == thief_ && fire == fire_) return;
  thief_ = thief;
  fire_ = fire;
  telemetry_.Record(Table::kHomeAlarm, at,
                    {thief_ ? "ON" : "OFF", fire_ ? "ON" : "OFF"});
}

void SecuritySystem::SetArmed(bool armed, VirtualTime at) {
  armed_ = armed;
  if (!armed) SetAlarms(false, false, at);
}

void SecuritySystem::OnPresenceSample(double distance_cm, VirtualTime at) {
  if (!(distance_cm >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "presence distance must be non-negative");
  }
  if (armed_ && distance_cm < config_.presence_range_cm) {
    SetAlarms(true, fire_, at);
  }
}

void SecuritySystem::OnSmokeSample(int value, VirtualTime at) {
  if (value < 0 || value > 1023) {
    throw Error(ErrorCode::kOutOfRange,
                "smoke sample " + std::to_string(value) + " is not in 0..1023");
  }
  if (value > config_.smoke_threshold) {
    window_open_ = true;
    SetAlarms(thief_, true, at);
  }
}

void SecuritySystem::Handle(const SimEvent& event) {
  const auto* stimulus = std::get_if<Stimulus>(&event.payload);
  if (stimulus == nullptr) {
    throw Error(ErrorCode::kUnknownCommand, "security only accepts stimuli");
  }
  const Json& args = stimulus->args;
  if (stimulus->name == "arm") {
    SetArmed(args.at("armed").get<bool>(), event.at);
  } else if (stimulus->name == "presence") {
    OnPresenceSample(args.at("distance_cm").get<double>(), event.at);
  } else if (stimulus->name == "smoke") {
    OnSmokeSample(args.at("value").get<int>(), event.at);
  } else {
    throw Error(ErrorCode::kUnknownCommand,
                "security has no stimulus '" + stimulus->name + "'");
  }
}

OrderedJson SecuritySystem::Snapshot(VirtualTime) const {
  return OrderedJson{{"armed", armed_},
                     {"alarm", alarm_on() ? "ON" : "OFF"},
                     {"thief_alarm", thief_ ? "ON" : "OFF"},
                     {"fire_alarm", fire_ ? "ON" : "OFF"},
                     {"window", window_open_ ? "OPEN" : "CLOSED"},
                     {"smoke_threshold", config_.smoke_threshold}};
}

}  // namespace citysim
