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

#include "citysim/parking.h"

#include <algorithm>
#include <cctype>

namespace citysim {
namespace {

constexpr std::string_view kCloseTimer = "gate";
constexpr std::string_view kWaitingMessage = "Show your card";

void CheckSlot(int slot) {
  if (slot < 1 || slot > Parking::kSlots) {
    throw Error(ErrorCode::kInvalidSlot,
                "slot " + std::to_string(slot) + " is not in 1..4");
  }
}

}  // namespace

std::string NormalizeUid(std::string_view uid) {
  if (uid.empty()) throw Error(ErrorCode::kMalformedUid, "card uid is empty");
  std::string out;
  out.reserve(uid.size());
  for (char c : uid) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::kMalformedUid,
                  "card uid '" + std::string(uid) + "' is not hex");
    }
    out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

Parking::Parking(Kernel& kernel, Telemetry& telemetry)
    : kernel_(kernel), telemetry_(telemetry) {
  lcd_.SetRow(0, kWaitingMessage);
  RefreshCount();
}

void Parking::AddCard(std::string_view uid, std::string slot_label) {
  whitelist_[NormalizeUid(uid)] = std::move(slot_label);
}

int Parking::available() const {
  return kSlots - static_cast<int>(std::count(occupied_.begin(), occupied_.end(), true));
}

bool Parking::occupied(int slot) const {
  CheckSlot(slot);
  return occupied_[slot - 1];
}

void Parking::RefreshCount() {
  lcd_.SetRow(1, "Available: " + std::to_string(available()));
}

void Parking::OpenGate(VirtualTime at) {
  gate_open_ = true;
  close_at_ = at + kGateOpenTime;
  kernel_.Schedule(*close_at_, std::string(kId),
                   TimerExpiry{std::string(kCloseTimer), ++close_token_});
}

std::optional<std::string> Parking::OnCardScan(std::string_view uid,
                                               VirtualTime at) {
  const std::string key = NormalizeUid(uid);
  auto it = whitelist_.find(key);
  if (it == whitelist_.end()) {
    lcd_.SetRow(0, kWaitingMessage);
    telemetry_.Record(Table::kPrivateParking, at, {"denied"});
    return std::nullopt;
  }
  OpenGate(at);
  lcd_.SetRow(0, "Spot: " + it->second);
  telemetry_.Record(Table::kPrivateParking, at, {"granted"});
  return it->second;
}

void Parking::OnEntryPresence(bool detected, VirtualTime at) {
  if (detected) OpenGate(at);
}

void Parking::OnSlotPresence(int slot, bool occupied, VirtualTime at) {
  CheckSlot(slot);
  if (occupied_[slot - 1] == occupied) return;
  occupied_[slot - 1] = occupied;
  RefreshCount();
  telemetry_.Record(Table::kSmartParking, at,
                    {std::to_string(slot), occupied ? "1" : "0"});
}

void Parking::OnCloseTimer(std::uint64_t token, VirtualTime) {
  if (!gate_open_ || token != close_token_) return;  // superseded
  gate_open_ = false;
  close_at_.reset();
  lcd_.SetRow(0, kWaitingMessage);
}

void Parking::Handle(const SimEvent& event) {
  if (const auto* timer = std::get_if<TimerExpiry>(&event.payload)) {
    if (timer->timer == kCloseTimer) OnCloseTimer(timer->token, event.at);
    return;
  }
  const auto* stimulus = std::get_if<Stimulus>(&event.payload);
  if (stimulus == nullptr) {
    throw Error(ErrorCode::kUnknownCommand, "parking does not take frames");
  }
  const Json& args = stimulus->args;
  if (stimulus->name == "card") {
    OnCardScan(args.at("uid").get<std::string>(), event.at);
  } else if (stimulus->name == "entry") {
    OnEntryPresence(args.at("detected").get<bool>(), event.at);
  } else if (stimulus->name == "slot") {
    OnSlotPresence(args.at("slot").get<int>(), args.at("occupied").get<bool>(),
                   event.at);
  } else {
    throw Error(ErrorCode::kUnknownCommand,
                "parking has no stimulus '" + stimulus->name + "'");
  }
}

OrderedJson Parking::Snapshot(VirtualTime) const {
  OrderedJson slots = OrderedJson::object();
  for (int slot = 1; slot <= kSlots; ++slot) {
    const bool taken = occupied_[slot - 1];
    slots[std::to_string(slot)] = {{"occupied", taken},
                                   {"indicator", taken ? "GREEN" : "RED"}};
  }
  return OrderedJson{
      {"available", available()},
      {"occupied_count", kSlots - available()},
      {"gate", gate_open_ ? "OPEN" : "CLOSED"},
      {"gate_close_at_ms",
       close_at_ ? OrderedJson(ToMillis(*close_at_)) : OrderedJson()},
      {"slots", std::move(slots)},
      {"lcd", OrderedJson::array({lcd_.row(0), lcd_.row(1)})}};
}

}  // namespace citysim
