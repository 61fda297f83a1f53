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

#ifndef CITYSIM_PARKING_H_
#define CITYSIM_PARKING_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "citysim/kernel.h"
#include "citysim/lcd.h"
#include "citysim/telemetry.h"

namespace citysim {

inline constexpr Millis kGateOpenTime{5000};

// Uppercased hex digits. Throws kMalformedUid for empty or non-hex text.
std::string NormalizeUid(std::string_view uid);

// RFID-gated private entrance and four-slot smart parking sharing one gate
// and one 16x2 LCD. LCD row 0 carries the gate message, row 1 the number of
// free slots. Slot indicators are RED when free and GREEN when occupied.
class Parking : public Device {
 public:
  static constexpr std::string_view kId = "parking";
  static constexpr int kSlots = 4;

  Parking(Kernel& kernel, Telemetry& telemetry);

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  void AddCard(std::string_view uid, std::string slot_label);
  // Returns the assigned slot label when the card is whitelisted.
  std::optional<std::string> OnCardScan(std::string_view uid, VirtualTime at);
  void OnEntryPresence(bool detected, VirtualTime at);
  // Throws kInvalidSlot.
  void OnSlotPresence(int slot, bool occupied, VirtualTime at);
  void OnCloseTimer(std::uint64_t token, VirtualTime at);

  int available() const;
  bool occupied(int slot) const;
  bool gate_open() const { return gate_open_; }
  std::optional<VirtualTime> gate_close_at() const { return close_at_; }
  const LcdGrid& lcd() const { return lcd_; }

 private:
  void OpenGate(VirtualTime at);
  void RefreshCount();

  Kernel& kernel_;
  Telemetry& telemetry_;
  std::map<std::string, std::string, std::less<>> whitelist_;
  std::array<bool, kSlots> occupied_{};
  bool gate_open_ = false;
  std::optional<VirtualTime> close_at_;
  std::uint64_t close_token_ = 0;
  LcdGrid lcd_;
};

}  // namespace citysim

#endif  // CITYSIM_PARKING_H_
