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

#include "citysim/streetlight.h"

#include <string>

namespace citysim {
namespace {

constexpr std::string_view kHoldTimerPrefix = "hold:";

void CheckLane(int lane) {
  if (lane < 1 || lane > Streetlight::kChannels) {
    throw Error(ErrorCode::kOutOfRange,
                "lane " + std::to_string(lane) + " is not in 1..8");
  }
}

}  // namespace

std::string_view LightLevelName(LightLevel level) {
  switch (level) {
    case LightLevel::kOff: return "OFF";
    case LightLevel::kDim: return "DIM";
    case LightLevel::kHigh: return "HIGH";
  }
  return "OFF";
}

std::string_view LightModeName(LightMode mode) {
  return mode == LightMode::kManual ? "MANUAL" : "AUTOMATIC";
}

Streetlight::Streetlight(Kernel& kernel, Telemetry& telemetry,
                         StreetlightConfig config)
    : kernel_(kernel), telemetry_(telemetry), config_(config) {
  set_ldr_threshold(config.ldr_threshold);
}

void Streetlight::set_ldr_threshold(int threshold) {
  if (threshold < 0 || threshold > 1023) {
    throw Error(ErrorCode::kConfigError, "LDR threshold must be in 0..1023");
  }
  config_.ldr_threshold = threshold;
}

LightLevel Streetlight::level(int channel) const {
  CheckLane(channel);
  return channels_[channel - 1].level;
}

std::uint64_t Streetlight::vehicle_count(int lane) const {
  CheckLane(lane);
  return vehicle_count_[lane - 1];
}

Streetlight::Levels Streetlight::levels() const {
  Levels out{};
  for (int i = 0; i < kChannels; ++i) out[i] = channels_[i].level;
  return out;
}

void Streetlight::SetAll(LightLevel level) {
  for (auto& channel : channels_) {
    channel.level = level;
    channel.hold_until.reset();
  }
}

void Streetlight::RecordIfChanged(const Levels& before, VirtualTime at) {
  const Levels after = levels();
  if (after == before) return;
  std::vector<std::string> values;
  values.reserve(kChannels);
  for (LightLevel level : after) values.emplace_back(LightLevelName(level));
  telemetry_.Record(Table::kStreetlight, at, std::move(values));
}

void Streetlight::HandleCommand(char byte, VirtualTime at) {
  const Levels before = levels();
  switch (byte) {
    case 'A':
      mode_ = LightMode::kAutomatic;
      SetAll(is_night_ ? LightLevel::kDim : LightLevel::kOff);
      break;
    case 'H':
      mode_ = LightMode::kManual;
      SetAll(LightLevel::kHigh);
      break;
    case 'D':
      mode_ = LightMode::kManual;
      SetAll(LightLevel::kDim);
      break;
    case 'F':
    case '0':
      mode_ = LightMode::kManual;
      SetAll(LightLevel::kOff);
      break;
    case '1': case '2': case '3': case '4':
    case '5': case '6': case '7': case '8': {
      if (mode_ == LightMode::kAutomatic) {
        for (auto& channel : channels_) channel.hold_until.reset();
      }
      mode_ = LightMode::kManual;
      channels_[byte - '1'].level = LightLevel::kHigh;
      break;
    }
    default:
      throw Error(ErrorCode::kUnknownCommand,
                  "street-light command byte 0x" +
                      std::to_string(static_cast<unsigned char>(byte)) +
                      " is not in the command alphabet");
  }
  RecordIfChanged(before, at);
}

void Streetlight::OnLdrSample(int value, VirtualTime at) {
  if (value < 0 || value > 1023) {
    throw Error(ErrorCode::kOutOfRange,
                "LDR sample " + std::to_string(value) + " is not in 0..1023");
  }
  const bool night = value < config_.ldr_threshold;
  if (night == is_night_) return;
  is_night_ = night;
  if (mode_ != LightMode::kAutomatic) return;
  const Levels before = levels();
  SetAll(night ? LightLevel::kDim : LightLevel::kOff);
  RecordIfChanged(before, at);
}

void Streetlight::OnLanePresence(int lane, double distance_cm, VirtualTime at) {
  CheckLane(lane);
  if (!(distance_cm >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "lane distance must be non-negative");
  }
  const std::size_t i = lane - 1;
  const bool detected = distance_cm < config_.detection_cm;
  if (detected && !lane_detected_[i]) ++vehicle_count_[i];
  lane_detected_[i] = detected;

  if (!detected || mode_ != LightMode::kAutomatic || !is_night_) return;

  const Levels before = levels();
  Channel& channel = channels_[i];
  channel.level = LightLevel::kHigh;
  channel.hold_until = at + config_.hold;
  ++channel.hold_token;
  kernel_.Schedule(*channel.hold_until, std::string(kId),
                   TimerExpiry{std::string(kHoldTimerPrefix) + std::to_string(lane),
                               channel.hold_token});
  RecordIfChanged(before, at);
}

void Streetlight::OnHoldExpiry(int lane, std::uint64_t token, VirtualTime at) {
  CheckLane(lane);
  Channel& channel = channels_[lane - 1];
  if (!channel.hold_until || channel.hold_token != token) return;  // stale
  channel.hold_until.reset();
  if (mode_ != LightMode::kAutomatic || !is_night_) return;
  const Levels before = levels();
  channel.level = LightLevel::kDim;
  RecordIfChanged(before, at);
}

void Streetlight::Handle(const SimEvent& event) {
  if (const auto* stimulus = std::get_if<Stimulus>(&event.payload)) {
    const Json& args = stimulus->args;
    if (stimulus->name == "ldr") {
      OnLdrSample(args.at("value").get<int>(), event.at);
    } else if (stimulus->name == "lane") {
      OnLanePresence(args.at("lane").get<int>(),
                     args.at("distance_cm").get<double>(), event.at);
    } else if (stimulus->name == "command") {
      for (char byte : args.at("byte").get<std::string>()) {
        HandleCommand(byte, event.at);
      }
    } else {
      throw Error(ErrorCode::kUnknownCommand,
                  "streetlight has no stimulus '" + stimulus->name + "'");
    }
  } else if (const auto* delivery = std::get_if<FrameDelivery>(&event.payload)) {
    const auto* serial = std::get_if<SerialBytes>(&delivery->frame);
    if (serial == nullptr) {
      throw Error(ErrorCode::kUnknownCommand, "streetlight expects serial bytes");
    }
    // A bad byte inside a burst must not swallow the bytes after it.
    for (char byte : serial->bytes) {
      try {
        HandleCommand(byte, event.at);
      } catch (const Error& e) {
        kernel_.ReportDiagnostic(
            Diagnostic{event.at, std::string(kId), e.code(), e.what()});
      }
    }
  } else if (const auto* timer = std::get_if<TimerExpiry>(&event.payload)) {
    if (timer->timer.rfind(kHoldTimerPrefix, 0) == 0) {
      OnHoldExpiry(std::stoi(timer->timer.substr(kHoldTimerPrefix.size())),
                   timer->token, event.at);
    }
  }
}

OrderedJson Streetlight::Snapshot(VirtualTime) const {
  OrderedJson snapshot{{"mode", LightModeName(mode_)},
                       {"is_night", is_night_},
                       {"ldr_threshold", config_.ldr_threshold}};
  OrderedJson counts = OrderedJson::object();
  for (int i = 0; i < kChannels; ++i) {
    snapshot["light" + std::to_string(i + 1)] =
        LightLevelName(channels_[i].level);
    counts[std::to_string(i + 1)] = vehicle_count_[i];
  }
  snapshot["vehicle_count"] = std::move(counts);
  return snapshot;
}

}  // namespace citysim
