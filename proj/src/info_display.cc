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

#include "citysim/info_display.h"

#include <cmath>
#include <cstdio>

namespace citysim {
namespace {

constexpr std::string_view kSampleTimer = "sample";
constexpr std::string_view kScrollTimer = "scroll";

}  // namespace

std::string FormatTemperatureRow(double temp_c) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "TEMP: %.1fC", temp_c);
  return buf;
}

std::string FormatHumidityRow(double rh_pct) {
  return "HUM: " + std::to_string(std::llround(rh_pct)) + "%";
}

LcdGrid RenderNotice(std::string_view message, std::size_t offset) {
  LcdGrid grid;
  if (message.size() <= kNoticeWindow) {
    grid.SetRow(0, message.substr(0, LcdGrid::kColumns));
    if (message.size() > LcdGrid::kColumns) {
      grid.SetRow(1, message.substr(LcdGrid::kColumns));
    }
    return grid;
  }
  const std::string cycle = std::string(message) + std::string(kNoticeWindow, ' ');
  std::string window(kNoticeWindow, ' ');
  for (std::size_t i = 0; i < kNoticeWindow; ++i) {
    window[i] = cycle[(offset + i) % cycle.size()];
  }
  grid.SetRow(0, std::string_view(window).substr(0, LcdGrid::kColumns));
  grid.SetRow(1, std::string_view(window).substr(LcdGrid::kColumns));
  return grid;
}

InfoDisplay::InfoDisplay(Kernel& kernel, Telemetry& telemetry,
                         Millis sample_period)
    : kernel_(kernel), telemetry_(telemetry), sample_period_(sample_period) {
  if (sample_period_.count() < 0) {
    throw Error(ErrorCode::kConfigError, "sample period must be non-negative");
  }
}

void InfoDisplay::Show(const EnvSample& sample, VirtualTime at) {
  last_sample_ = sample;
  env_grid_.SetRow(0, FormatTemperatureRow(sample.temp_c));
  env_grid_.SetRow(1, FormatHumidityRow(sample.rh_pct));
  char temp[32];
  std::snprintf(temp, sizeof(temp), "%.1f", sample.temp_c);
  telemetry_.Record(Table::kInfoEnv, at,
                    {temp, std::to_string(std::llround(sample.rh_pct))});
}

void InfoDisplay::OnEnvSample(double temp_c, double rh_pct, VirtualTime at) {
  if (!(temp_c >= 0.0 && temp_c <= 50.0) || !(rh_pct >= 20.0 && rh_pct <= 90.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "sample outside 0..50 C / 20..90 % sensor range");
  }
  ambient_ = EnvSample{temp_c, rh_pct};
  if (sample_period_.count() == 0) {
    Show(*ambient_, at);
    return;
  }
  if (sampling_) return;  // picked up at the next refresh
  sampling_ = true;
  Show(*ambient_, at);
  kernel_.Schedule(at + sample_period_, std::string(kId),
                   TimerExpiry{std::string(kSampleTimer), ++sample_token_});
}

void InfoDisplay::OnSampleTimer(std::uint64_t token, VirtualTime at) {
  if (token != sample_token_ || !ambient_) return;
  Show(*ambient_, at);
  kernel_.Schedule(at + sample_period_, std::string(kId),
                   TimerExpiry{std::string(kSampleTimer), ++sample_token_});
}

void InfoDisplay::OnTextMessage(std::string_view message, VirtualTime at) {
  if (message.empty()) throw Error(ErrorCode::kEmptyMessage, "notice is empty");
  for (char c : message) {
    if (!IsPrintable(c)) {
      throw Error(ErrorCode::kMalformedField,
                  "notice contains a non-printable character");
    }
  }
  notice_ = std::string(message);
  scroll_offset_ = 0;
  notice_grid_ = RenderNotice(notice_, scroll_offset_);
  ++scroll_token_;
  if (notice_.size() > kNoticeWindow) {
    kernel_.Schedule(at + kMarqueeStep, std::string(kId),
                     TimerExpiry{std::string(kScrollTimer), scroll_token_});
  }
  telemetry_.Record(Table::kInfoNotice, at, {notice_});
}

void InfoDisplay::OnScrollTimer(std::uint64_t token, VirtualTime at) {
  if (token != scroll_token_) return;
  scroll_offset_ = (scroll_offset_ + 1) % (notice_.size() + kNoticeWindow);
  notice_grid_ = RenderNotice(notice_, scroll_offset_);
  kernel_.Schedule(at + kMarqueeStep, std::string(kId),
                   TimerExpiry{std::string(kScrollTimer), scroll_token_});
}

void InfoDisplay::Handle(const SimEvent& event) {
  if (const auto* timer = std::get_if<TimerExpiry>(&event.payload)) {
    if (timer->timer == kSampleTimer) {
      OnSampleTimer(timer->token, event.at);
    } else if (timer->timer == kScrollTimer) {
      OnScrollTimer(timer->token, event.at);
    }
    return;
  }
  if (const auto* delivery = std::get_if<FrameDelivery>(&event.payload)) {
    const auto* serial = std::get_if<SerialBytes>(&delivery->frame);
    if (serial == nullptr) {
      throw Error(ErrorCode::kUnknownCommand, "info display expects serial text");
    }
    OnTextMessage(serial->bytes, event.at);
    return;
  }
  const auto& stimulus = std::get<Stimulus>(event.payload);
  const Json& args = stimulus.args;
  if (stimulus.name == "env") {
    OnEnvSample(args.at("temp_c").get<double>(), args.at("rh_pct").get<double>(),
                event.at);
  } else if (stimulus.name == "text") {
    OnTextMessage(args.at("msg").get<std::string>(), event.at);
  } else {
    throw Error(ErrorCode::kUnknownCommand,
                "info has no stimulus '" + stimulus.name + "'");
  }
}

OrderedJson InfoDisplay::Snapshot(VirtualTime) const {
  OrderedJson sample;
  if (last_sample_) {
    sample = OrderedJson{{"temp_c", last_sample_->temp_c},
                         {"rh_pct", last_sample_->rh_pct}};
  }
  return OrderedJson{
      {"env", OrderedJson::array({env_grid_.row(0), env_grid_.row(1)})},
      {"notice", OrderedJson::array({notice_grid_.row(0), notice_grid_.row(1)})},
      {"notice_text", notice_},
      {"scroll_offset", scroll_offset_},
      {"last_sample", std::move(sample)},
      {"sample_period_ms", sample_period_.count()}};
}

}  // namespace citysim
