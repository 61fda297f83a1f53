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

#ifndef CITYSIM_INFO_DISPLAY_H_
#define CITYSIM_INFO_DISPLAY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "citysim/kernel.h"
#include "citysim/lcd.h"
#include "citysim/telemetry.h"

namespace citysim {

inline constexpr Millis kEnvSamplePeriod{10000};
inline constexpr Millis kMarqueeStep{500};
inline constexpr std::size_t kNoticeWindow = 2 * LcdGrid::kColumns;

struct EnvSample {
  double temp_c = 0.0;
  double rh_pct = 0.0;
};

// "TEMP: 25.0C" / "HUM: 60%".
std::string FormatTemperatureRow(double temp_c);
std::string FormatHumidityRow(double rh_pct);

// The two notice rows for `message` scrolled by `offset` columns. Messages
// of up to 32 characters wrap across both rows and ignore the offset; longer
// ones scroll over the cycle message + 32 spaces.
LcdGrid RenderNotice(std::string_view message, std::size_t offset);

// Display 1 shows temperature/humidity refreshed every sample period;
// display 2 shows operator notices.
//
// A sensor reading updates the ambient value. The first accepted reading is
// shown at once and starts a self-scheduled refresh that re-reads the
// ambient value every period. A period of zero shows every reading as it
// arrives instead.
class InfoDisplay : public Device {
 public:
  static constexpr std::string_view kId = "info";

  InfoDisplay(Kernel& kernel, Telemetry& telemetry,
              Millis sample_period = kEnvSamplePeriod);

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  // Throws kOutOfRange outside 0..50 C / 20..90 %.
  void OnEnvSample(double temp_c, double rh_pct, VirtualTime at);
  // Throws kEmptyMessage or kMalformedField (non-printable characters).
  void OnTextMessage(std::string_view message, VirtualTime at);
  void OnSampleTimer(std::uint64_t token, VirtualTime at);
  void OnScrollTimer(std::uint64_t token, VirtualTime at);

  const LcdGrid& env_grid() const { return env_grid_; }
  const LcdGrid& notice_grid() const { return notice_grid_; }
  const std::optional<EnvSample>& last_sample() const { return last_sample_; }
  std::size_t scroll_offset() const { return scroll_offset_; }
  Millis sample_period() const { return sample_period_; }

 private:
  void Show(const EnvSample& sample, VirtualTime at);

  Kernel& kernel_;
  Telemetry& telemetry_;
  Millis sample_period_;
  LcdGrid env_grid_;
  LcdGrid notice_grid_;
  std::optional<EnvSample> ambient_;
  std::optional<EnvSample> last_sample_;
  std::uint64_t sample_token_ = 0;
  bool sampling_ = false;
  std::string notice_;
  std::size_t scroll_offset_ = 0;
  std::uint64_t scroll_token_ = 0;
};

}  // namespace citysim

#endif  // CITYSIM_INFO_DISPLAY_H_
