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

#include "citysim/time.h"

#include <charconv>
#include <cstdio>

#include "citysim/error.h"

namespace citysim {
namespace {

bool ReadInt(std::string_view text, std::size_t pos, std::size_t width,
             int& out) {
  if (pos + width > text.size()) return false;
  const char* first = text.data() + pos;
  const char* last = first + width;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool Expect(std::string_view text, std::size_t pos, char c) {
  return pos < text.size() && text[pos] == c;
}

}  // namespace

Epoch ParseEpoch(std::string_view text) {
  using namespace std::chrono;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0, ms = 0;
  bool ok = ReadInt(text, 0, 4, y) && Expect(text, 4, '-') &&
            ReadInt(text, 5, 2, mo) && Expect(text, 7, '-') &&
            ReadInt(text, 8, 2, d) &&
            (Expect(text, 10, 'T') || Expect(text, 10, ' ')) &&
            ReadInt(text, 11, 2, h) && Expect(text, 13, ':') &&
            ReadInt(text, 14, 2, mi) && Expect(text, 16, ':') &&
            ReadInt(text, 17, 2, s);
  std::size_t pos = 19;
  if (ok && Expect(text, pos, '.')) {
    ok = ReadInt(text, pos + 1, 3, ms);
    pos += 4;
  }
  if (ok && Expect(text, pos, 'Z')) ++pos;
  ok = ok && pos == text.size();
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ok || !ymd.ok() || h > 23 || mi > 59 || s > 59) {
    throw Error(ErrorCode::kConfigError,
                "epoch must be ISO-8601 YYYY-MM-DDTHH:MM:SS[.mmm][Z], got '" +
                    std::string(text) + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} +
         milliseconds{ms};
}

std::string FormatEpoch(Epoch epoch) {
  return FormatDate(epoch, AtMillis(0)) + "T" +
         FormatTimeOfDay(epoch, AtMillis(0)) + "Z";
}

std::string FormatDate(Epoch epoch, VirtualTime at) {
  using namespace std::chrono;
  const auto instant = epoch + at.time_since_epoch();
  const year_month_day ymd{floor<days>(instant)};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::string FormatTimeOfDay(Epoch epoch, VirtualTime at) {
  using namespace std::chrono;
  const auto instant = epoch + at.time_since_epoch();
  const hh_mm_ss<milliseconds> tod{instant - floor<days>(instant)};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d.%03d",
                static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()),
                static_cast<int>(tod.subseconds().count()));
  return buf;
}

}  // namespace citysim
