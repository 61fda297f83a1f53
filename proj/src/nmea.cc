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

#include "citysim/nmea.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "citysim/error.h"

namespace citysim {
namespace {

std::vector<std::string_view> SplitFields(std::string_view text) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(text.substr(start));
      return fields;
    }
    fields.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
}

int HexDigit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedField, "NMEA: " + what);
}

// "ddmm.mmmm" (lat, 2 degree digits) or "dddmm.mmmm" (lon, 3 degree digits).
double DegreesFromField(std::string_view field, std::string_view hemisphere,
                        int degree_digits, double limit,
                        std::string_view positive, std::string_view negative) {
  const std::size_t dot = field.find('.');
  const std::size_t int_len = dot == std::string_view::npos ? field.size() : dot;
  if (int_len != static_cast<std::size_t>(degree_digits + 2)) {
    Malformed("coordinate '" + std::string(field) + "' has wrong width");
  }
  int degrees = 0;
  auto deg_result = std::from_chars(field.data(), field.data() + degree_digits,
                                    degrees);
  double minutes = 0.0;
  auto min_result = std::from_chars(field.data() + degree_digits,
                                    field.data() + field.size(), minutes);
  if (deg_result.ec != std::errc() ||
      deg_result.ptr != field.data() + degree_digits ||
      min_result.ec != std::errc() ||
      min_result.ptr != field.data() + field.size() || minutes >= 60.0 ||
      minutes < 0.0) {
    Malformed("coordinate '" + std::string(field) + "' is not numeric");
  }
  double value = degrees + minutes / 60.0;
  if (value > limit) Malformed("coordinate out of range");
  if (hemisphere == negative) {
    value = -value;
  } else if (hemisphere != positive) {
    Malformed("hemisphere '" + std::string(hemisphere) + "'");
  }
  return value;
}

std::string DegreesToField(double value, int degree_digits) {
  const double magnitude = std::fabs(value);
  int degrees = static_cast<int>(magnitude);
  // Four decimal places of minutes, rounded; carry into degrees on 60.0000.
  long long minutes_e4 = std::llround((magnitude - degrees) * 60.0 * 1e4);
  if (minutes_e4 >= 600000) {
    minutes_e4 -= 600000;
    ++degrees;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%0*d%02lld.%04lld", degree_digits, degrees,
                minutes_e4 / 10000, minutes_e4 % 10000);
  return buf;
}

}  // namespace

std::uint8_t NmeaChecksum(std::string_view payload) {
  std::uint8_t sum = 0;
  for (char c : payload) sum ^= static_cast<std::uint8_t>(c);
  return sum;
}

GpsFix ParseNmeaRmc(std::string_view sentence, VirtualTime at) {
  while (!sentence.empty() &&
         (sentence.back() == '\n' || sentence.back() == '\r')) {
    sentence.remove_suffix(1);
  }
  if (sentence.empty() || sentence.front() != '$') {
    Malformed("sentence must start with '$'");
  }
  const std::size_t star = sentence.rfind('*');
  if (star == std::string_view::npos || star + 3 != sentence.size()) {
    Malformed("sentence must end with '*HH'");
  }
  const int hi = HexDigit(sentence[star + 1]);
  const int lo = HexDigit(sentence[star + 2]);
  if (hi < 0 || lo < 0) Malformed("checksum is not two hex digits");

  const std::string_view payload = sentence.substr(1, star - 1);
  if (payload.find('$') != std::string_view::npos) {
    Malformed("payload contains '$'");
  }
  const std::uint8_t expected = static_cast<std::uint8_t>(hi * 16 + lo);
  const std::uint8_t actual = NmeaChecksum(payload);
  if (expected != actual) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "NMEA checksum *%02X, computed *%02X",
                  expected, actual);
    throw Error(ErrorCode::kBadChecksum, buf);
  }

  const auto fields = SplitFields(payload);
  const std::string_view type = fields[0];
  if (type.size() != 5 || type.substr(2) != "RMC") {
    throw Error(ErrorCode::kUnsupportedSentence,
                "NMEA sentence type '" + std::string(type) + "' is not RMC");
  }
  if (fields.size() < 7) Malformed("RMC needs at least 7 fields");

  GpsFix fix;
  fix.at = at;
  const std::string_view status = fields[2];
  if (status == "A") {
    fix.valid = true;
  } else if (status == "V") {
    fix.valid = false;
  } else {
    Malformed("status '" + std::string(status) + "'");
  }

  const bool has_position = !fields[3].empty() || !fields[5].empty();
  if (fix.valid || has_position) {
    fix.lat = DegreesFromField(fields[3], fields[4], 2, 90.0, "N", "S");
    fix.lon = DegreesFromField(fields[5], fields[6], 3, 180.0, "E", "W");
  }
  return fix;
}

std::string ComposeNmeaRmc(double lat, double lon, bool valid,
                           std::string_view utc_time, std::string_view date) {
  if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon <= 180.0)) {
    throw Error(ErrorCode::kOutOfRange, "fix coordinates out of range");
  }
  std::string payload = "GPRMC,";
  payload += utc_time;
  payload += valid ? ",A," : ",V,";
  payload += DegreesToField(lat, 2);
  payload += lat < 0 ? ",S," : ",N,";
  payload += DegreesToField(lon, 3);
  payload += lon < 0 ? ",W," : ",E,";
  payload += "0.0,0.0,";
  payload += date;
  payload += ",,";
  char tail[8];
  std::snprintf(tail, sizeof(tail), "*%02X", NmeaChecksum(payload));
  return "$" + payload + tail;
}

}  // namespace citysim
