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

#ifndef CITYSIM_NMEA_H_
#define CITYSIM_NMEA_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "citysim/time.h"

namespace citysim {

struct GpsFix {
  double lat = 0.0;
  double lon = 0.0;
  bool valid = false;
  VirtualTime at{};
};

// XOR of every character code in the text between '$' and '*'.
std::uint8_t NmeaChecksum(std::string_view payload);

// Decodes an RMC sentence ("$xxRMC,...*HH", optional trailing CR/LF).
// Throws Error with kMalformedField, kBadChecksum or kUnsupportedSentence.
GpsFix ParseNmeaRmc(std::string_view sentence, VirtualTime at = {});

// Builds a GPRMC sentence whose decoded coordinates are within 1e-6 degrees
// of (lat, lon). `utc_time` is an "hhmmss" field and `date` is "ddmmyy".
std::string ComposeNmeaRmc(double lat, double lon, bool valid,
                           std::string_view utc_time = "000000",
                           std::string_view date = "010621");

}  // namespace citysim

#endif  // CITYSIM_NMEA_H_
