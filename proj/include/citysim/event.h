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

#ifndef CITYSIM_EVENT_H_
#define CITYSIM_EVENT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "citysim/time.h"
#include "json.hpp"

namespace citysim {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Transport payloads.
struct SerialBytes {
  std::string bytes;
};

struct LanMessage {
  Json body;
};

struct SmsMessage {
  std::string to;
  std::string body;
  VirtualTime sent_at{};
};

struct GpsSentence {
  std::string text;
};

using Frame = std::variant<SerialBytes, LanMessage, SmsMessage, GpsSentence>;

// Kernel payloads.
struct Stimulus {
  std::string name;
  Json args = Json::object();
};

struct FrameDelivery {
  std::string link;
  Frame frame;
};

struct TimerExpiry {
  std::string timer;
  std::uint64_t token = 0;
};

using Payload = std::variant<Stimulus, FrameDelivery, TimerExpiry>;

std::string_view PayloadKind(const Payload& payload);

struct SimEvent {
  VirtualTime at{};
  std::uint64_t seq = 0;
  std::string target;
  Payload payload;
};

}  // namespace citysim

#endif  // CITYSIM_EVENT_H_
