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

#ifndef CITYSIM_GATEWAY_H_
#define CITYSIM_GATEWAY_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/city.h"

namespace citysim {

// Operator command as received over /ws:
//   {"target": "streetlight", "action": "command", "byte": "D"}
// Every field other than target/action is an argument.
struct ClientCommand {
  std::string target;
  std::string action;
  Json args = Json::object();
  std::int64_t received_wall_ms = 0;
};

// Throws kParseError.
ClientCommand ParseClientCommand(std::string_view text,
                                 std::int64_t received_wall_ms = 0);

struct MappedCommand {
  std::string target;
  std::string event;
  Json args = Json::object();
};

// Maps a command onto a catalogued stimulus. Only operator-allowed pairs
// pass; anything else, including every "kernel" action, throws
// kRejectedAction. Bad arguments throw kMalformedField.
MappedCommand MapCommand(const ClientCommand& command);

// Bounded FIFO of outgoing frames for one client. When full the oldest
// frame is dropped, so the newest state is always kept. Thread-safe.
class FrameQueue {
 public:
  explicit FrameQueue(std::size_t capacity) : capacity_(capacity) {}

  void Push(std::string frame);
  std::optional<std::string> Pop();
  std::size_t size() const;
  std::size_t dropped() const;

 private:
  mutable std::mutex mutex_;
  std::deque<std::string> frames_;
  std::size_t capacity_;
  std::size_t dropped_ = 0;
};

struct RecordedCommand {
  std::int64_t submitted_ms = 0;
  std::int64_t at_ms = 0;
  MappedCommand command;
};

inline constexpr Millis kHeartbeatPeriod{500};

// Bridges real-time operators and the single-threaded kernel. Submit() and
// Query() may be called from any thread; they only enqueue onto the
// submission channel. Advance() is called by the one thread that owns the
// kernel: it applies queued work, runs the kernel up to the given instant and
// emits frames through the sink (snapshot frames on every device change,
// heartbeats every 500 ms of virtual time).
class LiveRunner {
 public:
  using FrameSink = std::function<void(const std::string& frame)>;

  LiveRunner(City& city, FrameSink sink, Millis heartbeat = kHeartbeatPeriod);

  LiveRunner(const LiveRunner&) = delete;
  LiveRunner& operator=(const LiveRunner&) = delete;

  // `requested_ms` is the wall-derived virtual instant; the event lands at
  // max(now, requested_ms).
  void Submit(MappedCommand command, std::int64_t requested_ms);
  std::future<Json> Query(std::function<Json(const City&)> query);

  void Advance(VirtualTime target);

  std::vector<RecordedCommand> log() const;
  // The command log as a replayable scenario (config line + steps).
  std::string LogAsScenario(const Json& config = Json::object()) const;

  static std::string SnapshotFrame(std::string_view device,
                                   const OrderedJson& snapshot,
                                   VirtualTime at);

 private:
  struct Pending {
    MappedCommand command;
    std::int64_t requested_ms;
  };

  void OnDispatched(const SimEvent& event);

  City& city_;
  FrameSink sink_;
  Millis heartbeat_;
  VirtualTime next_heartbeat_{};
  std::map<std::string, std::string, std::less<>> last_sent_;

  mutable std::mutex mutex_;
  std::vector<Pending> pending_;
  std::vector<std::packaged_task<Json(const City&)>> queries_;
  std::vector<RecordedCommand> log_;
};

}  // namespace citysim

#endif  // CITYSIM_GATEWAY_H_
