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

#ifndef CITYSIM_KERNEL_H_
#define CITYSIM_KERNEL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/error.h"
#include "citysim/event.h"
#include "citysim/time.h"

namespace citysim {

class Kernel;

// A simulated device. Devices mutate only inside Handle() and learn the
// current instant from event.at, never from the kernel clock.
class Device {
 public:
  virtual ~Device() = default;

  virtual std::string_view id() const = 0;
  virtual void Handle(const SimEvent& event) = 0;
  // Externally observable state. `now` is only used for derived fields such
  // as countdowns.
  virtual OrderedJson Snapshot(VirtualTime now) const = 0;
};

struct TranscriptEntry {
  VirtualTime at{};
  std::uint64_t seq = 0;
  std::string target;
  std::string kind;

  bool operator==(const TranscriptEntry&) const = default;
};

// Device-level failure caught during dispatch (rejected sample, unknown
// command byte, ...). The run continues.
struct Diagnostic {
  VirtualTime at{};
  std::string target;
  ErrorCode code{};
  std::string message;
};

// Deterministic virtual-time event queue. Single-threaded; not re-entrant
// from other threads.
class Kernel {
 public:
  using DispatchObserver = std::function<void(const SimEvent&)>;

  explicit Kernel(SimConfig config = {});

  Kernel(const Kernel&) = delete;
  Kernel& operator=(const Kernel&) = delete;

  // Non-owning; the device must outlive the kernel or be unregistered.
  // Throws kConfigError when the id is taken.
  void Register(Device& device);
  void Unregister(std::string_view id);
  bool IsRegistered(std::string_view id) const;
  Device& device(std::string_view id) const;
  std::vector<std::string> DeviceIds() const;

  // Returns the assigned sequence number. Throws kPastTimestamp if at < now().
  std::uint64_t Schedule(VirtualTime at, std::string target, Payload payload);

  // Pops and dispatches the (at, seq)-minimal event. Throws kUnknownTarget if
  // its target is not registered; the event is dropped and the clock is left
  // unchanged in that case.
  std::optional<SimEvent> Step();

  // Dispatches every event with at <= t, then leaves the clock at t.
  std::size_t RunUntil(VirtualTime t);

  VirtualTime now() const { return now_; }
  std::optional<VirtualTime> NextEventTime() const;
  std::size_t pending() const { return queue_.size(); }

  const SimConfig& config() const { return config_; }

  void AddDispatchObserver(DispatchObserver observer);

  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  // One "at,seq,target,kind" line per dispatched event.
  std::string TranscriptText() const;

  void ReportDiagnostic(Diagnostic diagnostic);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  SimConfig config_;
  VirtualTime now_{};
  std::uint64_t next_seq_ = 1;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
  std::map<std::string, Device*, std::less<>> devices_;
  std::vector<DispatchObserver> observers_;
  std::vector<TranscriptEntry> transcript_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace citysim

#endif  // CITYSIM_KERNEL_H_
