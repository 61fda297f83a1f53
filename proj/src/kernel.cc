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

#include "citysim/kernel.h"

#include <sstream>
#include <utility>

namespace citysim {

std::string_view PayloadKind(const Payload& payload) {
  struct Visitor {
    std::string_view operator()(const Stimulus&) const { return "stimulus"; }
    std::string_view operator()(const FrameDelivery&) const {
      return "frame-delivery";
    }
    std::string_view operator()(const TimerExpiry&) const {
      return "timer-expiry";
    }
  };
  return std::visit(Visitor{}, payload);
}

Kernel::Kernel(SimConfig config) : config_(config) {}

void Kernel::Register(Device& device) {
  auto [it, inserted] = devices_.emplace(std::string(device.id()), &device);
  if (!inserted) {
    throw Error(ErrorCode::kConfigError,
                "device '" + it->first + "' is already registered");
  }
}

void Kernel::Unregister(std::string_view id) {
  if (auto it = devices_.find(id); it != devices_.end()) devices_.erase(it);
}

bool Kernel::IsRegistered(std::string_view id) const {
  return devices_.find(id) != devices_.end();
}

Device& Kernel::device(std::string_view id) const {
  auto it = devices_.find(id);
  if (it == devices_.end()) {
    throw Error(ErrorCode::kUnknownTarget,
                "no device registered as '" + std::string(id) + "'");
  }
  return *it->second;
}

std::vector<std::string> Kernel::DeviceIds() const {
  std::vector<std::string> ids;
  ids.reserve(devices_.size());
  for (const auto& [id, device] : devices_) ids.push_back(id);
  return ids;
}

std::uint64_t Kernel::Schedule(VirtualTime at, std::string target,
                               Payload payload) {
  if (at < now_) {
    throw Error(ErrorCode::kPastTimestamp,
                "event for '" + target + "' at " +
                    std::to_string(ToMillis(at)) + " ms is before now (" +
                    std::to_string(ToMillis(now_)) + " ms)");
  }
  const std::uint64_t seq = next_seq_++;
  queue_.push(SimEvent{at, seq, std::move(target), std::move(payload)});
  return seq;
}

std::optional<SimEvent> Kernel::Step() {
  if (queue_.empty()) return std::nullopt;
  SimEvent event = queue_.top();
  queue_.pop();

  auto it = devices_.find(event.target);
  if (it == devices_.end()) {
    throw Error(ErrorCode::kUnknownTarget,
                "event seq " + std::to_string(event.seq) +
                    " targets unregistered device '" + event.target + "'");
  }

  now_ = event.at;
  transcript_.push_back(TranscriptEntry{event.at, event.seq, event.target,
                                        std::string(PayloadKind(event.payload))});
  try {
    it->second->Handle(event);
  } catch (const Error& e) {
    ReportDiagnostic(Diagnostic{event.at, event.target, e.code(), e.what()});
  } catch (const nlohmann::json::exception& e) {
    ReportDiagnostic(Diagnostic{event.at, event.target,
                                ErrorCode::kMalformedField, e.what()});
  }
  for (const auto& observer : observers_) observer(event);
  return event;
}

std::size_t Kernel::RunUntil(VirtualTime t) {
  if (t < now_) {
    throw Error(ErrorCode::kPastTimestamp,
                "run_until(" + std::to_string(ToMillis(t)) +
                    ") is before now (" + std::to_string(ToMillis(now_)) + ")");
  }
  std::size_t count = 0;
  while (!queue_.empty() && queue_.top().at <= t) {
    Step();
    ++count;
  }
  now_ = t;
  return count;
}

std::optional<VirtualTime> Kernel::NextEventTime() const {
  if (queue_.empty()) return std::nullopt;
  return queue_.top().at;
}

void Kernel::AddDispatchObserver(DispatchObserver observer) {
  observers_.push_back(std::move(observer));
}

std::string Kernel::TranscriptText() const {
  std::ostringstream out;
  for (const auto& entry : transcript_) {
    out << ToMillis(entry.at) << ',' << entry.seq << ',' << entry.target << ','
        << entry.kind << '\n';
  }
  return out.str();
}

void Kernel::ReportDiagnostic(Diagnostic diagnostic) {
  diagnostics_.push_back(std::move(diagnostic));
}

}  // namespace citysim
