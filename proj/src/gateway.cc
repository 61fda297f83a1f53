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

#include "citysim/gateway.h"

#include <algorithm>
#include <sstream>

#include "citysim/catalog.h"

namespace citysim {

ClientCommand ParseClientCommand(std::string_view text,
                                 std::int64_t received_wall_ms) {
  Json object;
  try {
    object = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!object.is_object() || !object.contains("target") ||
      !object["target"].is_string() || !object.contains("action") ||
      !object["action"].is_string()) {
    throw Error(ErrorCode::kParseError,
                "command needs string \"target\" and \"action\"");
  }
  ClientCommand command;
  command.target = object["target"].get<std::string>();
  command.action = object["action"].get<std::string>();
  command.received_wall_ms = received_wall_ms;
  for (const auto& [key, value] : object.items()) {
    if (key != "target" && key != "action") command.args[key] = value;
  }
  return command;
}

MappedCommand MapCommand(const ClientCommand& command) {
  const EventSpec* spec = nullptr;
  try {
    spec = &FindEvent(command.target, command.action);
  } catch (const Error&) {
    throw Error(ErrorCode::kRejectedAction,
                "action " + command.target + "." + command.action +
                    " is not available to operators");
  }
  if (!spec->operator_allowed) {
    throw Error(ErrorCode::kRejectedAction,
                "action " + command.target + "." + command.action +
                    " is not available to operators");
  }
  ValidateArgs(*spec, command.args);
  return MappedCommand{command.target, command.action, command.args};
}

void FrameQueue::Push(std::string frame) {
  std::lock_guard lock(mutex_);
  if (capacity_ == 0) {
    ++dropped_;
    return;
  }
  while (frames_.size() >= capacity_) {
    frames_.pop_front();
    ++dropped_;
  }
  frames_.push_back(std::move(frame));
}

std::optional<std::string> FrameQueue::Pop() {
  std::lock_guard lock(mutex_);
  if (frames_.empty()) return std::nullopt;
  std::string frame = std::move(frames_.front());
  frames_.pop_front();
  return frame;
}

std::size_t FrameQueue::size() const {
  std::lock_guard lock(mutex_);
  return frames_.size();
}

std::size_t FrameQueue::dropped() const {
  std::lock_guard lock(mutex_);
  return dropped_;
}

LiveRunner::LiveRunner(City& city, FrameSink sink, Millis heartbeat)
    : city_(city),
      sink_(std::move(sink)),
      heartbeat_(heartbeat),
      next_heartbeat_(city.kernel().now() + heartbeat) {
  for (const auto& id : city_.DeviceIds()) {
    last_sent_[id] = city_.kernel().device(id).Snapshot(city_.kernel().now()).dump();
  }
  city_.kernel().AddDispatchObserver(
      [this](const SimEvent& event) { OnDispatched(event); });
}

std::string LiveRunner::SnapshotFrame(std::string_view device,
                                      const OrderedJson& snapshot,
                                      VirtualTime at) {
  return OrderedJson{{"device", device},
                     {"virtual_ms", ToMillis(at)},
                     {"snapshot", snapshot}}
      .dump();
}

void LiveRunner::OnDispatched(const SimEvent& event) {
  if (event.target == Transmitter::kId) return;
  const OrderedJson snapshot =
      city_.kernel().device(event.target).Snapshot(event.at);
  std::string dumped = snapshot.dump();
  auto& last = last_sent_[event.target];
  if (dumped == last) return;
  last = std::move(dumped);
  if (sink_) sink_(SnapshotFrame(event.target, snapshot, event.at));
}

void LiveRunner::Submit(MappedCommand command, std::int64_t requested_ms) {
  std::lock_guard lock(mutex_);
  pending_.push_back(Pending{std::move(command), requested_ms});
}

std::future<Json> LiveRunner::Query(std::function<Json(const City&)> query) {
  std::packaged_task<Json(const City&)> task(std::move(query));
  auto future = task.get_future();
  std::lock_guard lock(mutex_);
  queries_.push_back(std::move(task));
  return future;
}

void LiveRunner::Advance(VirtualTime target) {
  Kernel& kernel = city_.kernel();
  std::vector<Pending> pending;
  std::vector<std::packaged_task<Json(const City&)>> queries;
  {
    std::lock_guard lock(mutex_);
    pending.swap(pending_);
    queries.swap(queries_);
  }

  const std::int64_t submitted = ToMillis(kernel.now());
  for (auto& item : pending) {
    const std::int64_t at = std::max(submitted, item.requested_ms);
    city_.Inject(AtMillis(at), item.command.target, item.command.event,
                 item.command.args);
    std::lock_guard lock(mutex_);
    log_.push_back(RecordedCommand{submitted, at, std::move(item.command)});
  }
  for (auto& query : queries) query(city_);

  if (target > kernel.now()) kernel.RunUntil(target);

  if (kernel.now() >= next_heartbeat_) {
    const auto periods = (kernel.now() - next_heartbeat_) / heartbeat_;
    const VirtualTime beat = next_heartbeat_ + periods * heartbeat_;
    next_heartbeat_ = beat + heartbeat_;
    if (sink_) {
      sink_(OrderedJson{{"device", "kernel"},
                        {"virtual_ms", ToMillis(beat)},
                        {"heartbeat", true},
                        {"snapshot", {{"now_ms", ToMillis(beat)}}}}
                .dump());
    }
  }
}

std::vector<RecordedCommand> LiveRunner::log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

std::string LiveRunner::LogAsScenario(const Json& config) const {
  std::ostringstream out;
  out << "# recorded operator session\n";
  if (!config.empty()) out << Json{{"config", config}}.dump() << '\n';
  for (const auto& entry : log()) {
    Json line{{"at_ms", entry.at_ms},
              {"submitted_ms", entry.submitted_ms},
              {"target", entry.command.target},
              {"event", entry.command.event}};
    for (const auto& [key, value] : entry.command.args.items()) line[key] = value;
    out << line.dump() << '\n';
  }
  return out.str();
}

}  // namespace citysim
