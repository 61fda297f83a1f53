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

#include "citysim/transports.h"

#include <algorithm>
#include <utility>

namespace citysim {

void SmsNetwork::Handle(const SimEvent& event) {
  const auto* delivery = std::get_if<FrameDelivery>(&event.payload);
  const SmsMessage* sms =
      delivery ? std::get_if<SmsMessage>(&delivery->frame) : nullptr;
  if (sms == nullptr) {
    throw Error(ErrorCode::kUnknownCommand, "sms network only accepts SMS frames");
  }
  by_number_[sms->to].push_back(deliveries_.size());
  deliveries_.push_back(InboxEntry{sms->to, sms->body, sms->sent_at, event.at});
}

OrderedJson SmsNetwork::Snapshot(VirtualTime) const {
  OrderedJson counts = OrderedJson::object();
  OrderedJson last = OrderedJson::object();
  for (const auto& [number, indices] : by_number_) {
    counts[number] = indices.size();
    last[number] = deliveries_[indices.back()].body;
  }
  return OrderedJson{{"total", deliveries_.size()},
                     {"counts", std::move(counts)},
                     {"last_body", std::move(last)}};
}

std::vector<SmsNetwork::InboxEntry> SmsNetwork::inbox(
    std::string_view number) const {
  std::vector<InboxEntry> out;
  if (auto it = by_number_.find(number); it != by_number_.end()) {
    for (std::size_t i : it->second) out.push_back(deliveries_[i]);
  }
  return out;
}

std::size_t SmsNetwork::count(std::string_view number) const {
  auto it = by_number_.find(number);
  return it == by_number_.end() ? 0 : it->second.size();
}

Json SmsNetwork::ExportJson() const {
  Json out = Json::array();
  for (const auto& entry : deliveries_) {
    out.push_back(Json{{"to", entry.to},
                       {"body", entry.body},
                       {"delivered_at_ms", ToMillis(entry.delivered_at)}});
  }
  return out;
}

Transports::Transports(Kernel& kernel)
    : kernel_(kernel), rng_(kernel.config().seed) {
  kernel_.Register(sms_);
}

void Transports::AddLink(LinkConfig config) {
  std::string id = config.id;
  links_[std::move(id)] = LinkState{std::move(config), VirtualTime{}};
}

bool Transports::HasLink(std::string_view id) const {
  return links_.find(id) != links_.end();
}

const LinkConfig& Transports::link(std::string_view id) const {
  auto it = links_.find(id);
  if (it == links_.end()) {
    throw Error(ErrorCode::kUnknownLink, "unknown link '" + std::string(id) + "'");
  }
  return it->second.config;
}

void Transports::SetLatency(std::string_view id, Millis latency) {
  if (latency.count() < 0) {
    throw Error(ErrorCode::kConfigError, "link latency must be non-negative");
  }
  auto it = links_.find(id);
  if (it == links_.end()) {
    throw Error(ErrorCode::kUnknownLink, "unknown link '" + std::string(id) + "'");
  }
  it->second.config.latency = latency;
}

void Transports::SetLossProbability(std::string_view id, double probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw Error(ErrorCode::kConfigError, "loss probability must be in [0, 1]");
  }
  auto it = links_.find(id);
  if (it == links_.end()) {
    throw Error(ErrorCode::kUnknownLink, "unknown link '" + std::string(id) + "'");
  }
  it->second.config.loss_probability = probability;
}

Transports::LinkState& Transports::Require(std::string_view id, LinkKind kind) {
  auto it = links_.find(id);
  if (it == links_.end() || it->second.config.kind != kind) {
    throw Error(ErrorCode::kUnknownLink,
                "no link '" + std::string(id) + "' of the requested kind");
  }
  return it->second;
}

void Transports::Deliver(LinkState& link, Frame frame) {
  if (link.config.loss_probability > 0.0) {
    std::bernoulli_distribution lose(link.config.loss_probability);
    if (lose(rng_)) {
      ++dropped_;
      return;
    }
  }
  // A latency change must not let a later frame overtake an earlier one.
  const VirtualTime at =
      std::max(kernel_.now() + link.config.latency, link.last_delivery);
  link.last_delivery = at;
  kernel_.Schedule(at, link.config.target,
                   FrameDelivery{link.config.id, std::move(frame)});
}

void Transports::SendBytes(std::string_view link_id, std::string_view bytes) {
  LinkState& link = Require(link_id, LinkKind::kSerial);
  if (bytes.empty()) {
    throw Error(ErrorCode::kEmptyPayload, "serial send needs at least one byte");
  }
  Deliver(link, SerialBytes{std::string(bytes)});
}

void Transports::SendLan(std::string_view link_id, Json body) {
  LinkState& link = Require(link_id, LinkKind::kLan);
  Deliver(link, LanMessage{std::move(body)});
}

void Transports::SendGps(std::string_view link_id, std::string sentence) {
  LinkState& link = Require(link_id, LinkKind::kGps);
  if (sentence.empty()) {
    throw Error(ErrorCode::kEmptyPayload, "empty GPS sentence");
  }
  Deliver(link, GpsSentence{std::move(sentence)});
}

void Transports::SendSms(std::string to, std::string body) {
  if (body.size() > kMaxSmsBody) {
    throw Error(ErrorCode::kOversizedBody,
                "SMS body is " + std::to_string(body.size()) +
                    " characters, limit is 160");
  }
  if (to.empty()) {
    throw Error(ErrorCode::kInvalidAddress, "SMS needs a destination number");
  }
  const VirtualTime at =
      std::max(kernel_.now() + sms_latency_, last_sms_delivery_);
  last_sms_delivery_ = at;
  kernel_.Schedule(at, std::string(SmsNetwork::kId),
                   FrameDelivery{"gsm", SmsMessage{std::move(to), std::move(body),
                                                   kernel_.now()}});
}

void Transmitter::Handle(const SimEvent& event) {
  const auto* stimulus = std::get_if<Stimulus>(&event.payload);
  if (stimulus == nullptr || stimulus->name != "send") {
    throw Error(ErrorCode::kUnknownCommand, "transmitter only handles 'send'");
  }
  const Json& args = stimulus->args;
  const std::string link = args.at("link").get<std::string>();
  switch (transports_.link(link).kind) {
    case LinkKind::kSerial:
      transports_.SendBytes(link, args.at("bytes").get<std::string>());
      break;
    case LinkKind::kLan:
      transports_.SendLan(link, args.at("body"));
      break;
    case LinkKind::kGps:
      transports_.SendGps(link, args.at("sentence").get<std::string>());
      break;
  }
  ++sent_;
}

OrderedJson Transmitter::Snapshot(VirtualTime) const {
  return OrderedJson{{"sent", sent_}};
}

}  // namespace citysim
