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

#ifndef CITYSIM_TRANSPORTS_H_
#define CITYSIM_TRANSPORTS_H_

#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "citysim/kernel.h"

namespace citysim {

enum class LinkKind { kSerial, kLan, kGps };

inline constexpr Millis kDefaultSerialLatency{20};
inline constexpr Millis kDefaultLanLatency{50};
inline constexpr Millis kDefaultSmsLatency{2000};
inline constexpr std::size_t kMaxSmsBody = 160;

struct LinkConfig {
  std::string id;
  LinkKind kind = LinkKind::kSerial;
  std::string target;
  Millis latency = kDefaultSerialLatency;
  double range_m = 15.0;  // informational
  double loss_probability = 0.0;
};

// The GSM side: one append-only inbox per destination number.
class SmsNetwork : public Device {
 public:
  static constexpr std::string_view kId = "sms";

  struct InboxEntry {
    std::string to;
    std::string body;
    VirtualTime sent_at{};
    VirtualTime delivered_at{};
  };

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

  std::vector<InboxEntry> inbox(std::string_view number) const;
  std::size_t count(std::string_view number) const;
  // Every delivered message, in delivery order.
  const std::vector<InboxEntry>& deliveries() const { return deliveries_; }
  // [{to, body, delivered_at_ms}, ...] in delivery order.
  Json ExportJson() const;

 private:
  std::vector<InboxEntry> deliveries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_number_;
};

// Virtual links between the environment/operator side and devices. Frames
// are delivered by the kernel as FrameDelivery events; each link is FIFO.
class Transports {
 public:
  explicit Transports(Kernel& kernel);

  Transports(const Transports&) = delete;
  Transports& operator=(const Transports&) = delete;

  void AddLink(LinkConfig config);
  bool HasLink(std::string_view id) const;
  const LinkConfig& link(std::string_view id) const;
  void SetLatency(std::string_view id, Millis latency);
  void SetLossProbability(std::string_view id, double probability);
  void SetSmsLatency(Millis latency) { sms_latency_ = latency; }
  Millis sms_latency() const { return sms_latency_; }

  // All Send* calls schedule relative to kernel.now().
  void SendBytes(std::string_view link_id, std::string_view bytes);
  void SendLan(std::string_view link_id, Json body);
  void SendGps(std::string_view link_id, std::string sentence);
  // Throws kOversizedBody (> 160 chars) or kInvalidAddress (empty `to`).
  void SendSms(std::string to, std::string body);

  SmsNetwork& sms() { return sms_; }
  const SmsNetwork& sms() const { return sms_; }
  std::size_t dropped() const { return dropped_; }

 private:
  struct LinkState {
    LinkConfig config;
    VirtualTime last_delivery{};
  };

  LinkState& Require(std::string_view id, LinkKind kind);
  void Deliver(LinkState& link, Frame frame);

  Kernel& kernel_;
  SmsNetwork sms_;
  std::map<std::string, LinkState, std::less<>> links_;
  Millis sms_latency_ = kDefaultSmsLatency;
  VirtualTime last_sms_delivery_{};
  std::mt19937_64 rng_;
  std::size_t dropped_ = 0;
};

// Environment-side sender: a stimulus {"link", "bytes"|"body"|"sentence"}
// addressed here is put on the named link at its dispatch instant.
class Transmitter : public Device {
 public:
  static constexpr std::string_view kId = "tx";

  explicit Transmitter(Transports& transports) : transports_(transports) {}

  std::string_view id() const override { return kId; }
  void Handle(const SimEvent& event) override;
  OrderedJson Snapshot(VirtualTime now) const override;

 private:
  Transports& transports_;
  std::size_t sent_ = 0;
};

}  // namespace citysim

#endif  // CITYSIM_TRANSPORTS_H_
