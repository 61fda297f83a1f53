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

#ifndef CITYSIM_GATEWAY_SERVER_H_
#define CITYSIM_GATEWAY_SERVER_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "citysim/gateway.h"

namespace citysim {

struct GatewayOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  Millis tick{10};
  std::size_t client_queue = 256;
  // Wall clock in ms; tests substitute a manual one.
  std::function<std::int64_t()> wall_clock;
};

// "host:port", ":port" or "port". Throws kConfigError.
void ParseListenAddress(std::string_view text, GatewayOptions& options);

// Serves a City to operator consoles:
//   /ws                 JSON commands in, snapshot/heartbeat frames out
//   GET /devices        current snapshot of every device
//   GET /history/<t>    telemetry rows of table t
// Virtual time follows the wall clock from Start(). All kernel work happens
// on one pacing thread.
class GatewayServer {
 public:
  GatewayServer(City& city, GatewayOptions options = {});
  ~GatewayServer();

  GatewayServer(const GatewayServer&) = delete;
  GatewayServer& operator=(const GatewayServer&) = delete;

  void Start();
  void Stop();
  // Blocks until Stop() is called from another thread or a signal.
  void Wait();

  unsigned short port() const;
  LiveRunner& runner();
  std::size_t clients() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace citysim

#endif  // CITYSIM_GATEWAY_SERVER_H_
