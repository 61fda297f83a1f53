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

#include "citysim/gateway_server.h"

#include <charconv>
#include <condition_variable>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

namespace citysim {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

std::int64_t SteadyMillis() {
  return std::chrono::duration_cast<Millis>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

class WsSession;

struct Hub {
  City* city = nullptr;
  LiveRunner* runner = nullptr;
  std::function<std::int64_t()> wall;
  std::int64_t start = 0;
  std::size_t queue_capacity = 256;

  std::mutex mutex;
  std::vector<std::weak_ptr<WsSession>> sessions;

  std::int64_t VirtualNow() const { return std::max<std::int64_t>(0, wall() - start); }
  void Add(const std::shared_ptr<WsSession>& session);
  void Broadcast(const std::string& frame);
  std::size_t Count();
};

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, Hub& hub)
      : ws_(std::move(socket)), hub_(hub), queue_(hub.queue_capacity) {}

  void Run(http::request<http::string_body> request) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(request, beast::bind_front_handler(&WsSession::OnAccept,
                                                        shared_from_this()));
  }

  void Send(std::string frame) {
    queue_.Push(std::move(frame));
    net::post(ws_.get_executor(), [self = shared_from_this()] { self->Flush(); });
  }

 private:
  void OnAccept(beast::error_code ec) {
    if (ec) return;
    hub_.Add(shared_from_this());
    hub_.runner->Query([self = shared_from_this()](const City& city) {
      const auto now = city.kernel().now();
      for (const auto& id : city.DeviceIds()) {
        if (id == Transmitter::kId) continue;
        self->Send(LiveRunner::SnapshotFrame(id, city.kernel().device(id).Snapshot(now),
                                             now));
      }
      return Json();
    });
    DoRead();
  }

  void DoRead() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::OnRead,
                                                      shared_from_this()));
  }

  void OnRead(beast::error_code ec, std::size_t) {
    if (ec) return;
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    try {
      const ClientCommand command = ParseClientCommand(text, hub_.wall());
      MappedCommand mapped = MapCommand(command);
      OrderedJson ack{{"ack", true}, {"target", mapped.target}, {"action", mapped.event}};
      hub_.runner->Submit(std::move(mapped), command.received_wall_ms - hub_.start);
      Send(ack.dump());
    } catch (const Error& e) {
      Send(OrderedJson{{"error", ErrorCodeName(e.code())}, {"message", e.what()}}.dump());
    }
    DoRead();
  }

  void Flush() {
    if (writing_) return;
    auto frame = queue_.Pop();
    if (!frame) return;
    current_ = std::move(*frame);
    writing_ = true;
    ws_.text(true);
    ws_.async_write(net::buffer(current_),
                    beast::bind_front_handler(&WsSession::OnWrite, shared_from_this()));
  }

  void OnWrite(beast::error_code ec, std::size_t) {
    writing_ = false;
    if (ec) return;
    Flush();
  }

  websocket::stream<beast::tcp_stream> ws_;
  Hub& hub_;
  FrameQueue queue_;
  beast::flat_buffer buffer_;
  std::string current_;
  bool writing_ = false;
};

void Hub::Add(const std::shared_ptr<WsSession>& session) {
  std::lock_guard lock(mutex);
  sessions.push_back(session);
}

void Hub::Broadcast(const std::string& frame) {
  std::vector<std::shared_ptr<WsSession>> live;
  {
    std::lock_guard lock(mutex);
    std::erase_if(sessions, [](const auto& weak) { return weak.expired(); });
    for (const auto& weak : sessions) {
      if (auto session = weak.lock()) live.push_back(std::move(session));
    }
  }
  for (const auto& session : live) session->Send(frame);
}

std::size_t Hub::Count() {
  std::lock_guard lock(mutex);
  std::erase_if(sessions, [](const auto& weak) { return weak.expired(); });
  return sessions.size();
}

struct Reply {
  http::status status = http::status::ok;
  std::string body;
};

Reply Route(const City& city, std::string_view target) {
  if (target == "/devices") {
    OrderedJson devices = OrderedJson::array();
    for (const auto& id : city.DeviceIds()) {
      if (id == Transmitter::kId) continue;
      devices.push_back({{"id", id},
                         {"snapshot", city.kernel().device(id).Snapshot(city.kernel().now())}});
    }
    return {http::status::ok,
            OrderedJson{{"virtual_ms", ToMillis(city.kernel().now())}, {"devices", devices}}
                .dump()};
  }
  constexpr std::string_view kHistory = "/history/";
  if (target.starts_with(kHistory)) {
    const std::string_view name = target.substr(kHistory.size());
    if (const auto table = TableFromName(name)) {
      return {http::status::ok, OrderedJson{{"table", name},
                                            {"rows", city.telemetry().TableJson(*table)}}
                                    .dump()};
    }
    return {http::status::not_found,
            OrderedJson{{"error", ErrorCodeName(ErrorCode::kUnknownTable)},
                        {"message", "no table '" + std::string(name) + "'"}}
                .dump()};
  }
  return {http::status::not_found,
          OrderedJson{{"error", "not-found"}, {"message", std::string(target)}}.dump()};
}

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, Hub& hub) : stream_(std::move(socket)), hub_(hub) {}

  void Run() {
    net::dispatch(stream_.get_executor(),
                  beast::bind_front_handler(&HttpSession::DoRead, shared_from_this()));
  }

 private:
  void DoRead() {
    request_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, request_,
                     beast::bind_front_handler(&HttpSession::OnRead, shared_from_this()));
  }

  void OnRead(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;

    if (websocket::is_upgrade(request_)) {
      if (request_.target() == "/ws") {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), hub_)
            ->Run(std::move(request_));
        return;
      }
      Write(Reply{http::status::not_found, R"({"error":"not-found"})"});
      return;
    }
    if (request_.method() != http::verb::get) {
      Write(Reply{http::status::method_not_allowed, R"({"error":"method-not-allowed"})"});
      return;
    }
    std::string target(request_.target());
    if (const auto q = target.find('?'); q != std::string::npos) target.resize(q);
    hub_.runner->Query([self = shared_from_this(), target](const City& city) {
      Reply reply = Route(city, target);
      net::post(self->stream_.get_executor(),
                [self, reply = std::move(reply)]() mutable { self->Write(std::move(reply)); });
      return Json();
    });
  }

  void Write(Reply reply) {
    response_ = std::make_shared<http::response<http::string_body>>(reply.status,
                                                                    request_.version());
    response_->set(http::field::server, "citysim");
    response_->set(http::field::content_type, "application/json");
    response_->keep_alive(request_.keep_alive());
    response_->body() = std::move(reply.body);
    response_->prepare_payload();
    http::async_write(stream_, *response_,
                      beast::bind_front_handler(&HttpSession::OnWrite, shared_from_this()));
  }

  void OnWrite(beast::error_code ec, std::size_t) {
    if (ec) return;
    if (!response_->keep_alive()) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    DoRead();
  }

  beast::tcp_stream stream_;
  Hub& hub_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  std::shared_ptr<http::response<http::string_body>> response_;
};

}  // namespace

void ParseListenAddress(std::string_view text, GatewayOptions& options) {
  std::string_view port = text;
  if (const auto colon = text.rfind(':'); colon != std::string_view::npos) {
    if (colon > 0) options.address = std::string(text.substr(0, colon));
    port = text.substr(colon + 1);
  }
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (port.empty() || ec != std::errc() || ptr != port.data() + port.size() ||
      value > 65535) {
    throw Error(ErrorCode::kConfigError,
                "listen address '" + std::string(text) + "' needs host:port");
  }
  options.port = static_cast<unsigned short>(value);
}

struct GatewayServer::Impl {
  Impl(City& city, GatewayOptions opts)
      : options(std::move(opts)),
        runner(city, [this](const std::string& frame) { hub.Broadcast(frame); }),
        acceptor(ioc),
        signals(ioc) {
    hub.city = &city;
    hub.runner = &runner;
    hub.wall = options.wall_clock ? options.wall_clock : SteadyMillis;
    hub.queue_capacity = options.client_queue;
  }

  void DoAccept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec,
                                                         tcp::socket socket) {
      if (!acceptor.is_open()) return;
      if (!ec) std::make_shared<HttpSession>(std::move(socket), hub)->Run();
      DoAccept();
    });
  }

  void Pace() {
    while (running) {
      try {
        runner.Advance(AtMillis(hub.VirtualNow()));
      } catch (const Error& e) {
        std::cerr << "citysim: " << e.what() << '\n';
      }
      std::this_thread::sleep_for(options.tick);
    }
  }

  void RequestStop() {
    std::lock_guard lock(stop_mutex);
    stop_requested = true;
    stop_cv.notify_all();
  }

  GatewayOptions options;
  Hub hub;
  LiveRunner runner;
  net::io_context ioc;
  tcp::acceptor acceptor;
  net::signal_set signals;
  std::vector<std::thread> io_threads;
  std::thread pacer;
  std::atomic<bool> running{false};
  bool started = false;

  std::mutex stop_mutex;
  std::condition_variable stop_cv;
  bool stop_requested = false;
};

GatewayServer::GatewayServer(City& city, GatewayOptions options)
    : impl_(std::make_unique<Impl>(city, std::move(options))) {}

GatewayServer::~GatewayServer() { Stop(); }

void GatewayServer::Start() {
  Impl& s = *impl_;
  if (s.started) return;
  beast::error_code ec;
  const auto address = net::ip::make_address(s.options.address, ec);
  if (ec) {
    throw Error(ErrorCode::kConfigError, "bad listen address '" + s.options.address + "'");
  }
  const tcp::endpoint endpoint(address, s.options.port);
  s.acceptor.open(endpoint.protocol(), ec);
  if (!ec) s.acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) s.acceptor.bind(endpoint, ec);
  if (!ec) s.acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure, "cannot listen on " + s.options.address + ":" +
                                           std::to_string(s.options.port) + ": " +
                                           ec.message());
  }
  s.signals.add(SIGINT);
  s.signals.add(SIGTERM);
  s.signals.async_wait([&s](beast::error_code err, int) {
    if (!err) s.RequestStop();
  });

  s.started = true;
  s.hub.start = s.hub.wall();
  s.running = true;
  s.DoAccept();
  for (int i = 0; i < 2; ++i) s.io_threads.emplace_back([&s] { s.ioc.run(); });
  s.pacer = std::thread([&s] { s.Pace(); });
}

void GatewayServer::Stop() {
  Impl& s = *impl_;
  s.RequestStop();
  if (!s.started) return;
  s.started = false;
  s.running = false;
  if (s.pacer.joinable()) s.pacer.join();
  s.ioc.stop();
  for (auto& thread : s.io_threads) thread.join();
  s.io_threads.clear();
  beast::error_code ec;
  s.signals.cancel(ec);
  s.acceptor.close(ec);
}

void GatewayServer::Wait() {
  Impl& s = *impl_;
  std::unique_lock lock(s.stop_mutex);
  s.stop_cv.wait(lock, [&s] { return s.stop_requested; });
}

unsigned short GatewayServer::port() const {
  beast::error_code ec;
  const auto endpoint = impl_->acceptor.local_endpoint(ec);
  return ec ? impl_->options.port : endpoint.port();
}

LiveRunner& GatewayServer::runner() { return impl_->runner; }

std::size_t GatewayServer::clients() const { return impl_->hub.Count(); }

}  // namespace citysim
