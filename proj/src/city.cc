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

#include "citysim/city.h"

#include <charconv>

#include "citysim/catalog.h"
#include "citysim/nmea.h"

namespace citysim {
namespace {

[[noreturn]] void ConfigError(const std::string& what) {
  throw Error(ErrorCode::kConfigError, "config: " + what);
}

const Json& Typed(const Json& value, std::string_view key, bool ok,
                  std::string_view expected) {
  if (!ok) {
    ConfigError("'" + std::string(key) + "' must be " + std::string(expected));
  }
  return value;
}

int IntIn(const Json& value, std::string_view key, int lo, int hi) {
  Typed(value, key, value.is_number_integer(), "an integer");
  const auto v = value.get<std::int64_t>();
  if (v < lo || v > hi) {
    ConfigError("'" + std::string(key) + "' must be in " + std::to_string(lo) +
                ".." + std::to_string(hi));
  }
  return static_cast<int>(v);
}

Millis NonNegativeMillis(const Json& value, std::string_view key) {
  Typed(value, key, value.is_number_integer(), "an integer");
  const auto v = value.get<std::int64_t>();
  if (v < 0) ConfigError("'" + std::string(key) + "' must be non-negative");
  return Millis{v};
}

double NonNegativeNumber(const Json& value, std::string_view key) {
  Typed(value, key, value.is_number(), "a number");
  const double v = value.get<double>();
  if (!(v >= 0.0)) ConfigError("'" + std::string(key) + "' must be non-negative");
  return v;
}

const Json& Object(const Json& value, std::string_view key) {
  return Typed(value, key, value.is_object(), "an object");
}

std::string String(const Json& value, std::string_view key) {
  return Typed(value, key, value.is_string(), "a string").get<std::string>();
}

void AddLinks(Transports& transports) {
  transports.AddLink({"bt-streetlight", LinkKind::kSerial,
                      std::string(Streetlight::kId), kDefaultSerialLatency});
  transports.AddLink({"wifi-home", LinkKind::kLan,
                      std::string(HomeAutomation::kId), kDefaultLanLatency});
  transports.AddLink({"bt-info", LinkKind::kSerial, std::string(InfoDisplay::kId),
                      kDefaultSerialLatency});
  transports.AddLink({"gps", LinkKind::kGps, std::string(AccidentManager::kId),
                      kDefaultSerialLatency});
}

}  // namespace

CityConfig ParseCityConfig(const Json& object) {
  CityConfig config;
  Object(object, "config");
  for (const auto& [key, value] : object.items()) {
    if (key == "epoch") {
      config.sim.epoch = ParseEpoch(String(value, key));
    } else if (key == "seed") {
      Typed(value, key, value.is_number_unsigned(), "a non-negative integer");
      config.sim.seed = value.get<std::uint64_t>();
    } else if (key == "ldr_threshold") {
      config.streetlight.ldr_threshold = IntIn(value, key, 0, 1023);
    } else if (key == "detection_cm") {
      config.streetlight.detection_cm = NonNegativeNumber(value, key);
    } else if (key == "hold_ms") {
      config.streetlight.hold = NonNegativeMillis(value, key);
    } else if (key == "smoke_threshold") {
      config.security.smoke_threshold = IntIn(value, key, 0, 1023);
    } else if (key == "presence_range_cm") {
      config.security.presence_range_cm = NonNegativeNumber(value, key);
    } else if (key == "flame_threshold") {
      config.accident.flame_threshold = IntIn(value, key, 0, 1023);
    } else if (key == "directory") {
      for (const auto& [name, number] : Object(value, key).items()) {
        config.accident.directory[ParseDepartment(name)] =
            String(number, "directory." + name);
      }
    } else if (key == "whitelist") {
      for (const auto& [uid, label] : Object(value, key).items()) {
        config.whitelist[uid] = String(label, "whitelist." + uid);
      }
    } else if (key == "plates") {
      Typed(value, key, value.is_array(), "an array");
      for (const auto& entry : value) {
        Object(entry, "plates[]");
        PlateRecord record;
        record.plate = String(entry.value("plate", Json()), "plates[].plate");
        record.owner = entry.contains("owner")
                           ? String(entry["owner"], "plates[].owner")
                           : std::string();
        record.status = entry.contains("status")
                            ? ParsePlateStatus(String(entry["status"], "plates[].status"))
                            : PlateStatus::kRegistered;
        config.plates.push_back(std::move(record));
      }
    } else if (key == "fingerprints") {
      Typed(value, key, value.is_array(), "an array");
      for (const auto& token : value) {
        config.fingerprints.push_back(String(token, "fingerprints[]"));
      }
    } else if (key == "latency") {
      for (const auto& [link, ms] : Object(value, key).items()) {
        config.latency[link] = NonNegativeMillis(ms, "latency." + link);
      }
    } else if (key == "sms_latency_ms") {
      config.sms_latency = NonNegativeMillis(value, key);
    } else if (key == "loss") {
      for (const auto& [link, p] : Object(value, key).items()) {
        config.loss[link] = NonNegativeNumber(p, "loss." + link);
      }
    } else if (key == "green_ms") {
      for (const auto& [road, ms] : Object(value, key).items()) {
        int index = 0;
        auto [ptr, ec] = std::from_chars(road.data(), road.data() + road.size(), index);
        if (ec != std::errc() || ptr != road.data() + road.size()) {
          ConfigError("green_ms keys must be road numbers");
        }
        config.green_ms[index] = NonNegativeMillis(ms, "green_ms." + road);
      }
    } else if (key == "env_period_ms") {
      config.env_period = NonNegativeMillis(value, key);
    } else {
      ConfigError("unknown key '" + key + "'");
    }
  }
  return config;
}

City::City(CityConfig config)
    : kernel_(config.sim),
      telemetry_(config.sim.epoch),
      transports_(kernel_),
      transmitter_(transports_),
      streetlight_(kernel_, telemetry_, config.streetlight),
      home_(telemetry_),
      door_(kernel_, telemetry_),
      security_(telemetry_, config.security),
      traffic_(kernel_, telemetry_),
      parking_(kernel_, telemetry_),
      accident_(telemetry_, transports_, config.accident),
      info_(kernel_, telemetry_, config.env_period) {
  AddLinks(transports_);
  for (const auto& [link, latency] : config.latency) {
    transports_.SetLatency(link, latency);
  }
  for (const auto& [link, p] : config.loss) transports_.SetLossProbability(link, p);
  if (config.sms_latency) transports_.SetSmsLatency(*config.sms_latency);

  for (const auto& [uid, label] : config.whitelist) parking_.AddCard(uid, label);
  for (const auto& record : config.plates) {
    traffic_.RegisterPlate(record.plate, record.owner, record.status);
  }
  for (const auto& token : config.fingerprints) door_.Enroll(token);
  for (const auto& [road, ms] : config.green_ms) traffic_.SetGreenDuration(road, ms);

  kernel_.Register(transmitter_);
  kernel_.Register(streetlight_);
  kernel_.Register(home_);
  kernel_.Register(door_);
  kernel_.Register(security_);
  kernel_.Register(traffic_);
  kernel_.Register(parking_);
  kernel_.Register(accident_);
  kernel_.Register(info_);
}

std::uint64_t City::Inject(VirtualTime at, std::string_view target,
                           std::string_view event, const Json& args) {
  const EventSpec& spec = FindEvent(target, event);
  ValidateArgs(spec, args);
  if (spec.link.empty()) {
    return kernel_.Schedule(at, std::string(target),
                            Stimulus{std::string(event), args});
  }

  Json send{{"link", spec.link}};
  if (target == "streetlight") {
    send["bytes"] = args.at("byte");
  } else if (target == "home") {
    send["body"] = Json{{"appliance", args.at("appliance")}, {"on", args.at("on")}};
  } else if (target == "info") {
    send["bytes"] = args.at("msg");
  } else if (target == "accident") {
    send["sentence"] = args.contains("sentence")
                           ? args.at("sentence").get<std::string>()
                           : ComposeNmeaRmc(args.at("lat").get<double>(),
                                            args.at("lon").get<double>(),
                                            args.value("valid", true));
  }
  return kernel_.Schedule(at, std::string(Transmitter::kId),
                          Stimulus{"send", std::move(send)});
}

Json City::Query(std::string_view path) const {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    parts.emplace_back(path.substr(start, dot == std::string_view::npos
                                              ? std::string_view::npos
                                              : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  auto fail = [&](const std::string& why) -> Json {
    throw Error(ErrorCode::kUnknownQueryPath,
                "query '" + std::string(path) + "': " + why);
  };
  if (parts.size() < 2 || parts[0].empty()) return fail("expected <device>.<field>");

  OrderedJson node;
  if (parts[0] == "kernel") {
    node = OrderedJson{{"now_ms", ToMillis(kernel_.now())},
                       {"pending", kernel_.pending()},
                       {"dispatched", kernel_.transcript().size()},
                       {"diagnostics", kernel_.diagnostics().size()}};
  } else if (kernel_.IsRegistered(parts[0])) {
    node = kernel_.device(parts[0]).Snapshot(kernel_.now());
  } else {
    return fail("no device '" + parts[0] + "'");
  }

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& key = parts[i];
    if (node.is_object() && node.contains(key)) {
      OrderedJson next = node[key];
      node = std::move(next);
    } else if (node.is_array()) {
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
      if (ec != std::errc() || ptr != key.data() + key.size() || index >= node.size()) {
        return fail("bad index '" + key + "'");
      }
      OrderedJson next = node[index];
      node = std::move(next);
    } else {
      return fail("no field '" + key + "'");
    }
  }
  return Json::parse(node.dump());
}

OrderedJson City::SnapshotAll() const {
  OrderedJson out = OrderedJson::object();
  for (const auto& id : kernel_.DeviceIds()) {
    out[id] = kernel_.device(id).Snapshot(kernel_.now());
  }
  return out;
}

}  // namespace citysim
