/*
 * Copyright 2026 The fogmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fogmatch/catalog.hpp"

#include <algorithm>

#include "fogmatch/errors.hpp"

namespace fogmatch {

const char* to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::NonPositiveCapacity: return "NonPositiveCapacity";
  case ErrorCode::VFScenarioWithZeroVehicles: return "VFScenarioWithZeroVehicles";
  case ErrorCode::UnknownDeviceName: return "UnknownDeviceName";
  case ErrorCode::InvalidScenario: return "InvalidScenario";
  case ErrorCode::InvalidRange: return "InvalidRange";
  case ErrorCode::KOutOfRange: return "KOutOfRange";
  case ErrorCode::OverCapacity: return "OverCapacity";
  case ErrorCode::UnassignedRequest: return "UnassignedRequest";
  case ErrorCode::PackageMismatch: return "PackageMismatch";
  case ErrorCode::Infeasible: return "Infeasible";
  case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
  case ErrorCode::ConfigError: return "ConfigError";
  case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

const char* to_string(NodeRole role) {
  switch (role) {
  case NodeRole::Vehicle: return "vehicle";
  case NodeRole::FogServer: return "fog_server";
  case NodeRole::CloudServer: return "cloud_server";
  }
  return "?";
}

std::optional<NodeRole> node_role_from_string(std::string_view name) {
  if (name == "vehicle") return NodeRole::Vehicle;
  if (name == "fog_server") return NodeRole::FogServer;
  if (name == "cloud_server") return NodeRole::CloudServer;
  return std::nullopt;
}

const char* to_string(DeviceName name) {
  switch (name) {
  case DeviceName::VehicleWifi: return "vehicle_wifi";
  case DeviceName::Ap: return "ap";
  case DeviceName::Rsu: return "rsu";
  case DeviceName::Onu: return "onu";
  case DeviceName::Olt: return "olt";
  case DeviceName::FogNet: return "fog_net";
  case DeviceName::EthSwitch: return "eth_switch";
  case DeviceName::EdgeRouter: return "edge_router";
  case DeviceName::CoreRouter: return "core_router";
  case DeviceName::CloudSwitch: return "cloud_switch";
  case DeviceName::CloudRouter: return "cloud_router";
  }
  return "?";
}

std::optional<DeviceName> device_from_string(std::string_view name) {
  for (int i = 0; i < kDeviceCount; ++i) {
    auto candidate = static_cast<DeviceName>(i);
    if (name == to_string(candidate)) return candidate;
  }
  return std::nullopt;
}

const char* to_string(Tier tier) {
  switch (tier) {
  case Tier::VehicularFog: return "vf";
  case Tier::FixedFog: return "fixed_fog";
  case Tier::Cloud: return "cloud";
  }
  return "?";
}

const char* to_string(ScenarioKind kind) {
  switch (kind) {
  case ScenarioKind::Cloud: return "Cloud";
  case ScenarioKind::CloudFog: return "CloudFog";
  case ScenarioKind::CloudFogVF1: return "CloudFogVF1";
  case ScenarioKind::CloudFogVF2: return "CloudFogVF2";
  case ScenarioKind::CloudFogVF3: return "CloudFogVF3";
  case ScenarioKind::Custom: return "custom";
  }
  return "?";
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view name) {
  for (ScenarioKind kind :
       {ScenarioKind::Cloud, ScenarioKind::CloudFog, ScenarioKind::CloudFogVF1,
        ScenarioKind::CloudFogVF2, ScenarioKind::CloudFogVF3,
        ScenarioKind::Custom}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

bool Deployment::hosts(int vehicle, PackageId package) const {
  if (vehicle < 0 || vehicle >= vehicle_count()) return false;
  const auto& set = vehicle_packages[vehicle];
  return std::binary_search(set.begin(), set.end(), package);
}

Scenario Scenario::preset(ScenarioKind kind) {
  Scenario s;
  s.kind = kind;
  s.core_hops = kDefaultCoreHops;
  s.cloud_enabled = true;
  switch (kind) {
  case ScenarioKind::Cloud:
    s.vehicle_count = 0;
    s.fog_server_count = 0;
    break;
  case ScenarioKind::CloudFog:
    s.vehicle_count = 0;
    s.fog_server_count = kDefaultFogServers;
    break;
  case ScenarioKind::CloudFogVF1:
    s.vehicle_count = 5;
    s.fog_server_count = kDefaultFogServers;
    break;
  case ScenarioKind::CloudFogVF2:
    s.vehicle_count = 10;
    s.fog_server_count = kDefaultFogServers;
    break;
  case ScenarioKind::CloudFogVF3:
    s.vehicle_count = 20;
    s.fog_server_count = kDefaultFogServers;
    break;
  case ScenarioKind::Custom:
    s.vehicle_count = 0;
    s.fog_server_count = 0;
    break;
  }
  return s;
}

const NodeSpec& Catalog::node(NodeRole role) const {
  switch (role) {
  case NodeRole::Vehicle: return vehicle;
  case NodeRole::FogServer: return fog_server;
  case NodeRole::CloudServer: return cloud_server;
  }
  return cloud_server;
}

const PathSpec& Catalog::path(Tier tier) const {
  switch (tier) {
  case Tier::VehicularFog: return vf_path;
  case Tier::FixedFog: return fixed_fog_path;
  case Tier::Cloud: return cloud_path;
  }
  return cloud_path;
}

Catalog default_catalog() {
  Catalog c;
  c.vehicle = {NodeRole::Vehicle, 240.0, 3.1, 8.0 * kMbPerGb, 0.5};
  c.fog_server = {NodeRole::FogServer, 2700.0, 64.5, 120.0 * kMbPerGb, 10.5};
  c.cloud_server = {NodeRole::CloudServer, 4000.0, 300.0, 75.6 * kMbPerTb, 4900.0};

  auto set = [&c](DeviceName name, double capacity_mbps, double max_power_w,
                  bool enforce = false) {
    c.device(name) = {name, capacity_mbps, max_power_w, enforce};
  };
  // Only the per-vehicle WiFi link is a hard constraint by default; the
  // shared aggregation devices contribute power but do not reject load.
  set(DeviceName::VehicleWifi, 54.0, 0.207, true);
  set(DeviceName::Ap, 1.75 * kMbpsPerGbps, 7.42);
  set(DeviceName::Rsu, 27.0, 7.0);
  set(DeviceName::Onu, 2.488 * kMbpsPerGbps, 5.0);
  set(DeviceName::Olt, 320.0 * kMbpsPerGbps, 400.0);
  set(DeviceName::FogNet, 2.4 * kMbpsPerGbps, 48.0);
  set(DeviceName::EthSwitch, 100.0 * kMbpsPerGbps, 63.2e3);
  set(DeviceName::EdgeRouter, 200.0 * kMbpsPerGbps, 4.2e3);
  set(DeviceName::CoreRouter, 640.0 * kMbpsPerGbps, 10.9e3);
  set(DeviceName::CloudSwitch, 320.0 * kMbpsPerGbps, 3.8e3);
  set(DeviceName::CloudRouter, 660.0 * kMbpsPerGbps, 5.1e3);

  c.vf_path = {Tier::VehicularFog,
               {DeviceName::Rsu, DeviceName::Ap, DeviceName::VehicleWifi}};
  c.fixed_fog_path = {Tier::FixedFog,
                      {DeviceName::Rsu, DeviceName::Ap, DeviceName::Onu,
                       DeviceName::Olt, DeviceName::FogNet}};
  c.cloud_path = {Tier::Cloud,
                  {DeviceName::Rsu, DeviceName::Ap, DeviceName::Onu,
                   DeviceName::Olt, DeviceName::EdgeRouter,
                   DeviceName::EthSwitch, DeviceName::CoreRouter,
                   DeviceName::CloudRouter, DeviceName::CloudSwitch}};
  return c;
}

std::vector<DeviceSpec> expanded_path(const Catalog& catalog, Tier tier,
                                      const Scenario& scenario) {
  const int hops = scenario.core_hops >= 0 ? scenario.core_hops : kDefaultCoreHops;
  std::vector<DeviceSpec> out;
  for (DeviceName name : catalog.path(tier).devices) {
    DeviceSpec spec = catalog.device(name);
    for (const auto& [dev, flag] : scenario.enforce_overrides) {
      if (dev == name) spec.enforce_capacity = flag;
    }
    const int copies = (name == DeviceName::CoreRouter) ? hops : 1;
    for (int i = 0; i < copies; ++i) out.push_back(spec);
  }
  return out;
}

namespace {

void check_node(const NodeSpec& node) {
  if (node.cpu_capacity_mhz <= 0 || node.storage_capacity_mb <= 0 ||
      node.cpu_max_power_w <= 0 || node.storage_max_power_w <= 0) {
    throw Error(ErrorCode::NonPositiveCapacity,
                std::string("node '") + to_string(node.role) +
                    "' must have positive capacities and powers");
  }
}

} // namespace

Scenario validate_scenario(Scenario scenario, const Catalog& catalog) {
  check_node(catalog.vehicle);
  check_node(catalog.fog_server);
  check_node(catalog.cloud_server);
  for (const auto& dev : catalog.devices) {
    if (dev.capacity_mbps <= 0) {
      throw Error(ErrorCode::NonPositiveCapacity,
                  std::string("device '") + to_string(dev.name) +
                      "' must have positive capacity");
    }
    if (dev.max_power_w < 0) {
      throw Error(ErrorCode::NonPositiveCapacity,
                  std::string("device '") + to_string(dev.name) +
                      "' must have non-negative max power");
    }
  }

  const Scenario defaults = Scenario::preset(scenario.kind);
  if (scenario.vehicle_count < 0) scenario.vehicle_count = defaults.vehicle_count;
  if (scenario.fog_server_count < 0)
    scenario.fog_server_count = defaults.fog_server_count;
  if (scenario.core_hops < 0) scenario.core_hops = defaults.core_hops;

  switch (scenario.kind) {
  case ScenarioKind::Cloud:
    if (scenario.vehicle_count != 0 || scenario.fog_server_count != 0)
      throw Error(ErrorCode::InvalidScenario,
                  "Cloud scenario must have V = 0 and F = 0");
    if (!scenario.cloud_enabled)
      throw Error(ErrorCode::InvalidScenario,
                  "Cloud scenario must have the cloud tier enabled");
    break;
  case ScenarioKind::CloudFog:
    if (scenario.vehicle_count != 0)
      throw Error(ErrorCode::InvalidScenario, "CloudFog scenario must have V = 0");
    if (scenario.fog_server_count < 1)
      throw Error(ErrorCode::InvalidScenario,
                  "CloudFog scenario must have at least one fog server");
    break;
  case ScenarioKind::CloudFogVF1:
  case ScenarioKind::CloudFogVF2:
  case ScenarioKind::CloudFogVF3:
    if (scenario.vehicle_count == 0)
      throw Error(ErrorCode::VFScenarioWithZeroVehicles,
                  std::string(to_string(scenario.kind)) +
                      " requires a non-empty vehicular fog");
    break;
  case ScenarioKind::Custom:
    break;
  }

  if (scenario.vehicle_count < 0 || scenario.fog_server_count < 0)
    throw Error(ErrorCode::InvalidScenario, "negative node counts");
  if (!scenario.cloud_enabled && scenario.vehicle_count == 0 &&
      scenario.fog_server_count == 0)
    throw Error(ErrorCode::InvalidScenario, "scenario has no tier at all");
  return scenario;
}

} // namespace fogmatch
