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

#include "fogmatch/power.hpp"

#include <string>

#include "fogmatch/errors.hpp"

namespace fogmatch {

namespace {

void check_load(double load, const char* what) {
  if (load < 0)
    throw Error(ErrorCode::InvalidRange, std::string(what) + " load < 0");
}

} // namespace

double processing_power(double load_mhz, const NodeSpec& node, bool enforce) {
  check_load(load_mhz, "cpu");
  if (enforce && load_mhz > node.cpu_capacity_mhz)
    throw Error(ErrorCode::OverCapacity,
                std::string("cpu load ") + std::to_string(load_mhz) +
                    " MHz exceeds " + to_string(node.role) + " capacity");
  return load_mhz / node.cpu_capacity_mhz * node.cpu_max_power_w;
}

double storage_power(double load_mb, const NodeSpec& node, bool enforce) {
  check_load(load_mb, "storage");
  if (enforce && load_mb > node.storage_capacity_mb)
    throw Error(ErrorCode::OverCapacity,
                std::string("storage load ") + std::to_string(load_mb) +
                    " MB exceeds " + to_string(node.role) + " capacity");
  return load_mb / node.storage_capacity_mb * node.storage_max_power_w;
}

double network_power(double demand_mbps, std::span<const DeviceSpec> path,
                     bool enforce) {
  check_load(demand_mbps, "network");
  double watts = 0.0;
  for (const DeviceSpec& dev : path) {
    if (enforce && dev.enforce_capacity && demand_mbps > dev.capacity_mbps)
      throw Error(ErrorCode::OverCapacity,
                  std::string("demand ") + std::to_string(demand_mbps) +
                      " Mbps exceeds " + to_string(dev.name) + " capacity");
    watts += demand_mbps / dev.capacity_mbps * dev.max_power_w;
  }
  return watts;
}

PowerBreakdown total_power(const Assignment& assignment,
                           const std::vector<Request>& requests,
                           const Scenario& scenario,
                           const Deployment& deployment,
                           const Catalog& catalog) {
  const Scenario s = validate_scenario(scenario, catalog);
  const int vehicles = s.vehicle_count;
  const int fogs = s.fog_server_count;

  if (assignment.node_of.size() != requests.size())
    throw Error(ErrorCode::UnassignedRequest,
                "assignment maps " + std::to_string(assignment.node_of.size()) +
                    " requests, workload has " + std::to_string(requests.size()));
  if (vehicles > 0 && deployment.vehicle_count() != vehicles)
    throw Error(ErrorCode::InvalidScenario,
                "deployment describes " +
                    std::to_string(deployment.vehicle_count()) +
                    " vehicles, scenario has " + std::to_string(vehicles));

  std::vector<double> veh_cpu(vehicles, 0.0), veh_net(vehicles, 0.0),
      veh_sto(vehicles, 0.0);
  std::vector<double> fog_cpu(fogs, 0.0), fog_sto(fogs, 0.0);
  double cloud_cpu = 0.0, cloud_sto = 0.0;
  double tier_net[kTierCount] = {0.0, 0.0, 0.0};

  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Request& r = requests[i];
    const NodeRef ref = assignment.node_of[i];
    const int t = static_cast<int>(ref.tier);
    switch (ref.tier) {
    case Tier::VehicularFog:
      if (ref.index < 0 || ref.index >= vehicles)
        throw Error(ErrorCode::UnassignedRequest,
                    "request " + std::to_string(r.id) + " mapped to vehicle " +
                        std::to_string(ref.index) + " outside 0.." +
                        std::to_string(vehicles - 1));
      if (!deployment.hosts(ref.index, r.package))
        throw Error(ErrorCode::PackageMismatch,
                    "vehicle " + std::to_string(ref.index) +
                        " lacks package " + std::to_string(r.package) +
                        " of request " + std::to_string(r.id));
      veh_cpu[ref.index] += r.cpu_mhz;
      veh_net[ref.index] += r.net_mbps;
      veh_sto[ref.index] += r.storage_mb;
      break;
    case Tier::FixedFog:
      if (ref.index < 0 || ref.index >= fogs)
        throw Error(ErrorCode::UnassignedRequest,
                    "request " + std::to_string(r.id) + " mapped to fog server " +
                        std::to_string(ref.index) + " outside 0.." +
                        std::to_string(fogs - 1));
      fog_cpu[ref.index] += r.cpu_mhz;
      fog_sto[ref.index] += r.storage_mb;
      break;
    case Tier::Cloud:
      if (!s.cloud_enabled || ref.index != 0)
        throw Error(ErrorCode::UnassignedRequest,
                    "request " + std::to_string(r.id) +
                        " mapped to unavailable cloud node");
      cloud_cpu += r.cpu_mhz;
      cloud_sto += r.storage_mb;
      break;
    }
    tier_net[t] += r.net_mbps;
  }

  PowerBreakdown out;

  const auto vf_path = expanded_path(catalog, Tier::VehicularFog, s);
  const auto ff_path = expanded_path(catalog, Tier::FixedFog, s);
  const auto cl_path = expanded_path(catalog, Tier::Cloud, s);

  // Per-vehicle WiFi is the one per-node network constraint; shared devices
  // are checked against the tier-aggregate demand below.
  const DeviceSpec& wifi = catalog.device(DeviceName::VehicleWifi);
  bool wifi_enforced = wifi.enforce_capacity;
  for (const auto& [dev, flag] : s.enforce_overrides)
    if (dev == DeviceName::VehicleWifi) wifi_enforced = flag;

  for (int v = 0; v < vehicles; ++v) {
    out.vf.processing_w += processing_power(veh_cpu[v], catalog.vehicle);
    out.vf.storage_w += storage_power(veh_sto[v], catalog.vehicle);
    if (wifi_enforced && veh_net[v] > wifi.capacity_mbps)
      throw Error(ErrorCode::OverCapacity,
                  "vehicle " + std::to_string(v) + " WiFi aggregate " +
                      std::to_string(veh_net[v]) + " Mbps exceeds capacity");
  }
  for (int f = 0; f < fogs; ++f) {
    out.fixed_fog.processing_w += processing_power(fog_cpu[f], catalog.fog_server);
    out.fixed_fog.storage_w += storage_power(fog_sto[f], catalog.fog_server);
  }
  out.cloud.processing_w = processing_power(cloud_cpu, catalog.cloud_server, false);
  out.cloud.storage_w = storage_power(cloud_sto, catalog.cloud_server, false);

  // Proportional power makes per-device power a function of the aggregate
  // tier demand. Enforced shared devices cap that aggregate; the per-vehicle
  // WiFi check above already covered the one per-node device.
  auto tier_network = [&](std::span<const DeviceSpec> path, double demand) {
    double watts = 0.0;
    for (const DeviceSpec& dev : path) {
      if (dev.enforce_capacity && dev.name != DeviceName::VehicleWifi &&
          demand > dev.capacity_mbps)
        throw Error(ErrorCode::OverCapacity,
                    std::string("aggregate demand ") + std::to_string(demand) +
                        " Mbps exceeds " + to_string(dev.name) + " capacity");
      watts += demand / dev.capacity_mbps * dev.max_power_w;
    }
    return watts;
  };
  out.vf.networking_w = tier_network(vf_path, tier_net[0]);
  out.fixed_fog.networking_w = tier_network(ff_path, tier_net[1]);
  out.cloud.networking_w = tier_network(cl_path, tier_net[2]);

  out.total_w = out.vf.processing_w + out.vf.networking_w + out.vf.storage_w +
                out.fixed_fog.processing_w + out.fixed_fog.networking_w +
                out.fixed_fog.storage_w + out.cloud.processing_w +
                out.cloud.networking_w + out.cloud.storage_w;
  return out;
}

} // namespace fogmatch
