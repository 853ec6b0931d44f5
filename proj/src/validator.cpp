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

#include "fogmatch/validator.hpp"

#include <sstream>

namespace fogmatch {

namespace {

Violation make_violation(ViolationKind kind, int request, NodeRef node) {
  Violation v;
  v.kind = kind;
  v.request = request;
  v.node = node;
  return v;
}

} // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::SizeMismatch: return "SizeMismatch";
  case ViolationKind::InvalidNode: return "InvalidNode";
  case ViolationKind::PackageMismatch: return "PackageMismatch";
  case ViolationKind::CpuOverCapacity: return "CpuOverCapacity";
  case ViolationKind::NetworkOverCapacity: return "NetworkOverCapacity";
  case ViolationKind::StorageOverCapacity: return "StorageOverCapacity";
  }
  return "?";
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << to_string(v.kind);
    if (v.request >= 0) os << " request=" << v.request;
    if (v.kind != ViolationKind::SizeMismatch)
      os << " node=" << to_string(v.node.tier) << "[" << v.node.index << "]";
    if (v.load > 0 || v.limit > 0)
      os << " load=" << v.load << " limit=" << v.limit;
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "\n";
  }
  return os.str();
}

CheckReport check_assignment(const Assignment& assignment,
                             const std::vector<Request>& requests,
                             const Scenario& scenario,
                             const Deployment& deployment,
                             const Catalog& catalog) {
  const Scenario s = validate_scenario(scenario, catalog);
  CheckReport rep;

  if (assignment.node_of.size() != requests.size()) {
    Violation v = make_violation(ViolationKind::SizeMismatch, -1, NodeRef{});
    v.detail = "assignment maps " + std::to_string(assignment.node_of.size()) +
               " requests, workload has " + std::to_string(requests.size());
    rep.violations.push_back(std::move(v));
    return rep; // nothing below is meaningful without a 1:1 map
  }

  const int vehicles = s.vehicle_count;
  const int fogs = s.fog_server_count;
  std::vector<double> veh_cpu(vehicles, 0.0), veh_net(vehicles, 0.0),
      veh_sto(vehicles, 0.0);
  std::vector<double> fog_cpu(fogs, 0.0), fog_sto(fogs, 0.0);
  double tier_net[kTierCount] = {0.0, 0.0, 0.0};

  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Request& r = requests[i];
    const NodeRef ref = assignment.node_of[i];
    const int t = static_cast<int>(ref.tier);
    bool placed = false;
    switch (ref.tier) {
    case Tier::VehicularFog:
      if (ref.index < 0 || ref.index >= vehicles) {
        Violation v = make_violation(ViolationKind::InvalidNode, r.id, ref);
        v.detail = "vehicle index outside 0.." + std::to_string(vehicles - 1);
        rep.violations.push_back(std::move(v));
      } else if (!deployment.hosts(ref.index, r.package)) {
        Violation v = make_violation(ViolationKind::PackageMismatch, r.id, ref);
        v.detail = "vehicle " + std::to_string(ref.index) +
                   " lacks package " + std::to_string(r.package);
        rep.violations.push_back(std::move(v));
        placed = true; // still occupies capacity on that vehicle
      } else {
        placed = true;
      }
      if (placed) {
        veh_cpu[ref.index] += r.cpu_mhz;
        veh_net[ref.index] += r.net_mbps;
        veh_sto[ref.index] += r.storage_mb;
      }
      break;
    case Tier::FixedFog:
      if (ref.index < 0 || ref.index >= fogs) {
        Violation v = make_violation(ViolationKind::InvalidNode, r.id, ref);
        v.detail = "fog index outside 0.." + std::to_string(fogs - 1);
        rep.violations.push_back(std::move(v));
      } else {
        fog_cpu[ref.index] += r.cpu_mhz;
        fog_sto[ref.index] += r.storage_mb;
        placed = true;
      }
      break;
    case Tier::Cloud:
      if (!s.cloud_enabled || ref.index != 0) {
        Violation v = make_violation(ViolationKind::InvalidNode, r.id, ref);
        v.detail = "cloud node unavailable";
        rep.violations.push_back(std::move(v));
      } else {
        placed = true;
      }
      break;
    }
    if (placed) tier_net[t] += r.net_mbps;
  }

  auto over = [&rep](ViolationKind kind, NodeRef node, double load,
                     double limit, std::string what) {
    if (load <= limit) return;
    Violation v = make_violation(kind, -1, node);
    v.load = load;
    v.limit = limit;
    v.detail = std::move(what);
    rep.violations.push_back(std::move(v));
  };

  const DeviceSpec& wifi = catalog.device(DeviceName::VehicleWifi);
  bool wifi_enforced = wifi.enforce_capacity;
  for (const auto& [dev, flag] : s.enforce_overrides)
    if (dev == DeviceName::VehicleWifi) wifi_enforced = flag;

  for (int v = 0; v < vehicles; ++v) {
    const NodeRef node{Tier::VehicularFog, v};
    over(ViolationKind::CpuOverCapacity, node, veh_cpu[v],
         catalog.vehicle.cpu_capacity_mhz, "vehicle cpu");
    over(ViolationKind::StorageOverCapacity, node, veh_sto[v],
         catalog.vehicle.storage_capacity_mb, "vehicle storage");
    if (wifi_enforced)
      over(ViolationKind::NetworkOverCapacity, node, veh_net[v],
           wifi.capacity_mbps, "vehicle WiFi");
  }
  for (int f = 0; f < fogs; ++f) {
    const NodeRef node{Tier::FixedFog, f};
    over(ViolationKind::CpuOverCapacity, node, fog_cpu[f],
         catalog.fog_server.cpu_capacity_mhz, "fog cpu");
    over(ViolationKind::StorageOverCapacity, node, fog_sto[f],
         catalog.fog_server.storage_capacity_mb, "fog storage");
  }

  // Shared (tier-path) devices cap the tier-aggregate demand; the vehicle
  // WiFi was already handled per node above.
  for (int t = 0; t < kTierCount; ++t) {
    for (const DeviceSpec& dev :
         expanded_path(catalog, static_cast<Tier>(t), s)) {
      if (!dev.enforce_capacity || dev.name == DeviceName::VehicleWifi)
        continue;
      over(ViolationKind::NetworkOverCapacity,
           NodeRef{static_cast<Tier>(t), -1}, tier_net[t], dev.capacity_mbps,
           std::string(to_string(dev.name)) + " aggregate");
    }
  }
  return rep;
}

PowerBreakdown recompute_power(const Assignment& assignment,
                               const std::vector<Request>& requests,
                               const Scenario& scenario,
                               const Deployment& deployment,
                               const Catalog& catalog) {
  (void)deployment; // feasibility is check_assignment's job
  const Scenario s = validate_scenario(scenario, catalog);
  const auto paths = std::array{expanded_path(catalog, Tier::VehicularFog, s),
                                expanded_path(catalog, Tier::FixedFog, s),
                                expanded_path(catalog, Tier::Cloud, s)};
  const NodeSpec* nodes[kTierCount] = {&catalog.vehicle, &catalog.fog_server,
                                       &catalog.cloud_server};

  PowerBreakdown out;
  TierPower* tiers[kTierCount] = {&out.vf, &out.fixed_fog, &out.cloud};
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Request& r = requests[i];
    const int t = static_cast<int>(assignment.node_of[i].tier);
    const NodeSpec& n = *nodes[t];
    TierPower& tp = *tiers[t];
    tp.processing_w += r.cpu_mhz / n.cpu_capacity_mhz * n.cpu_max_power_w;
    tp.storage_w += r.storage_mb / n.storage_capacity_mb * n.storage_max_power_w;
    for (const DeviceSpec& dev : paths[t])
      tp.networking_w += r.net_mbps / dev.capacity_mbps * dev.max_power_w;
  }
  for (const TierPower* tp : tiers) out.total_w += tp->sum();
  return out;
}

} // namespace fogmatch
