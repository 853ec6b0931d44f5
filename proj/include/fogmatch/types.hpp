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

#ifndef FOGMATCH_TYPES_HPP
#define FOGMATCH_TYPES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fogmatch {

// Unit conversions used everywhere. Storage is binary-prefixed, line rates
// are decimal-prefixed.
inline constexpr double kMbPerGb = 1024.0;
inline constexpr double kMbPerTb = 1024.0 * 1024.0;
inline constexpr double kMbpsPerGbps = 1000.0;

inline constexpr int kDefaultPackagePool = 10; // S
inline constexpr int kDefaultCoreHops = 4;     // H
inline constexpr int kDefaultFogServers = 2;   // F

/// Software packages are numbered 1..S.
using PackageId = int;

/// One user demand: CPU, network and storage plus the software package that
/// must be present on the serving node.
struct Request {
  int id = 0;
  double cpu_mhz = 0.0;
  double net_mbps = 0.0;
  double storage_mb = 0.0;
  PackageId package = 0;
};

enum class NodeRole { Vehicle, FogServer, CloudServer };

const char* to_string(NodeRole role);
std::optional<NodeRole> node_role_from_string(std::string_view name);

/// Compute-node capacities and maximum power draw.
struct NodeSpec {
  NodeRole role = NodeRole::Vehicle;
  double cpu_capacity_mhz = 0.0;
  double cpu_max_power_w = 0.0;
  double storage_capacity_mb = 0.0;
  double storage_max_power_w = 0.0;
};

enum class DeviceName {
  VehicleWifi,
  Ap,
  Rsu,
  Onu,
  Olt,
  FogNet,
  EthSwitch,
  EdgeRouter,
  CoreRouter,
  CloudSwitch,
  CloudRouter,
};

inline constexpr int kDeviceCount = 11;

const char* to_string(DeviceName name);
std::optional<DeviceName> device_from_string(std::string_view name);

/// Network-device capacity and maximum power draw. A device only rejects
/// traffic above its capacity when enforce_capacity is set; otherwise it just
/// keeps scaling power with load.
struct DeviceSpec {
  DeviceName name = DeviceName::VehicleWifi;
  double capacity_mbps = 0.0;
  double max_power_w = 0.0;
  bool enforce_capacity = false;
};

/// Processing tiers, ordered by placement preference for tie-breaking.
enum class Tier { VehicularFog = 0, FixedFog = 1, Cloud = 2 };

inline constexpr int kTierCount = 3;

const char* to_string(Tier tier);

/// Device chain a request's traffic traverses to reach a tier. CoreRouter
/// entries are applied core_hops times when the chain is expanded.
struct PathSpec {
  Tier destination = Tier::Cloud;
  std::vector<DeviceName> devices;
};

enum class ScenarioKind {
  Cloud,
  CloudFog,
  CloudFogVF1,
  CloudFogVF2,
  CloudFogVF3,
  Custom,
};

const char* to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view name);

/// Which tiers exist and how big they are. Negative counts mean "use the
/// preset default"; validate_scenario fills them in.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Cloud;
  int vehicle_count = -1;    // V
  int fog_server_count = -1; // F
  int core_hops = -1;        // H
  bool cloud_enabled = true;
  /// Per-scenario overrides of the catalog's enforce_capacity flags.
  std::vector<std::pair<DeviceName, bool>> enforce_overrides;

  static Scenario preset(ScenarioKind kind);

  bool has_vehicular_fog() const { return vehicle_count > 0; }
  bool has_fixed_fog() const { return fog_server_count > 0; }
};

/// Per-vehicle sets of preloaded software packages. The cloud and the fixed
/// fog implicitly hold every package in the pool.
struct Deployment {
  int pool_size = kDefaultPackagePool; // S
  int packages_per_vehicle = 0;        // k
  /// One sorted, duplicate-free set of package ids per vehicle.
  std::vector<std::vector<PackageId>> vehicle_packages;

  int vehicle_count() const { return static_cast<int>(vehicle_packages.size()); }
  bool hosts(int vehicle, PackageId package) const;
};

/// Where a request was placed: a tier and a node index within that tier.
/// The cloud is a single aggregate pool, so its index is always 0.
struct NodeRef {
  Tier tier = Tier::Cloud;
  int index = 0;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

/// Total map from request id (vector position) to serving node.
struct Assignment {
  std::vector<NodeRef> node_of;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

} // namespace fogmatch

#endif // FOGMATCH_TYPES_HPP
