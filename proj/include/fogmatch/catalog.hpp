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

#ifndef FOGMATCH_CATALOG_HPP
#define FOGMATCH_CATALOG_HPP

#include <array>
#include <vector>

#include "fogmatch/types.hpp"

namespace fogmatch {

/// Device/node data and per-tier device chains shared by every module.
/// Immutable after construction; start from default_catalog() and override
/// fields through the config file.
struct Catalog {
  NodeSpec vehicle;
  NodeSpec fog_server;
  NodeSpec cloud_server;
  std::array<DeviceSpec, kDeviceCount> devices{}; // indexed by DeviceName
  PathSpec vf_path;
  PathSpec fixed_fog_path;
  PathSpec cloud_path;

  const DeviceSpec& device(DeviceName name) const {
    return devices[static_cast<int>(name)];
  }
  DeviceSpec& device(DeviceName name) {
    return devices[static_cast<int>(name)];
  }
  const NodeSpec& node(NodeRole role) const;
  const PathSpec& path(Tier tier) const;
};

/// The stock device/node data set with the default tier chains.
Catalog default_catalog();

/// Device chain for reaching `tier` under `scenario`: CoreRouter entries are
/// replicated core_hops times and the scenario's enforce_capacity overrides
/// are applied.
std::vector<DeviceSpec> expanded_path(const Catalog& catalog, Tier tier,
                                      const Scenario& scenario);

/// Checks scenario and catalog invariants and fills preset defaults for
/// omitted (negative) counts. Throws Error on violations
/// (NonPositiveCapacity, VFScenarioWithZeroVehicles, InvalidScenario).
Scenario validate_scenario(Scenario scenario, const Catalog& catalog);

} // namespace fogmatch

#endif // FOGMATCH_CATALOG_HPP
