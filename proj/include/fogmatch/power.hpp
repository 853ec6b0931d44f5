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

#ifndef FOGMATCH_POWER_HPP
#define FOGMATCH_POWER_HPP

#include <span>
#include <vector>

#include "fogmatch/catalog.hpp"
#include "fogmatch/types.hpp"

namespace fogmatch {

// Every device and server draws power strictly proportionally to carried
// load: power = (load / capacity) * max_power, zero at zero load. There is
// no idle or fixed term, which keeps total power additive across requests.

struct TierPower {
  double processing_w = 0.0;
  double networking_w = 0.0;
  double storage_w = 0.0;

  double sum() const { return processing_w + networking_w + storage_w; }
};

struct PowerBreakdown {
  TierPower vf;
  TierPower fixed_fog;
  TierPower cloud;
  double total_w = 0.0;
};

/// CPU power of one node at `load_mhz`. With `enforce` set, loads above
/// capacity throw Error(OverCapacity); the cloud pool is evaluated
/// unenforced because its server count is unbounded.
double processing_power(double load_mhz, const NodeSpec& node,
                        bool enforce = true);

/// Storage power, same contract as processing_power.
double storage_power(double load_mb, const NodeSpec& node, bool enforce = true);

/// Sum of per-device proportional power along an expanded path (see
/// expanded_path). With `enforce` set, a demand above the capacity of a
/// device flagged enforce_capacity throws Error(OverCapacity).
double network_power(double demand_mbps, std::span<const DeviceSpec> path,
                     bool enforce = true);

/// Full power accounting for an assignment: per-node loads are aggregated
/// first, then converted to power. Throws Error(UnassignedRequest) when the
/// map is not total or points at a node outside the scenario,
/// Error(PackageMismatch) when a node lacks the request's package, and
/// Error(OverCapacity) on node or enforced-device overload.
PowerBreakdown total_power(const Assignment& assignment,
                           const std::vector<Request>& requests,
                           const Scenario& scenario,
                           const Deployment& deployment,
                           const Catalog& catalog);

} // namespace fogmatch

#endif // FOGMATCH_POWER_HPP
