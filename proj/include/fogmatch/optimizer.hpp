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

#ifndef FOGMATCH_OPTIMIZER_HPP
#define FOGMATCH_OPTIMIZER_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "fogmatch/catalog.hpp"
#include "fogmatch/power.hpp"
#include "fogmatch/types.hpp"

namespace fogmatch {

/// Caps on a single exact solve. The node budget is the deterministic
/// limit (identical runs stop at the identical point); the wall clock is an
/// emergency stop only and is disabled when non-positive.
struct SolveLimits {
  double time_limit_s = 60.0;
  std::uint64_t max_nodes = 2'000'000;
};

/// Load and utilization of one node under a returned assignment. The cloud
/// row reports load against a single server's capacity, so its utilization
/// may exceed 1 (the pool is unbounded).
struct NodeUse {
  NodeRef node;
  int request_count = 0;
  double cpu_mhz = 0.0;
  double net_mbps = 0.0;
  double storage_mb = 0.0;
  double cpu_utilization = 0.0;
};

/// Result of one matching run. `objective_w` is the canonical objective:
/// the id-ordered sum of per-request standalone power at the assigned tier.
/// It equals power.total_w up to floating-point association (the model is
/// additive), and it is the value the optimality claim refers to.
struct SolveReport {
  Assignment assignment;
  PowerBreakdown power;
  double objective_w = 0.0;
  bool proved_optimal = false;
  /// Upper bound on how far objective_w may sit above the optimum; 0 when
  /// proved_optimal. Heuristic reports (greedy) carry no bound and leave 0.
  double gap_w = 0.0;
  std::array<int, kTierCount> tier_request_counts{};
  std::vector<NodeUse> node_uses;
  std::uint64_t explored_nodes = 0;
};

/// Minimum-power assignment of every request to a hosting node, subject to
/// per-vehicle CPU/storage/WiFi capacity, per-fog-server CPU/storage
/// capacity and software availability. Branch-and-bound over requests in
/// descending-CPU order with best-first expansion; ties broken
/// deterministically by (request id, tier order VF < FixedFog < Cloud, node
/// index). Throws Error(Infeasible) when some request fits nowhere; when a
/// limit stops the search early the incumbent is returned with
/// proved_optimal = false and gap_w > 0.
///
/// `warm_start`, when given and feasible for this instance, seeds the
/// incumbent, so the returned objective never exceeds the warm start's
/// objective. An infeasible or malformed warm start is ignored. Useful for
/// chaining solves across nested deployments, where a smaller instance's
/// assignment stays feasible in the larger one.
SolveReport solve_exact(const std::vector<Request>& requests,
                        const Scenario& scenario, const Deployment& deployment,
                        const Catalog& catalog, const SolveLimits& limits = {},
                        const Assignment* warm_start = nullptr);

/// Baseline heuristic: requests in descending-CPU order (ties by id), each
/// placed on the cheapest currently feasible node (ties by tier, then node
/// index). Feasible whenever the cloud tier is enabled. The report carries
/// no optimality proof or bound.
SolveReport greedy_baseline(const std::vector<Request>& requests,
                            const Scenario& scenario,
                            const Deployment& deployment,
                            const Catalog& catalog);

/// Exhaustive enumeration over all feasible assignments, for testing
/// solve_exact on small instances. Guards: at most 8 requests and at most 6
/// candidate nodes (vehicles + fog servers + cloud), else
/// Error(InstanceTooLarge). Throws Error(Infeasible) when nothing fits.
SolveReport brute_force_oracle(const std::vector<Request>& requests,
                               const Scenario& scenario,
                               const Deployment& deployment,
                               const Catalog& catalog);

} // namespace fogmatch

#endif // FOGMATCH_OPTIMIZER_HPP
