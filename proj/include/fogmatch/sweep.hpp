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

#ifndef FOGMATCH_SWEEP_HPP
#define FOGMATCH_SWEEP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fogmatch/catalog.hpp"
#include "fogmatch/optimizer.hpp"
#include "fogmatch/power.hpp"
#include "fogmatch/types.hpp"
#include "fogmatch/workload.hpp"

namespace fogmatch {

/// How the k preloaded packages per vehicle are chosen.
enum class DeploymentPolicy { SameType = 0, RandomType = 1 };

inline constexpr int kPolicyCount = 2;

const char* to_string(DeploymentPolicy policy);
std::optional<DeploymentPolicy> policy_from_string(std::string_view name);

/// Full grid description for one sweep. Defaults reproduce the standard
/// experiment: all five scenarios x both policies x k = 1..10 x seeds 1..20.
struct SweepConfig {
  std::vector<Scenario> scenarios;
  std::vector<DeploymentPolicy> policies{DeploymentPolicy::SameType,
                                         DeploymentPolicy::RandomType};
  int k_lo = 1;
  int k_hi = kDefaultPackagePool;
  std::vector<std::uint64_t> seeds;
  WorkloadConfig workload{};
  Catalog catalog;
  SolveLimits limits{};
  /// Worker threads for the seed-level parallel loop; <= 0 picks the
  /// hardware count. The thread count never changes any result byte.
  int threads = 0;

  SweepConfig();
};

/// Human-readable, filename-safe label for a scenario ("Cloud",
/// "CloudFogVF2", "custom_v7_f3", ...).
std::string scenario_label(const Scenario& s);

/// One solved grid point.
struct CellResult {
  int scenario = 0; // index into SweepConfig::scenarios
  DeploymentPolicy policy = DeploymentPolicy::SameType;
  int k = 0;
  std::uint64_t seed = 0;
  std::string error; // non-empty iff the solve failed; rest is then unset
  double total_w = 0.0;
  PowerBreakdown power;
  std::array<int, kTierCount> tier_requests{};
  double mean_vehicle_cpu_util = 0.0; // over all vehicles, 0 when none
  double min_vehicle_cpu_util = 0.0;
  bool proved_optimal = false;
  double gap_w = 0.0;
  std::uint64_t explored_nodes = 0;
  Assignment assignment;
};

/// Seed-averaged view of one (scenario, policy, k), arithmetic means over
/// the seeds whose cells succeeded. Savings are averaged per-seed ratios
/// against the same seed's baseline cell; NaN when the baseline scenario is
/// absent from the sweep.
struct MeanRow {
  int scenario = 0;
  DeploymentPolicy policy = DeploymentPolicy::SameType;
  int k = 0;
  int seeds_ok = 0;
  double mean_total_w = 0.0;
  PowerBreakdown mean_power;
  std::array<double, kTierCount> mean_tier_requests{};
  double mean_vehicle_cpu_util = 0.0;
  double savings_vs_cloud = 0.0;    // fraction, e.g. 0.35 = 35 %
  double savings_vs_cloud_fog = 0.0;
};

struct SweepResult {
  SweepConfig config; // validated copy the cells were computed under
  /// Canonical order: scenario-major, then policy, k ascending, seed in
  /// config order. Every grid point is present (k-invariant scenarios are
  /// replicated), so indexing is purely positional.
  std::vector<CellResult> cells;
  std::vector<MeanRow> means; // scenario-major, then policy, then k

  int cell_index(int scenario, int policy, int k_value, int seed_pos) const;
  const CellResult& cell(int scenario, int policy, int k_value,
                         int seed_pos) const;
  const MeanRow& mean(int scenario, int policy, int k_value) const;
  int failed_cells() const;
};

/// Solves the whole grid. Per seed the workload is generated once and shared
/// by every cell (paired comparison). Per-cell solver errors are recorded in
/// the cell, not thrown; throws Error(Infeasible) only if every cell failed,
/// Error(ConfigError) on an invalid grid. Deterministic: the same config
/// yields bit-identical results regardless of `threads`.
SweepResult run_sweep(const SweepConfig& cfg);

/// Re-checks every promise the sweep makes, through the independent
/// validator rather than solver bookkeeping: per-cell assignment
/// feasibility, power recomputation within 1e-9 relative, request
/// conservation, seed-mean monotonicity in k per vehicle scenario/policy
/// (1e-9 W slack for summation order), seed-mean dominance along the
/// Cloud >= CloudFog >= VF1 >= VF2 >= VF3 chain, and bit-exact equality of
/// the two policies at k = S. Returns one line per violation; empty when
/// clean.
std::vector<std::string> audit_sweep(const SweepResult& result);

/// Writes the result set under `out_dir` (created if missing):
///   results.json                       full structured results
///   power_vs_k_<policy>.csv            one row per k, one column per scenario
///   allocation_<scenario>_<policy>.csv per-tier mean request counts per k
///   savings_summary.csv                per-k and k-averaged savings
/// File bytes depend only on the result contents.
void emit_results(const SweepResult& result, const std::string& out_dir);

} // namespace fogmatch

#endif // FOGMATCH_SWEEP_HPP
