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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fogmatch/config.hpp"
#include "fogmatch/deployment.hpp"
#include "fogmatch/errors.hpp"
#include "fogmatch/optimizer.hpp"
#include "fogmatch/serialize.hpp"
#include "fogmatch/splitmix64.hpp"
#include "fogmatch/sweep.hpp"
#include "fogmatch/validator.hpp"
#include "fogmatch/workload.hpp"

namespace {

using namespace fogmatch;

// Exit codes: 0 clean, 1 invariant violation, 2 bad input or runtime error.
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

RunConfig load_or_default(const std::string& path) {
  if (path.empty()) return RunConfig{};
  return load_run_config(path);
}

Scenario pick_scenario(const RunConfig& cfg, const std::string& flag) {
  if (!flag.empty()) {
    if (auto kind = scenario_kind_from_string(flag))
      return Scenario::preset(*kind);
    throw Error(ErrorCode::ConfigError, "unknown scenario '" + flag + "'");
  }
  if (cfg.scenario) return *cfg.scenario;
  return Scenario::preset(ScenarioKind::CloudFogVF1);
}

DeploymentPolicy pick_policy(const std::string& flag) {
  if (flag.empty()) return DeploymentPolicy::SameType;
  if (auto policy = policy_from_string(flag)) return *policy;
  throw Error(ErrorCode::ConfigError, "unknown policy '" + flag + "'");
}

// --- solve -------------------------------------------------------------------

void print_report(const SolveReport& rep) {
  std::printf("objective_w=%.6f proved_optimal=%s gap_w=%.6f explored_nodes=%llu\n",
              rep.objective_w, rep.proved_optimal ? "yes" : "no", rep.gap_w,
              static_cast<unsigned long long>(rep.explored_nodes));
  std::printf("tier_requests: vf=%d fixed_fog=%d cloud=%d\n",
              rep.tier_request_counts[0], rep.tier_request_counts[1],
              rep.tier_request_counts[2]);
  std::printf("power_w: vf=%.6f fixed_fog=%.6f cloud=%.6f total=%.6f\n",
              rep.power.vf.sum(), rep.power.fixed_fog.sum(),
              rep.power.cloud.sum(), rep.power.total_w);
}

/// Validates a (requests, scenario, deployment, assignment, total_w) bundle
/// through the independent checker. Prints findings; returns process exit.
int run_check(const std::vector<Request>& requests, const Scenario& scenario,
              const Deployment& deployment, const Catalog& catalog,
              const Assignment& assignment, double reported_total_w) {
  const CheckReport check =
      check_assignment(assignment, requests, scenario, deployment, catalog);
  if (!check.ok()) {
    std::printf("check: INVALID\n%s", check.to_text().c_str());
    return kExitViolation;
  }
  const PowerBreakdown redo =
      recompute_power(assignment, requests, scenario, deployment, catalog);
  const double rel = std::abs(redo.total_w - reported_total_w) /
                     std::max(1.0, std::abs(reported_total_w));
  if (rel > 1e-9) {
    std::printf("check: POWER MISMATCH reported=%.9f recomputed=%.9f\n",
                reported_total_w, redo.total_w);
    return kExitViolation;
  }
  std::printf("check: ok (recomputed %.6f W, relative diff %.3g)\n",
              redo.total_w, rel);
  return 0;
}

int cmd_solve(const std::string& config_path, std::uint64_t seed, int k,
              const std::string& scenario_flag, const std::string& policy_flag,
              double time_limit, const std::string& out_path,
              const std::string& in_path, bool check) {
  const RunConfig cfg = load_or_default(config_path);
  const Catalog& catalog = cfg.sweep.catalog;

  if (!in_path.empty()) {
    // Re-validate a stored solve file instead of solving.
    const Json j = load_json_file(in_path);
    require_keys(j, {"schema_version", "scenario", "deployment", "requests",
                     "report"},
                 in_path);
    const auto requests = requests_from_json(j.at("requests"), in_path);
    const Scenario scenario = scenario_from_json(j.at("scenario"), in_path);
    const Deployment deployment =
        deployment_from_json(j.at("deployment"), in_path);
    const Json& report = j.at("report");
    const Assignment assignment =
        assignment_from_json(report.at("assignment"), in_path);
    const double total = report.at("power").at("total_w").get<double>();
    return run_check(requests, scenario, deployment, catalog, assignment,
                     total);
  }

  Scenario scenario = pick_scenario(cfg, scenario_flag);
  scenario = validate_scenario(scenario, catalog);
  const DeploymentPolicy policy = pick_policy(policy_flag);
  WorkloadConfig wl = cfg.sweep.workload;
  if (k <= 0) k = wl.package_pool;
  const std::vector<Request> requests = generate_requests(seed, wl);
  const Deployment deployment =
      policy == DeploymentPolicy::SameType
          ? same_type_deployment(scenario.vehicle_count, k, wl.package_pool)
          : random_type_deployment(scenario.vehicle_count, k, seed,
                                   wl.package_pool);

  SolveLimits limits = cfg.sweep.limits;
  if (time_limit >= 0) limits.time_limit_s = time_limit;

  std::printf("scenario=%s policy=%s k=%d seed=%llu\n",
              scenario_label(scenario).c_str(), to_string(policy), k,
              static_cast<unsigned long long>(seed));
  const SolveReport rep =
      solve_exact(requests, scenario, deployment, catalog, limits);
  print_report(rep);

  if (!out_path.empty()) {
    Json j{{"schema_version", kSchemaVersion},
           {"scenario", to_json(scenario)},
           {"deployment", to_json(deployment)},
           {"requests", Json::array()},
           {"report", to_json(rep)}};
    for (const Request& r : requests) j["requests"].push_back(to_json(r));
    write_text_file(out_path, j.dump(2) + "\n");
    std::printf("wrote %s\n", out_path.c_str());
  }
  if (check)
    return run_check(requests, scenario, deployment, catalog, rep.assignment,
                     rep.power.total_w);
  return 0;
}

// --- oracle-check --------------------------------------------------------

int cmd_oracle_check(const std::string& config_path, int instances,
                     std::uint64_t base_seed) {
  const RunConfig cfg = load_or_default(config_path);
  const Catalog& catalog = cfg.sweep.catalog;
  int mismatches = 0;
  double worst = 0.0;

  for (int i = 0; i < instances; ++i) {
    SplitMix64 rng(SplitMix64::mix(base_seed) ^ SplitMix64::mix(i + 1));
    // Keep vehicles + fogs + cloud <= 4 so the oracle stays instant.
    const int vehicles = rng.next_below(4);
    const int fogs = rng.next_below(4 - vehicles);
    const int pool = 1 + rng.next_below(4);
    const int k = 1 + rng.next_below(pool);

    Scenario scenario = Scenario::preset(ScenarioKind::Custom);
    scenario.vehicle_count = vehicles;
    scenario.fog_server_count = fogs;
    scenario = validate_scenario(scenario, catalog);

    WorkloadConfig wl;
    wl.n_requests = 1 + rng.next_below(6);
    wl.cpu_lo_mhz = 20.0;
    wl.cpu_hi_mhz = 260.0;
    wl.net_lo_mbps = 1.0;
    wl.net_hi_mbps = 40.0;
    wl.storage_lo_mb = 5.0;
    wl.storage_hi_mb = 300.0;
    wl.package_pool = pool;
    const std::vector<Request> requests = generate_requests(rng.next(), wl);
    const Deployment deployment =
        random_type_deployment(vehicles, k, rng.next(), pool);

    const SolveReport fast =
        solve_exact(requests, scenario, deployment, catalog);
    const SolveReport oracle =
        brute_force_oracle(requests, scenario, deployment, catalog);
    const double diff = std::abs(fast.objective_w - oracle.objective_w);
    worst = std::max(worst, diff);
    if (fast.objective_w != oracle.objective_w) {
      ++mismatches;
      std::printf("MISMATCH instance=%d n=%d V=%d F=%d pool=%d k=%d: "
                  "solver=%.12f oracle=%.12f\n",
                  i, wl.n_requests, vehicles, fogs, pool, k, fast.objective_w,
                  oracle.objective_w);
    }
    const CheckReport check = check_assignment(fast.assignment, requests,
                                               scenario, deployment, catalog);
    if (!check.ok()) {
      ++mismatches;
      std::printf("INVALID solver assignment, instance=%d:\n%s", i,
                  check.to_text().c_str());
    }
  }
  std::printf("oracle-check: %d instances, %d mismatches, worst |diff|=%.3g\n",
              instances, mismatches, worst);
  return mismatches == 0 ? 0 : kExitViolation;
}

// --- sweep -------------------------------------------------------------------

int cmd_sweep(const std::string& config_path,
              const std::vector<std::uint64_t>& seeds,
              const std::vector<int>& kvals,
              const std::vector<std::string>& scenario_flags,
              const std::string& policy_flag, double time_limit, int threads,
              const std::string& out_flag) {
  RunConfig cfg = load_or_default(config_path);
  SweepConfig& sweep = cfg.sweep;
  if (!seeds.empty()) sweep.seeds = seeds;
  if (kvals.size() == 1) sweep.k_lo = sweep.k_hi = kvals[0];
  if (kvals.size() == 2) {
    sweep.k_lo = kvals[0];
    sweep.k_hi = kvals[1];
  }
  if (!scenario_flags.empty()) {
    sweep.scenarios.clear();
    for (const std::string& name : scenario_flags) {
      const auto kind = scenario_kind_from_string(name);
      if (!kind)
        throw Error(ErrorCode::ConfigError, "unknown scenario '" + name + "'");
      sweep.scenarios.push_back(Scenario::preset(*kind));
    }
  }
  if (!policy_flag.empty()) sweep.policies = {pick_policy(policy_flag)};
  if (time_limit >= 0) sweep.limits.time_limit_s = time_limit;
  if (threads >= 0) sweep.threads = threads;
  const std::string out_dir = out_flag.empty() ? cfg.out_dir : out_flag;

  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult result = run_sweep(sweep);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  emit_results(result, out_dir);

  int proved = 0;
  for (const CellResult& cell : result.cells)
    if (cell.error.empty() && cell.proved_optimal) ++proved;
  std::printf("sweep: %zu cells (%d failed, %d proved optimal) in %.1f s -> %s\n",
              result.cells.size(), result.failed_cells(), proved, elapsed,
              out_dir.c_str());
  for (const CellResult& cell : result.cells)
    if (!cell.error.empty())
      std::printf("cell error: %s\n", cell.error.c_str());

  const std::vector<std::string> violations = audit_sweep(result);
  for (const std::string& v : violations)
    std::printf("VIOLATION: %s\n", v.c_str());
  if (!violations.empty()) {
    std::printf("sweep: %zu invariant violations\n", violations.size());
    return kExitViolation;
  }
  std::printf("sweep: all invariants hold\n");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-optimal request placement across cloud, fixed fog and "
               "vehicular fog tiers"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 1;
  int k = 0; // 0 = full pool
  std::string scenario_flag, policy_flag;
  double time_limit = -1.0;
  std::string out_path, in_path;
  bool check = false;
  int instances = 200;
  std::uint64_t oracle_seed = 12345;
  std::vector<std::uint64_t> seeds;
  std::vector<int> kvals;
  std::vector<std::string> scenario_flags;
  int threads = -1;

  CLI::App* cat = app.add_subcommand("catalog", "Print the data set in use");
  cat->add_option("--config", config_path, "Config file (JSON)");

  CLI::App* solve =
      app.add_subcommand("solve", "Solve one seeded instance exactly");
  solve->add_option("--config", config_path, "Config file (JSON)");
  solve->add_option("--seed", seed, "Workload seed (default 1)");
  solve->add_option("--k", k,
                    "Packages preloaded per vehicle (default: whole pool)");
  solve->add_option("--scenario", scenario_flag,
                    "Cloud|CloudFog|CloudFogVF1|CloudFogVF2|CloudFogVF3");
  solve->add_option("--policy", policy_flag, "same_type|random_type");
  solve->add_option("--time-limit", time_limit, "Solver time limit, seconds");
  solve->add_option("--out", out_path, "Write the full result as JSON");
  solve->add_option("--in", in_path,
                    "Re-validate a stored solve file instead of solving");
  solve->add_flag("--check", check,
                  "Re-validate the assignment with the independent checker");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Compare the solver against exhaustive enumeration on "
                      "small random instances");
  oracle->add_option("--config", config_path, "Config file (JSON)");
  oracle->add_option("--instances", instances, "Instance count (default 200)");
  oracle->add_option("--seed", oracle_seed, "Generator seed (default 12345)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run the scenario/policy/k/seed grid and emit result files");
  sweep->add_option("--config", config_path, "Config file (JSON)");
  sweep->add_option("--seeds", seeds, "Explicit seed list (default 1..20)");
  sweep->add_option("--k", kvals, "K or K_LO K_HI (default 1 10)")
      ->expected(1, 2);
  sweep->add_option("--scenario", scenario_flags,
                    "Scenario subset (default: all five)");
  sweep->add_option("--policy", policy_flag,
                    "Restrict to one policy (default: both)");
  sweep->add_option("--time-limit", time_limit,
                    "Per-cell solver time limit, seconds");
  sweep->add_option("--threads", threads,
                    "Worker threads (0 = hardware, never changes results)");
  sweep->add_option("--out", out_path, "Output directory (default: config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cat->parsed()) {
      const RunConfig cfg = load_or_default(config_path);
      std::printf("%s\n", to_json(cfg.sweep.catalog).dump(2).c_str());
      return 0;
    }
    if (solve->parsed())
      return cmd_solve(config_path, seed, k, scenario_flag, policy_flag,
                       time_limit, out_path, in_path, check);
    if (oracle->parsed())
      return cmd_oracle_check(config_path, instances, oracle_seed);
    if (sweep->parsed())
      return cmd_sweep(config_path, seeds, kvals, scenario_flags, policy_flag,
                       time_limit, threads, out_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", to_string(e.code()), e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
