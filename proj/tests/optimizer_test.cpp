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

#include "fogmatch/optimizer.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "fogmatch/deployment.hpp"
#include "fogmatch/errors.hpp"
#include "fogmatch/splitmix64.hpp"
#include "fogmatch/validator.hpp"
#include "fogmatch/workload.hpp"

using namespace fogmatch;

namespace {

Request make_request(int id, double cpu, double net, double sto, int pkg) {
  Request r;
  r.id = id;
  r.cpu_mhz = cpu;
  r.net_mbps = net;
  r.storage_mb = sto;
  r.package = pkg;
  return r;
}

Scenario custom(int vehicles, int fogs, bool cloud = true) {
  Scenario s = Scenario::preset(ScenarioKind::Custom);
  s.vehicle_count = vehicles;
  s.fog_server_count = fogs;
  s.cloud_enabled = cloud;
  return s;
}

struct SmallInstance {
  std::vector<Request> requests;
  Scenario scenario;
  Deployment deployment;
};

/// Random instance within the oracle guards (<= 6 requests, <= 4 nodes).
SmallInstance small_instance(const Catalog& catalog, std::uint64_t seed) {
  SplitMix64 rng(SplitMix64::mix(seed));
  const int vehicles = rng.next_below(4);
  const int fogs = rng.next_below(4 - vehicles);
  const int pool = 1 + rng.next_below(4);
  const int k = 1 + rng.next_below(pool);

  SmallInstance inst;
  inst.scenario = validate_scenario(custom(vehicles, fogs), catalog);
  WorkloadConfig wl;
  wl.n_requests = 1 + rng.next_below(6);
  wl.cpu_lo_mhz = 20.0;
  wl.cpu_hi_mhz = 260.0;
  wl.net_lo_mbps = 1.0;
  wl.net_hi_mbps = 40.0;
  wl.storage_lo_mb = 5.0;
  wl.storage_hi_mb = 300.0;
  wl.package_pool = pool;
  inst.requests = generate_requests(rng.next(), wl);
  inst.deployment = random_type_deployment(vehicles, k, rng.next(), pool);
  return inst;
}

} // namespace

TEST_CASE("cloud-only scenario sends every request to the cloud") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::Cloud);
  const auto requests = generate_requests(7, WorkloadConfig{});
  const Deployment none = same_type_deployment(0, 0);

  const SolveReport rep = solve_exact(requests, scenario, none, catalog);
  CHECK(rep.proved_optimal);
  CHECK(rep.gap_w == 0.0);
  CHECK(rep.tier_request_counts[2] == static_cast<int>(requests.size()));
  for (const NodeRef& ref : rep.assignment.node_of) {
    CHECK(ref.tier == Tier::Cloud);
    CHECK(ref.index == 0);
  }
}

TEST_CASE("a request above vehicle CPU capacity is placed off the vehicles") {
  const Catalog catalog = default_catalog();
  // 300 MHz > the 240 MHz vehicle CPU, so the vehicles are not candidates
  // even though they host the package.
  const std::vector<Request> requests = {make_request(0, 300.0, 5.0, 20.0, 1)};
  const Scenario scenario = validate_scenario(custom(2, 1), catalog);
  const Deployment dep = same_type_deployment(2, 1);

  const SolveReport rep = solve_exact(requests, scenario, dep, catalog);
  CHECK(rep.proved_optimal);
  CHECK(rep.assignment.node_of[0].tier != Tier::VehicularFog);
}

TEST_CASE("two-vehicle split-package instance matches the oracle") {
  const Catalog catalog = default_catalog();
  const std::vector<Request> requests = {
      make_request(0, 80.0, 10.0, 50.0, 1), make_request(1, 90.0, 12.0, 60.0, 2),
      make_request(2, 70.0, 8.0, 40.0, 1), make_request(3, 60.0, 9.0, 30.0, 2)};
  const Scenario scenario = validate_scenario(custom(2, 1), catalog);
  Deployment dep;
  dep.pool_size = 2;
  dep.packages_per_vehicle = 1;
  dep.vehicle_packages = {{1}, {2}};

  const SolveReport fast = solve_exact(requests, scenario, dep, catalog);
  const SolveReport oracle = brute_force_oracle(requests, scenario, dep, catalog);
  CHECK(fast.objective_w == oracle.objective_w);
  CHECK(fast.proved_optimal);
  // All four requests fit their matching vehicles, which beat fog and cloud.
  CHECK(fast.tier_request_counts[0] == 4);
}

TEST_CASE("oracle equivalence and independent feasibility on random instances") {
  const Catalog catalog = default_catalog();
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    CAPTURE(seed);
    const SmallInstance inst = small_instance(catalog, seed);
    const SolveReport fast =
        solve_exact(inst.requests, inst.scenario, inst.deployment, catalog);
    const SolveReport oracle = brute_force_oracle(inst.requests, inst.scenario,
                                                  inst.deployment, catalog);
    CHECK(fast.objective_w == oracle.objective_w);
    CHECK(fast.proved_optimal);

    const CheckReport check = check_assignment(
        fast.assignment, inst.requests, inst.scenario, inst.deployment, catalog);
    CHECK(check.ok());
  }
}

TEST_CASE("greedy baseline never beats the exact solver") {
  const Catalog catalog = default_catalog();
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    CAPTURE(seed);
    const SmallInstance inst = small_instance(catalog, seed);
    const SolveReport greedy =
        greedy_baseline(inst.requests, inst.scenario, inst.deployment, catalog);
    const SolveReport exact =
        solve_exact(inst.requests, inst.scenario, inst.deployment, catalog);
    CHECK(greedy.objective_w >= exact.objective_w);
  }
}

TEST_CASE("single request: greedy equals exact") {
  const Catalog catalog = default_catalog();
  const std::vector<Request> requests = {make_request(0, 100.0, 8.0, 90.0, 2)};
  const Scenario scenario = validate_scenario(custom(1, 1), catalog);
  const Deployment dep = same_type_deployment(1, 3);

  const SolveReport greedy = greedy_baseline(requests, scenario, dep, catalog);
  const SolveReport exact = solve_exact(requests, scenario, dep, catalog);
  CHECK(greedy.objective_w == exact.objective_w);
  CHECK(greedy.assignment == exact.assignment);
}

TEST_CASE("empty workload solves to a zero-power report") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFog);
  const Deployment none = same_type_deployment(0, 0);

  for (const SolveReport& rep :
       {greedy_baseline({}, scenario, none, catalog),
        solve_exact({}, scenario, none, catalog)}) {
    CHECK(rep.objective_w == 0.0);
    CHECK(rep.power.total_w == 0.0);
    CHECK(rep.proved_optimal);
    CHECK(rep.assignment.node_of.empty());
  }
}

TEST_CASE("oracle guards reject out-of-range instances") {
  const Catalog catalog = default_catalog();
  const Scenario small = validate_scenario(custom(1, 1), catalog);
  const Deployment dep1 = same_type_deployment(1, 1);

  WorkloadConfig wl;
  wl.n_requests = 9;
  const auto nine = generate_requests(3, wl);
  try {
    brute_force_oracle(nine, small, dep1, catalog);
    FAIL("expected InstanceTooLarge for 9 requests");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InstanceTooLarge);
  }

  // 5 vehicles + 2 fogs + cloud = 8 candidate nodes > 6.
  const Scenario wide = validate_scenario(custom(5, 2), catalog);
  const Deployment dep5 = same_type_deployment(5, 1);
  wl.n_requests = 2;
  try {
    brute_force_oracle(generate_requests(3, wl), wide, dep5, catalog);
    FAIL("expected InstanceTooLarge for 8 candidate nodes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InstanceTooLarge);
  }
}

TEST_CASE("oracle picks the cheaper of two feasible nodes") {
  const Catalog catalog = default_catalog();
  // One request, hosted by one vehicle and the cloud. The vehicle path is
  // far cheaper under the stock data set.
  const std::vector<Request> requests = {make_request(0, 50.0, 5.0, 30.0, 1)};
  const Scenario scenario = validate_scenario(custom(1, 0), catalog);
  const Deployment dep = same_type_deployment(1, 1);

  const SolveReport rep = brute_force_oracle(requests, scenario, dep, catalog);
  CHECK(rep.assignment.node_of[0].tier == Tier::VehicularFog);
}

TEST_CASE("infeasible when no reachable node hosts the package") {
  const Catalog catalog = default_catalog();
  // Cloud disabled, no fog, and the only vehicle lacks package 2.
  const std::vector<Request> requests = {make_request(0, 50.0, 5.0, 30.0, 2)};
  Scenario scenario = custom(1, 0, /*cloud=*/false);
  scenario = validate_scenario(scenario, catalog);
  Deployment dep;
  dep.pool_size = 2;
  dep.packages_per_vehicle = 1;
  dep.vehicle_packages = {{1}};

  CHECK_THROWS_AS(solve_exact(requests, scenario, dep, catalog), Error);
  CHECK_THROWS_AS(greedy_baseline(requests, scenario, dep, catalog), Error);
  try {
    solve_exact(requests, scenario, dep, catalog);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
}

TEST_CASE("identical inputs give bitwise-identical reports") {
  const Catalog catalog = default_catalog();
  const auto requests = generate_requests(11, WorkloadConfig{});
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment dep = random_type_deployment(5, 4, 11);

  const SolveReport a = solve_exact(requests, scenario, dep, catalog);
  const SolveReport b = solve_exact(requests, scenario, dep, catalog);
  CHECK(a.objective_w == b.objective_w);
  CHECK(a.assignment == b.assignment);
  CHECK(a.explored_nodes == b.explored_nodes);
  CHECK(a.proved_optimal == b.proved_optimal);
  CHECK(a.gap_w == b.gap_w);
}

TEST_CASE("a warm start can only help, and an optimal one is kept") {
  const Catalog catalog = default_catalog();
  const auto requests = generate_requests(5, WorkloadConfig{});
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment dep = same_type_deployment(5, 2);

  SolveLimits tiny;
  tiny.max_nodes = 1; // forces the solver to lean on its start heuristics
  const SolveReport cold = solve_exact(requests, scenario, dep, catalog, tiny);
  const SolveReport full = solve_exact(requests, scenario, dep, catalog);
  CHECK(full.objective_w <= cold.objective_w);

  const SolveReport warmed = solve_exact(requests, scenario, dep, catalog,
                                         tiny, &full.assignment);
  CHECK(warmed.objective_w <= full.objective_w);

  // An infeasible warm start (vehicle indices out of range) is ignored.
  Assignment broken = full.assignment;
  for (NodeRef& ref : broken.node_of) ref = NodeRef{Tier::VehicularFog, 99};
  const SolveReport ignored =
      solve_exact(requests, scenario, dep, catalog, tiny, &broken);
  CHECK(ignored.objective_w == cold.objective_w);
}

TEST_CASE("enlarging a vehicle's package set never increases the optimum") {
  const Catalog catalog = default_catalog();
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    CAPTURE(seed);
    SplitMix64 rng(SplitMix64::mix(seed));
    const int vehicles = 1 + rng.next_below(3);
    const int pool = 2 + rng.next_below(3);
    const int k = 1 + rng.next_below(pool - 1);
    const Scenario scenario = validate_scenario(custom(vehicles, 1), catalog);

    WorkloadConfig wl;
    wl.n_requests = 6;
    wl.package_pool = pool;
    const auto requests = generate_requests(rng.next(), wl);

    Deployment dep = random_type_deployment(vehicles, k, rng.next(), pool);
    const SolveReport before = solve_exact(requests, scenario, dep, catalog);

    // Give one vehicle one more package (the smallest missing id).
    Deployment bigger = dep;
    auto& set = bigger.vehicle_packages[rng.next_below(vehicles)];
    for (PackageId p = 1; p <= pool; ++p) {
      if (!std::binary_search(set.begin(), set.end(), p)) {
        set.insert(std::lower_bound(set.begin(), set.end(), p), p);
        break;
      }
    }
    const SolveReport after = solve_exact(requests, scenario, bigger, catalog);
    CHECK(after.objective_w <= before.objective_w);
  }
}

TEST_CASE("adding vehicles or fog servers never increases the optimum") {
  const Catalog catalog = default_catalog();
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    CAPTURE(seed);
    SplitMix64 rng(SplitMix64::mix(seed));
    const int vehicles = rng.next_below(3);
    const int fogs = rng.next_below(2);
    const int pool = 3;
    const int k = 1 + rng.next_below(3);

    WorkloadConfig wl;
    wl.n_requests = 6;
    wl.package_pool = pool;
    const auto requests = generate_requests(rng.next(), wl);
    const std::uint64_t dep_seed = rng.next();

    const Scenario base = validate_scenario(custom(vehicles, fogs), catalog);
    const SolveReport z0 = solve_exact(
        requests, base,
        random_type_deployment(vehicles, k, dep_seed, pool), catalog);

    // The bigger fleet extends the smaller one vehicle-for-vehicle, so the
    // feasible set only grows.
    const Scenario more_veh = validate_scenario(custom(vehicles + 1, fogs), catalog);
    const SolveReport z1 = solve_exact(
        requests, more_veh,
        random_type_deployment(vehicles + 1, k, dep_seed, pool), catalog);
    CHECK(z1.objective_w <= z0.objective_w);

    const Scenario more_fog = validate_scenario(custom(vehicles, fogs + 1), catalog);
    const SolveReport z2 = solve_exact(
        requests, more_fog,
        random_type_deployment(vehicles, k, dep_seed, pool), catalog);
    CHECK(z2.objective_w <= z0.objective_w);
  }
}

TEST_CASE("report invariants: gap sign and proof consistency") {
  const Catalog catalog = default_catalog();
  const auto requests = generate_requests(2, WorkloadConfig{});
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF2);
  const Deployment dep = same_type_deployment(10, 3);

  SolveLimits limits;
  limits.max_nodes = 5000; // small enough to end unproved on this instance
  const SolveReport rep = solve_exact(requests, scenario, dep, catalog, limits);
  CHECK(rep.gap_w >= 0.0);
  if (rep.proved_optimal) CHECK(rep.gap_w == 0.0);

  int total = 0;
  for (int t : rep.tier_request_counts) total += t;
  CHECK(total == static_cast<int>(requests.size()));
}
