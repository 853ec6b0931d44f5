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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "fogmatch/deployment.hpp"
#include "fogmatch/optimizer.hpp"
#include "fogmatch/workload.hpp"

using namespace fogmatch;

namespace {

// Independently hand-summed single-request cloud total (CPU + H=4 path +
// storage on the stock data set); same constant the power tests freeze.
constexpr double kSingleCloudRequest = 17.58104300530898; // frozen
constexpr double kRel = 1e-12;

Request make_request(int id, double cpu, double net, double sto, int pkg) {
  Request r;
  r.id = id;
  r.cpu_mhz = cpu;
  r.net_mbps = net;
  r.storage_mb = sto;
  r.package = pkg;
  return r;
}

bool has(const CheckReport& rep, ViolationKind kind) {
  for (const Violation& v : rep.violations)
    if (v.kind == kind) return true;
  return false;
}

} // namespace

TEST_CASE("solver output on a seeded instance checks clean") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  const auto requests = generate_requests(4, WorkloadConfig{});
  const Deployment dep = random_type_deployment(5, 3, 4);

  const SolveReport rep = solve_exact(requests, scenario, dep, catalog);
  const CheckReport check =
      check_assignment(rep.assignment, requests, scenario, dep, catalog);
  CHECK(check.ok());
  CHECK(check.to_text().empty());
}

TEST_CASE("package mismatch is reported with the offending request") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  Deployment dep;
  dep.pool_size = 10;
  dep.packages_per_vehicle = 2;
  dep.vehicle_packages = {{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}};

  const std::vector<Request> requests = {make_request(7, 50.0, 5.0, 30.0, 3)};
  Assignment a;
  a.node_of = {{Tier::VehicularFog, 0}};

  const CheckReport rep =
      check_assignment(a, requests, scenario, dep, catalog);
  REQUIRE(!rep.ok());
  CHECK(has(rep, ViolationKind::PackageMismatch));
  CHECK(rep.violations[0].request == 7);
  CHECK((rep.violations[0].node == NodeRef{Tier::VehicularFog, 0}));
}

TEST_CASE("vehicle CPU overload is reported as CpuOverCapacity") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment dep = same_type_deployment(5, 10);

  // 180 + 120 = 300 MHz on one vehicle, above the 240 MHz capacity.
  const std::vector<Request> requests = {make_request(0, 180.0, 5.0, 30.0, 1),
                                         make_request(1, 120.0, 5.0, 30.0, 2)};
  Assignment a;
  a.node_of = {{Tier::VehicularFog, 2}, {Tier::VehicularFog, 2}};

  const CheckReport rep =
      check_assignment(a, requests, scenario, dep, catalog);
  REQUIRE(!rep.ok());
  CHECK(has(rep, ViolationKind::CpuOverCapacity));
  CHECK((rep.violations[0].node == NodeRef{Tier::VehicularFog, 2}));
  CHECK(rep.violations[0].load == 300.0);
  CHECK(rep.violations[0].limit == 240.0);
}

TEST_CASE("WiFi aggregate overload is reported as NetworkOverCapacity") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment dep = same_type_deployment(5, 10);

  // 30 + 30 = 60 Mbps through one vehicle's 54 Mbps WiFi.
  const std::vector<Request> requests = {make_request(0, 50.0, 30.0, 30.0, 1),
                                         make_request(1, 50.0, 30.0, 30.0, 2)};
  Assignment a;
  a.node_of = {{Tier::VehicularFog, 1}, {Tier::VehicularFog, 1}};

  const CheckReport rep =
      check_assignment(a, requests, scenario, dep, catalog);
  REQUIRE(!rep.ok());
  CHECK(has(rep, ViolationKind::NetworkOverCapacity));
}

TEST_CASE("storage overload is reported as StorageOverCapacity") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment dep = same_type_deployment(5, 10);

  const std::vector<Request> requests =
      {make_request(0, 50.0, 5.0, 9000.0, 1)}; // 9000 MB > 8192 MB vehicle disk
  Assignment a;
  a.node_of = {{Tier::VehicularFog, 0}};

  const CheckReport rep =
      check_assignment(a, requests, scenario, dep, catalog);
  REQUIRE(!rep.ok());
  CHECK(has(rep, ViolationKind::StorageOverCapacity));
}

TEST_CASE("size mismatches and invalid nodes are reported, not thrown") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFog);
  const Deployment none = same_type_deployment(0, 0);
  const std::vector<Request> requests = {make_request(0, 50.0, 5.0, 30.0, 1)};

  Assignment empty;
  const CheckReport size_rep =
      check_assignment(empty, requests, scenario, none, catalog);
  REQUIRE(size_rep.violations.size() == 1);
  CHECK(size_rep.violations[0].kind == ViolationKind::SizeMismatch);

  Assignment bad;
  bad.node_of = {{Tier::VehicularFog, 0}}; // no vehicles in CloudFog
  CHECK(has(check_assignment(bad, requests, scenario, none, catalog),
            ViolationKind::InvalidNode));

  bad.node_of = {{Tier::FixedFog, 5}}; // only fog servers 0 and 1 exist
  CHECK(has(check_assignment(bad, requests, scenario, none, catalog),
            ViolationKind::InvalidNode));
}

TEST_CASE("recompute_power matches the hand-summed cloud value") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::Cloud);
  const std::vector<Request> requests = {make_request(0, 100.0, 10.0, 100.0, 1)};
  Assignment a;
  a.node_of = {{Tier::Cloud, 0}};

  const PowerBreakdown out =
      recompute_power(a, requests, scenario, {}, catalog);
  CHECK(out.total_w == doctest::Approx(kSingleCloudRequest).epsilon(kRel));
  CHECK(out.cloud.processing_w == 7.5);
  CHECK(out.vf.sum() == 0.0);
  CHECK(out.fixed_fog.sum() == 0.0);
}

TEST_CASE("recompute_power of the empty workload is zero") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::Cloud);
  const PowerBreakdown out = recompute_power({}, {}, scenario, {}, catalog);
  CHECK(out.total_w == 0.0);
}

TEST_CASE("recompute_power scales exactly with doubled demands") {
  const Catalog catalog = default_catalog();
  const Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment dep = same_type_deployment(5, 3);

  const std::vector<Request> one = {make_request(0, 90.0, 20.0, 150.0, 2)};
  const std::vector<Request> twice = {make_request(0, 180.0, 40.0, 300.0, 2)};
  Assignment a;
  a.node_of = {{Tier::VehicularFog, 1}};

  CHECK(recompute_power(a, twice, scenario, dep, catalog).total_w ==
        2.0 * recompute_power(a, one, scenario, dep, catalog).total_w);
}

TEST_CASE("differential: recomputation agrees with the power model") {
  const Catalog catalog = default_catalog();
  // Mixed tiers and a non-default hop count, across several seeds.
  Scenario scenario = Scenario::preset(ScenarioKind::CloudFogVF2);
  scenario.core_hops = 6;

  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const auto requests = generate_requests(seed, WorkloadConfig{});
    const Deployment dep = random_type_deployment(10, 4, seed);
    const SolveReport rep = solve_exact(requests, scenario, dep, catalog);

    const PowerBreakdown redo =
        recompute_power(rep.assignment, requests, scenario, dep, catalog);
    const double rel = std::abs(redo.total_w - rep.power.total_w) /
                       std::abs(rep.power.total_w);
    CHECK(rel <= 1e-9);
    CHECK(redo.vf.sum() ==
          doctest::Approx(rep.power.vf.sum()).epsilon(1e-9));
    CHECK(redo.fixed_fog.sum() ==
          doctest::Approx(rep.power.fixed_fog.sum()).epsilon(1e-9));
    CHECK(redo.cloud.sum() ==
          doctest::Approx(rep.power.cloud.sum()).epsilon(1e-9));
  }
}
