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

#include <doctest.h>

#include <cmath>

#include "fogmatch/deployment.hpp"
#include "fogmatch/errors.hpp"
#include "fogmatch/workload.hpp"

using namespace fogmatch;

namespace {

// Values marked "frozen" were produced by an independent Python
// reimplementation of the proportional model over the stock catalog.
constexpr double kNet10FixedFog = 2.867589055615101;  // frozen
constexpr double kNet10Cloud = 10.074861782887828;    // frozen, H=4
constexpr double kNet10Vf = 2.6733259259259263;       // frozen
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

} // namespace

TEST_CASE("processing power is load-proportional") {
  const Catalog c = default_catalog();
  CHECK(processing_power(100.0, c.cloud_server) == 7.5);
  CHECK(processing_power(0.0, c.cloud_server) == 0.0);
  CHECK(processing_power(240.0, c.vehicle) == 3.1); // full utilization
}

TEST_CASE("storage power is load-proportional") {
  const Catalog c = default_catalog();
  CHECK(storage_power(400.0, c.vehicle) == 0.0244140625);
  CHECK(storage_power(0.0, c.vehicle) == 0.0);
  CHECK(storage_power(120.0 * 1024.0, c.fog_server) == 10.5); // full disk
}

TEST_CASE("network power sums the proportional draw of every path device") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::Cloud);

  const auto ff = expanded_path(c, Tier::FixedFog, s);
  CHECK(network_power(10.0, ff) ==
        doctest::Approx(kNet10FixedFog).epsilon(kRel));
  CHECK(network_power(0.0, ff) == 0.0);

  const auto cloud = expanded_path(c, Tier::Cloud, s);
  CHECK(network_power(10.0, cloud) ==
        doctest::Approx(kNet10Cloud).epsilon(kRel));

  const auto vf = expanded_path(c, Tier::VehicularFog, s);
  CHECK(network_power(10.0, vf) == doctest::Approx(kNet10Vf).epsilon(kRel));
}

TEST_CASE("core-hop count scales the core router share linearly") {
  const Catalog c = default_catalog();
  Scenario s = Scenario::preset(ScenarioKind::Cloud);
  const double h4 = network_power(10.0, expanded_path(c, Tier::Cloud, s));
  s.core_hops = 8;
  const double h8 = network_power(10.0, expanded_path(c, Tier::Cloud, s));
  const double per_hop = 10.0 / 640000.0 * 10900.0;
  CHECK(h8 - h4 == doctest::Approx(4 * per_hop).epsilon(kRel));
}

TEST_CASE("negative loads are rejected") {
  const Catalog c = default_catalog();
  try {
    processing_power(-1.0, c.vehicle);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidRange);
  }
  CHECK_THROWS_AS(storage_power(-1.0, c.vehicle), Error);
  const Scenario s = Scenario::preset(ScenarioKind::Cloud);
  const auto path = expanded_path(c, Tier::Cloud, s);
  CHECK_THROWS_AS(network_power(-1.0, path), Error);
}

TEST_CASE("enforcement flags gate over-capacity errors") {
  const Catalog c = default_catalog();
  try {
    processing_power(241.0, c.vehicle);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverCapacity);
  }
  CHECK(processing_power(241.0, c.vehicle, false) > 3.1);

  CHECK_THROWS_AS(storage_power(8193.0, c.vehicle), Error);
  CHECK(storage_power(8193.0, c.vehicle, false) > 0.5);

  // Only the per-vehicle WiFi link enforces by default; 100 Mbps exceeds the
  // 27 Mbps RSU and 54 Mbps WiFi, but just the WiFi triggers.
  const Scenario s = Scenario::preset(ScenarioKind::Cloud);
  const auto vf = expanded_path(c, Tier::VehicularFog, s);
  CHECK_THROWS_AS(network_power(100.0, vf), Error);
  CHECK(network_power(100.0, vf, false) > 0.0);
  const auto cloud = expanded_path(c, Tier::Cloud, s);
  CHECK_NOTHROW(network_power(100.0, cloud)); // no enforced device on path
}

TEST_CASE("total power of the empty workload is all zero") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::Cloud);
  const PowerBreakdown out = total_power({}, {}, s, {}, c);
  CHECK(out.total_w == 0.0);
  CHECK(out.vf.sum() == 0.0);
  CHECK(out.fixed_fog.sum() == 0.0);
  CHECK(out.cloud.sum() == 0.0);
}

TEST_CASE("one request on the cloud matches the hand-summed value") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::Cloud);
  const std::vector<Request> reqs = {make_request(0, 100.0, 10.0, 100.0, 1)};
  Assignment a;
  a.node_of = {{Tier::Cloud, 0}};

  const PowerBreakdown out = total_power(a, reqs, s, {}, c);
  CHECK(out.total_w == doctest::Approx(kSingleCloudRequest).epsilon(kRel));
  CHECK(out.cloud.processing_w == 7.5);
  CHECK(out.cloud.networking_w == doctest::Approx(kNet10Cloud).epsilon(kRel));
  CHECK(out.cloud.storage_w ==
        doctest::Approx(100.0 / 79272345.6 * 4900.0).epsilon(kRel));
  CHECK(out.vf.sum() == 0.0);
  CHECK(out.fixed_fog.sum() == 0.0);
}

TEST_CASE("doubling a request's demands exactly doubles its power") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment d = same_type_deployment(5, 3);

  const std::vector<Request> one = {make_request(0, 90.0, 20.0, 150.0, 2)};
  const std::vector<Request> twice = {make_request(0, 180.0, 40.0, 300.0, 2)};
  Assignment a;
  a.node_of = {{Tier::VehicularFog, 1}};

  const double p1 = total_power(a, one, s, d, c).total_w;
  const double p2 = total_power(a, twice, s, d, c).total_w;
  CHECK(p2 == 2.0 * p1); // power-of-two scaling is exact in IEEE arithmetic
}

TEST_CASE("two identical requests on one vehicle cost exactly twice one") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment d = same_type_deployment(5, 3);

  const Request r = make_request(0, 90.0, 20.0, 150.0, 1);
  std::vector<Request> one = {r};
  Request r1 = r;
  r1.id = 1;
  std::vector<Request> two = {r, r1};

  Assignment a1;
  a1.node_of = {{Tier::VehicularFog, 0}};
  Assignment a2;
  a2.node_of = {{Tier::VehicularFog, 0}, {Tier::VehicularFog, 0}};

  CHECK(total_power(a2, two, s, d, c).total_w ==
        2.0 * total_power(a1, one, s, d, c).total_w);
}

TEST_CASE("within a tier, power is independent of the node split") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment d = same_type_deployment(5, 3);

  const std::vector<Request> reqs = {make_request(0, 90.0, 20.0, 150.0, 1),
                                     make_request(1, 60.0, 15.0, 100.0, 2)};
  Assignment together;
  together.node_of = {{Tier::VehicularFog, 2}, {Tier::VehicularFog, 2}};
  Assignment apart;
  apart.node_of = {{Tier::VehicularFog, 0}, {Tier::VehicularFog, 4}};

  CHECK(total_power(together, reqs, s, d, c).total_w ==
        doctest::Approx(total_power(apart, reqs, s, d, c).total_w)
            .epsilon(1e-12));
}

TEST_CASE("total power is additive across disjoint request sets") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::Cloud);
  WorkloadConfig cfg;
  cfg.n_requests = 10;
  const auto reqs = generate_requests(11, cfg);

  const std::vector<Request> first(reqs.begin(), reqs.begin() + 5);
  const std::vector<Request> second(reqs.begin() + 5, reqs.end());
  Assignment all, half;
  all.node_of.assign(10, {Tier::Cloud, 0});
  half.node_of.assign(5, {Tier::Cloud, 0});

  const double whole = total_power(all, reqs, s, {}, c).total_w;
  const double parts = total_power(half, first, s, {}, c).total_w +
                       total_power(half, second, s, {}, c).total_w;
  CHECK(whole == doctest::Approx(parts).epsilon(1e-9));
}

TEST_CASE("per-request tier costs order VF below FixedFog below Cloud") {
  const Catalog c = default_catalog();
  const Scenario s = validate_scenario(Scenario::preset(ScenarioKind::CloudFogVF1), c);
  const auto vf = expanded_path(c, Tier::VehicularFog, s);
  const auto ff = expanded_path(c, Tier::FixedFog, s);
  const auto cl = expanded_path(c, Tier::Cloud, s);

  // Corners of the workload demand box plus the center.
  for (double cpu : {50.0, 175.0, 300.0})
    for (double net : {5.0, 27.5, 50.0})
      for (double sto : {10.0, 205.0, 400.0}) {
        const double at_vf = processing_power(cpu, c.vehicle, false) +
                             network_power(net, vf, false) +
                             storage_power(sto, c.vehicle, false);
        const double at_ff = processing_power(cpu, c.fog_server, false) +
                             network_power(net, ff, false) +
                             storage_power(sto, c.fog_server, false);
        const double at_cl = processing_power(cpu, c.cloud_server, false) +
                             network_power(net, cl, false) +
                             storage_power(sto, c.cloud_server, false);
        CHECK(at_vf < at_ff);
        CHECK(at_ff < at_cl);
      }
}

TEST_CASE("total_power rejects incomplete or out-of-range assignments") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment d = same_type_deployment(5, 3);
  const std::vector<Request> reqs = {make_request(0, 100.0, 10.0, 100.0, 1)};

  Assignment missing; // empty map over one request
  try {
    total_power(missing, reqs, s, d, c);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnassignedRequest);
  }

  Assignment bad_vehicle;
  bad_vehicle.node_of = {{Tier::VehicularFog, 7}};
  CHECK_THROWS_AS(total_power(bad_vehicle, reqs, s, d, c), Error);

  Assignment bad_fog;
  bad_fog.node_of = {{Tier::FixedFog, 2}};
  CHECK_THROWS_AS(total_power(bad_fog, reqs, s, d, c), Error);

  Scenario no_cloud = Scenario::preset(ScenarioKind::Custom);
  no_cloud.vehicle_count = 5;
  no_cloud.fog_server_count = 2;
  no_cloud.cloud_enabled = false;
  Assignment to_cloud;
  to_cloud.node_of = {{Tier::Cloud, 0}};
  CHECK_THROWS_AS(total_power(to_cloud, reqs, no_cloud, d, c), Error);
}

TEST_CASE("total_power rejects placements on vehicles missing the package") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment d = same_type_deployment(5, 3); // hosts packages 1..3
  const std::vector<Request> reqs = {make_request(0, 100.0, 10.0, 100.0, 5)};

  Assignment on_vehicle;
  on_vehicle.node_of = {{Tier::VehicularFog, 0}};
  try {
    total_power(on_vehicle, reqs, s, d, c);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PackageMismatch);
  }

  // The fixed fog and the cloud host the full pool.
  Assignment on_fog;
  on_fog.node_of = {{Tier::FixedFog, 1}};
  CHECK_NOTHROW(total_power(on_fog, reqs, s, d, c));
  Assignment on_cloud;
  on_cloud.node_of = {{Tier::Cloud, 0}};
  CHECK_NOTHROW(total_power(on_cloud, reqs, s, d, c));
}

TEST_CASE("total_power enforces per-node and per-vehicle-link capacities") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::CloudFogVF1);
  const Deployment d = same_type_deployment(5, 3);

  // 150 + 150 MHz on one vehicle exceeds its 240 MHz CPU.
  const std::vector<Request> cpu_heavy = {make_request(0, 150.0, 5.0, 10.0, 1),
                                          make_request(1, 150.0, 5.0, 10.0, 1)};
  Assignment same_vehicle;
  same_vehicle.node_of = {{Tier::VehicularFog, 0}, {Tier::VehicularFog, 0}};
  try {
    total_power(same_vehicle, cpu_heavy, s, d, c);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverCapacity);
  }
  Assignment split;
  split.node_of = {{Tier::VehicularFog, 0}, {Tier::VehicularFog, 1}};
  CHECK_NOTHROW(total_power(split, cpu_heavy, s, d, c));

  // 30 + 30 Mbps on one vehicle exceeds its 54 Mbps WiFi link.
  const std::vector<Request> net_heavy = {make_request(0, 50.0, 30.0, 10.0, 1),
                                          make_request(1, 50.0, 30.0, 10.0, 1)};
  CHECK_THROWS_AS(total_power(same_vehicle, net_heavy, s, d, c), Error);
  CHECK_NOTHROW(total_power(split, net_heavy, s, d, c));

  // Lifting the WiFi enforcement makes the overload legal.
  Scenario relaxed = s;
  relaxed.enforce_overrides = {{DeviceName::VehicleWifi, false}};
  CHECK_NOTHROW(total_power(same_vehicle, net_heavy, relaxed, d, c));

  // A fixed-fog server enforces CPU and storage but has no per-node link.
  const std::vector<Request> fog_heavy = {make_request(0, 2800.0, 5.0, 10.0, 1)};
  Assignment on_fog;
  on_fog.node_of = {{Tier::FixedFog, 0}};
  CHECK_THROWS_AS(total_power(on_fog, fog_heavy, s, d, c), Error);

  // The cloud absorbs any load.
  const std::vector<Request> huge = {make_request(0, 1e6, 500.0, 1e9, 1)};
  Assignment on_cloud;
  on_cloud.node_of = {{Tier::Cloud, 0}};
  CHECK_NOTHROW(total_power(on_cloud, huge, s, d, c));
}

TEST_CASE("breakdown components add up to the reported total") {
  const Catalog c = default_catalog();
  const Scenario s = Scenario::preset(ScenarioKind::CloudFogVF2);
  const Deployment d = same_type_deployment(10, 10);

  std::vector<Request> reqs;
  Assignment a;
  for (int i = 0; i < 30; ++i) {
    reqs.push_back(make_request(i, 100.0 + i, 10.0 + 0.5 * i, 50.0 + 3.0 * i,
                                1 + i % 10));
    if (i % 3 == 0)
      a.node_of.push_back({Tier::VehicularFog, i % 10}); // one request each
    else if (i % 3 == 1)
      a.node_of.push_back({Tier::FixedFog, i % 2});
    else
      a.node_of.push_back({Tier::Cloud, 0});
  }
  const PowerBreakdown out = total_power(a, reqs, s, d, c);
  CHECK(out.total_w ==
        doctest::Approx(out.vf.sum() + out.fixed_fog.sum() + out.cloud.sum())
            .epsilon(1e-12));
  CHECK(out.vf.sum() > 0.0);
  CHECK(out.fixed_fog.sum() > 0.0);
  CHECK(out.cloud.sum() > 0.0);
}
