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

#include "fogmatch/catalog.hpp"

#include <doctest.h>

#include "fogmatch/errors.hpp"

using namespace fogmatch;

TEST_CASE("default catalog carries the stock hardware numbers") {
  const Catalog c = default_catalog();

  CHECK(c.vehicle.cpu_capacity_mhz == 240.0);
  CHECK(c.vehicle.cpu_max_power_w == 3.1);
  CHECK(c.vehicle.storage_capacity_mb == 8192.0);
  CHECK(c.vehicle.storage_max_power_w == 0.5);

  CHECK(c.fog_server.cpu_capacity_mhz == 2700.0);
  CHECK(c.fog_server.cpu_max_power_w == 64.5);
  CHECK(c.fog_server.storage_capacity_mb == 122880.0);
  CHECK(c.fog_server.storage_max_power_w == 10.5);

  CHECK(c.cloud_server.cpu_capacity_mhz == 4000.0);
  CHECK(c.cloud_server.cpu_max_power_w == 300.0);
  CHECK(c.cloud_server.storage_capacity_mb == doctest::Approx(79272345.6).epsilon(1e-12));
  CHECK(c.cloud_server.storage_max_power_w == 4900.0);

  CHECK(c.device(DeviceName::VehicleWifi).capacity_mbps == 54.0);
  CHECK(c.device(DeviceName::VehicleWifi).max_power_w == 0.207);
  CHECK(c.device(DeviceName::VehicleWifi).enforce_capacity);
  CHECK(c.device(DeviceName::Ap).capacity_mbps == 1750.0);
  CHECK(c.device(DeviceName::Ap).max_power_w == 7.42);
  CHECK(c.device(DeviceName::Rsu).capacity_mbps == 27.0);
  CHECK(c.device(DeviceName::Rsu).max_power_w == 7.0);
  CHECK_FALSE(c.device(DeviceName::Rsu).enforce_capacity);
  CHECK(c.device(DeviceName::Onu).capacity_mbps == 2488.0);
  CHECK(c.device(DeviceName::Onu).max_power_w == 5.0);
  CHECK(c.device(DeviceName::Olt).capacity_mbps == 320000.0);
  CHECK(c.device(DeviceName::Olt).max_power_w == 400.0);
  CHECK(c.device(DeviceName::FogNet).capacity_mbps == 2400.0);
  CHECK(c.device(DeviceName::FogNet).max_power_w == 48.0);
  CHECK(c.device(DeviceName::EthSwitch).capacity_mbps == 100000.0);
  CHECK(c.device(DeviceName::EthSwitch).max_power_w == 63200.0);
  CHECK(c.device(DeviceName::EdgeRouter).capacity_mbps == 200000.0);
  CHECK(c.device(DeviceName::EdgeRouter).max_power_w == 4200.0);
  CHECK(c.device(DeviceName::CoreRouter).capacity_mbps == 640000.0);
  CHECK(c.device(DeviceName::CoreRouter).max_power_w == 10900.0);
  CHECK(c.device(DeviceName::CloudSwitch).capacity_mbps == 320000.0);
  CHECK(c.device(DeviceName::CloudSwitch).max_power_w == 3800.0);
  CHECK(c.device(DeviceName::CloudRouter).capacity_mbps == 660000.0);
  CHECK(c.device(DeviceName::CloudRouter).max_power_w == 5100.0);
}

TEST_CASE("tier paths list the expected device chains") {
  const Catalog c = default_catalog();
  CHECK(c.vf_path.devices == std::vector<DeviceName>{DeviceName::Rsu,
                                                     DeviceName::Ap,
                                                     DeviceName::VehicleWifi});
  CHECK(c.fixed_fog_path.devices ==
        std::vector<DeviceName>{DeviceName::Rsu, DeviceName::Ap,
                                DeviceName::Onu, DeviceName::Olt,
                                DeviceName::FogNet});
  CHECK(c.cloud_path.devices ==
        std::vector<DeviceName>{DeviceName::Rsu, DeviceName::Ap,
                                DeviceName::Onu, DeviceName::Olt,
                                DeviceName::EdgeRouter, DeviceName::EthSwitch,
                                DeviceName::CoreRouter, DeviceName::CloudRouter,
                                DeviceName::CloudSwitch});
}

TEST_CASE("name round-trips cover every enum value") {
  for (int i = 0; i < kDeviceCount; ++i) {
    const auto name = static_cast<DeviceName>(i);
    const auto back = device_from_string(to_string(name));
    REQUIRE(back.has_value());
    CHECK(*back == name);
  }
  for (ScenarioKind kind :
       {ScenarioKind::Cloud, ScenarioKind::CloudFog, ScenarioKind::CloudFogVF1,
        ScenarioKind::CloudFogVF2, ScenarioKind::CloudFogVF3,
        ScenarioKind::Custom}) {
    const auto back = scenario_kind_from_string(to_string(kind));
    REQUIRE(back.has_value());
    CHECK(*back == kind);
  }
  for (NodeRole role :
       {NodeRole::Vehicle, NodeRole::FogServer, NodeRole::CloudServer}) {
    const auto back = node_role_from_string(to_string(role));
    REQUIRE(back.has_value());
    CHECK(*back == role);
  }
  CHECK_FALSE(device_from_string("not-a-device").has_value());
  CHECK_FALSE(scenario_kind_from_string("not-a-scenario").has_value());
}

TEST_CASE("scenario presets fix the tier sizes") {
  CHECK(Scenario::preset(ScenarioKind::Cloud).vehicle_count == 0);
  CHECK(Scenario::preset(ScenarioKind::Cloud).fog_server_count == 0);
  CHECK(Scenario::preset(ScenarioKind::CloudFog).fog_server_count == 2);
  CHECK(Scenario::preset(ScenarioKind::CloudFogVF1).vehicle_count == 5);
  CHECK(Scenario::preset(ScenarioKind::CloudFogVF2).vehicle_count == 10);
  CHECK(Scenario::preset(ScenarioKind::CloudFogVF3).vehicle_count == 20);
  for (ScenarioKind kind :
       {ScenarioKind::Cloud, ScenarioKind::CloudFog, ScenarioKind::CloudFogVF1,
        ScenarioKind::CloudFogVF2, ScenarioKind::CloudFogVF3}) {
    const Scenario s = Scenario::preset(kind);
    CHECK(s.core_hops == 4);
    CHECK(s.cloud_enabled);
  }
}

TEST_CASE("expanded_path replicates the core router per hop") {
  const Catalog c = default_catalog();
  Scenario s = Scenario::preset(ScenarioKind::Cloud);

  auto cloud = expanded_path(c, Tier::Cloud, s);
  CHECK(cloud.size() == 12); // 8 distinct devices + 4 core-router hops
  int cores = 0;
  for (const auto& dev : cloud) cores += dev.name == DeviceName::CoreRouter;
  CHECK(cores == 4);

  s.core_hops = 2;
  CHECK(expanded_path(c, Tier::Cloud, s).size() == 10);

  CHECK(expanded_path(c, Tier::VehicularFog, s).size() == 3);
  CHECK(expanded_path(c, Tier::FixedFog, s).size() == 5);
}

TEST_CASE("expanded_path applies scenario enforcement overrides") {
  const Catalog c = default_catalog();
  Scenario s = Scenario::preset(ScenarioKind::CloudFogVF1);
  s.enforce_overrides = {{DeviceName::Rsu, true}, {DeviceName::VehicleWifi, false}};

  const auto path = expanded_path(c, Tier::VehicularFog, s);
  for (const auto& dev : path) {
    if (dev.name == DeviceName::Rsu) CHECK(dev.enforce_capacity);
    if (dev.name == DeviceName::VehicleWifi) CHECK_FALSE(dev.enforce_capacity);
  }
}

TEST_CASE("validate_scenario fills preset defaults for omitted counts") {
  const Catalog c = default_catalog();
  Scenario s;
  s.kind = ScenarioKind::CloudFogVF2; // all counts left at -1
  const Scenario v = validate_scenario(s, c);
  CHECK(v.vehicle_count == 10);
  CHECK(v.fog_server_count == 2);
  CHECK(v.core_hops == 4);
}

TEST_CASE("validate_scenario rejects inconsistent shapes") {
  const Catalog c = default_catalog();

  Scenario vf_empty = Scenario::preset(ScenarioKind::CloudFogVF1);
  vf_empty.vehicle_count = 0;
  CHECK_THROWS_WITH_AS(validate_scenario(vf_empty, c),
                       doctest::Contains("non-empty vehicular fog"), Error);
  try {
    validate_scenario(vf_empty, c);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VFScenarioWithZeroVehicles);
  }

  Scenario cloud_with_fog = Scenario::preset(ScenarioKind::Cloud);
  cloud_with_fog.fog_server_count = 2;
  CHECK_THROWS_AS(validate_scenario(cloud_with_fog, c), Error);

  Scenario nothing = Scenario::preset(ScenarioKind::Custom);
  nothing.cloud_enabled = false;
  CHECK_THROWS_AS(validate_scenario(nothing, c), Error);
}

TEST_CASE("validate_scenario rejects non-positive capacities") {
  Catalog c = default_catalog();
  c.vehicle.cpu_capacity_mhz = 0.0;
  try {
    validate_scenario(Scenario::preset(ScenarioKind::Cloud), c);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveCapacity);
  }

  Catalog c2 = default_catalog();
  c2.device(DeviceName::Olt).capacity_mbps = -1.0;
  CHECK_THROWS_AS(validate_scenario(Scenario::preset(ScenarioKind::Cloud), c2),
                  Error);
}
