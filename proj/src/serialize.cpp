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

#include "fogmatch/serialize.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "fogmatch/errors.hpp"

namespace fogmatch {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigError, where + ": " + what);
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

bool as_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) bad(where, "expected a boolean");
  return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

DeviceName device_name(const Json& j, const std::string& where) {
  const std::string name = as_string(j, where);
  if (auto dev = device_from_string(name)) return *dev;
  bad(where, "unknown device name '" + name + "'");
}

} // namespace

// --- strict-access helpers ---------------------------------------------------

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
}

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  require_object(j, where);
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) { known = true; break; }
    if (!known) bad(where, "unknown key '" + item.key() + "'");
  }
}

double get_double(const Json& j, const char* key, double fallback,
                  const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as_double(j.at(key), where + "." + key);
}

int get_int(const Json& j, const char* key, int fallback,
            const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as_int(j.at(key), where + "." + key);
}

bool get_bool(const Json& j, const char* key, bool fallback,
              const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as_bool(j.at(key), where + "." + key);
}

std::string get_string(const Json& j, const char* key,
                       const std::string& fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as_string(j.at(key), where + "." + key);
}

// --- writers -----------------------------------------------------------------

Json to_json(const Request& r) {
  return Json{{"id", r.id},
              {"cpu_mhz", r.cpu_mhz},
              {"net_mbps", r.net_mbps},
              {"storage_mb", r.storage_mb},
              {"package", r.package}};
}

Json to_json(const WorkloadConfig& cfg) {
  return Json{{"n_requests", cfg.n_requests},
              {"cpu_mhz", Json::array({cfg.cpu_lo_mhz, cfg.cpu_hi_mhz})},
              {"net_mbps", Json::array({cfg.net_lo_mbps, cfg.net_hi_mbps})},
              {"storage_mb",
               Json::array({cfg.storage_lo_mb, cfg.storage_hi_mb})},
              {"package_pool", cfg.package_pool}};
}

Json to_json(const NodeSpec& node) {
  return Json{{"cpu_capacity_mhz", node.cpu_capacity_mhz},
              {"cpu_max_power_w", node.cpu_max_power_w},
              {"storage_capacity_mb", node.storage_capacity_mb},
              {"storage_max_power_w", node.storage_max_power_w}};
}

Json to_json(const DeviceSpec& dev) {
  return Json{{"capacity_mbps", dev.capacity_mbps},
              {"max_power_w", dev.max_power_w},
              {"enforce_capacity", dev.enforce_capacity}};
}

Json to_json(const Scenario& s) {
  Json overrides = Json::object();
  for (const auto& [dev, flag] : s.enforce_overrides)
    overrides[to_string(dev)] = flag;
  return Json{{"kind", to_string(s.kind)},
              {"vehicle_count", s.vehicle_count},
              {"fog_server_count", s.fog_server_count},
              {"core_hops", s.core_hops},
              {"cloud_enabled", s.cloud_enabled},
              {"enforce_overrides", std::move(overrides)}};
}

Json to_json(const Deployment& d) {
  Json sets = Json::array();
  for (const auto& packages : d.vehicle_packages)
    sets.push_back(packages);
  return Json{{"pool_size", d.pool_size},
              {"packages_per_vehicle", d.packages_per_vehicle},
              {"vehicle_packages", std::move(sets)}};
}

Json to_json(const Catalog& c) {
  Json nodes{{"vehicle", to_json(c.vehicle)},
             {"fog_server", to_json(c.fog_server)},
             {"cloud_server", to_json(c.cloud_server)}};
  Json devices = Json::object();
  for (int i = 0; i < kDeviceCount; ++i) {
    const auto name = static_cast<DeviceName>(i);
    devices[to_string(name)] = to_json(c.device(name));
  }
  auto path_names = [](const PathSpec& p) {
    Json arr = Json::array();
    for (DeviceName name : p.devices) arr.push_back(to_string(name));
    return arr;
  };
  Json paths{{"vf", path_names(c.vf_path)},
             {"fixed_fog", path_names(c.fixed_fog_path)},
             {"cloud", path_names(c.cloud_path)}};
  return Json{{"nodes", std::move(nodes)},
              {"devices", std::move(devices)},
              {"paths", std::move(paths)}};
}

Json to_json(const NodeRef& ref) {
  return Json{{"tier", to_string(ref.tier)}, {"index", ref.index}};
}

Json to_json(const TierPower& p) {
  return Json{{"processing_w", p.processing_w},
              {"networking_w", p.networking_w},
              {"storage_w", p.storage_w},
              {"total_w", p.sum()}};
}

Json to_json(const PowerBreakdown& p) {
  return Json{{"vf", to_json(p.vf)},
              {"fixed_fog", to_json(p.fixed_fog)},
              {"cloud", to_json(p.cloud)},
              {"total_w", p.total_w}};
}

Json to_json(const NodeUse& use) {
  return Json{{"node", to_json(use.node)},
              {"request_count", use.request_count},
              {"cpu_mhz", use.cpu_mhz},
              {"net_mbps", use.net_mbps},
              {"storage_mb", use.storage_mb},
              {"cpu_utilization", use.cpu_utilization}};
}

Json to_json(const SolveReport& rep) {
  Json nodes = Json::array();
  for (const NodeUse& use : rep.node_uses) nodes.push_back(to_json(use));
  Json node_of = Json::array();
  for (const NodeRef& ref : rep.assignment.node_of)
    node_of.push_back(to_json(ref));
  return Json{{"schema_version", kSchemaVersion},
              {"objective_w", rep.objective_w},
              {"proved_optimal", rep.proved_optimal},
              {"gap_w", rep.gap_w},
              {"explored_nodes", rep.explored_nodes},
              {"tier_request_counts",
               Json::array({rep.tier_request_counts[0],
                            rep.tier_request_counts[1],
                            rep.tier_request_counts[2]})},
              {"power", to_json(rep.power)},
              {"assignment", std::move(node_of)},
              {"node_uses", std::move(nodes)}};
}

// --- readers -------------------------------------------------------------

Request request_from_json(const Json& j, const std::string& where) {
  require_keys(j, {"id", "cpu_mhz", "net_mbps", "storage_mb", "package"},
               where);
  Request r;
  r.id = get_int(j, "id", 0, where);
  r.cpu_mhz = get_double(j, "cpu_mhz", 0.0, where);
  r.net_mbps = get_double(j, "net_mbps", 0.0, where);
  r.storage_mb = get_double(j, "storage_mb", 0.0, where);
  r.package = get_int(j, "package", 0, where);
  return r;
}

std::vector<Request> requests_from_json(const Json& j,
                                        const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<Request> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(
        request_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

namespace {

void read_range(const Json& j, const char* key, double& lo, double& hi,
                const std::string& where) {
  if (!j.contains(key)) return;
  const Json& arr = j.at(key);
  const std::string at = where + "." + key;
  if (!arr.is_array() || arr.size() != 2) bad(at, "expected [lo, hi]");
  lo = as_double(arr[0], at + "[0]");
  hi = as_double(arr[1], at + "[1]");
}

} // namespace

WorkloadConfig workload_from_json(const Json& j, const std::string& where,
                                  WorkloadConfig base) {
  require_keys(j, {"n_requests", "cpu_mhz", "net_mbps", "storage_mb",
                   "package_pool"},
               where);
  base.n_requests = get_int(j, "n_requests", base.n_requests, where);
  read_range(j, "cpu_mhz", base.cpu_lo_mhz, base.cpu_hi_mhz, where);
  read_range(j, "net_mbps", base.net_lo_mbps, base.net_hi_mbps, where);
  read_range(j, "storage_mb", base.storage_lo_mb, base.storage_hi_mb, where);
  base.package_pool = get_int(j, "package_pool", base.package_pool, where);
  return base;
}

Scenario scenario_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (auto kind = scenario_kind_from_string(name))
      return Scenario::preset(*kind);
    bad(where, "unknown scenario kind '" + name + "'");
  }
  require_keys(j, {"kind", "vehicle_count", "fog_server_count", "core_hops",
                   "cloud_enabled", "enforce_overrides"},
               where);
  Scenario s = Scenario::preset(ScenarioKind::Custom);
  if (j.contains("kind")) {
    const std::string name = as_string(j.at("kind"), where + ".kind");
    const auto kind = scenario_kind_from_string(name);
    if (!kind) bad(where + ".kind", "unknown scenario kind '" + name + "'");
    s = Scenario::preset(*kind);
  }
  s.vehicle_count = get_int(j, "vehicle_count", s.vehicle_count, where);
  s.fog_server_count = get_int(j, "fog_server_count", s.fog_server_count, where);
  s.core_hops = get_int(j, "core_hops", s.core_hops, where);
  s.cloud_enabled = get_bool(j, "cloud_enabled", s.cloud_enabled, where);
  if (j.contains("enforce_overrides")) {
    const Json& ov = j.at("enforce_overrides");
    const std::string at = where + ".enforce_overrides";
    require_object(ov, at);
    for (const auto& item : ov.items()) {
      const auto dev = device_from_string(item.key());
      if (!dev) bad(at, "unknown device name '" + item.key() + "'");
      s.enforce_overrides.emplace_back(*dev,
                                       as_bool(item.value(), at + "." + item.key()));
    }
  }
  return s;
}

Deployment deployment_from_json(const Json& j, const std::string& where) {
  require_keys(j, {"pool_size", "packages_per_vehicle", "vehicle_packages"},
               where);
  Deployment d;
  d.pool_size = get_int(j, "pool_size", kDefaultPackagePool, where);
  d.packages_per_vehicle = get_int(j, "packages_per_vehicle", 0, where);
  if (j.contains("vehicle_packages")) {
    const Json& sets = j.at("vehicle_packages");
    const std::string at = where + ".vehicle_packages";
    if (!sets.is_array()) bad(at, "expected an array of arrays");
    for (std::size_t v = 0; v < sets.size(); ++v) {
      const Json& set = sets[v];
      const std::string vat = at + "[" + std::to_string(v) + "]";
      if (!set.is_array()) bad(vat, "expected an array");
      std::vector<PackageId> packages;
      for (std::size_t p = 0; p < set.size(); ++p)
        packages.push_back(as_int(set[p], vat + "[" + std::to_string(p) + "]"));
      d.vehicle_packages.push_back(std::move(packages));
    }
  }
  return d;
}

namespace {

void apply_node_overrides(NodeSpec& node, const Json& j,
                          const std::string& where) {
  require_keys(j, {"cpu_capacity_mhz", "cpu_max_power_w",
                   "storage_capacity_mb", "storage_max_power_w"},
               where);
  node.cpu_capacity_mhz = get_double(j, "cpu_capacity_mhz",
                                     node.cpu_capacity_mhz, where);
  node.cpu_max_power_w = get_double(j, "cpu_max_power_w",
                                    node.cpu_max_power_w, where);
  node.storage_capacity_mb = get_double(j, "storage_capacity_mb",
                                        node.storage_capacity_mb, where);
  node.storage_max_power_w = get_double(j, "storage_max_power_w",
                                        node.storage_max_power_w, where);
}

std::vector<DeviceName> path_from_json(const Json& j,
                                       const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of device names");
  std::vector<DeviceName> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(device_name(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

} // namespace

void apply_catalog_overrides(Catalog& catalog, const Json& j,
                             const std::string& where) {
  require_keys(j, {"nodes", "devices", "paths"}, where);
  if (j.contains("nodes")) {
    const Json& nodes = j.at("nodes");
    const std::string at = where + ".nodes";
    require_keys(nodes, {"vehicle", "fog_server", "cloud_server"}, at);
    if (nodes.contains("vehicle"))
      apply_node_overrides(catalog.vehicle, nodes.at("vehicle"),
                           at + ".vehicle");
    if (nodes.contains("fog_server"))
      apply_node_overrides(catalog.fog_server, nodes.at("fog_server"),
                           at + ".fog_server");
    if (nodes.contains("cloud_server"))
      apply_node_overrides(catalog.cloud_server, nodes.at("cloud_server"),
                           at + ".cloud_server");
  }
  if (j.contains("devices")) {
    const Json& devices = j.at("devices");
    const std::string at = where + ".devices";
    require_object(devices, at);
    for (const auto& item : devices.items()) {
      const auto name = device_from_string(item.key());
      if (!name) bad(at, "unknown device name '" + item.key() + "'");
      const std::string dat = at + "." + item.key();
      const Json& dj = item.value();
      require_keys(dj, {"capacity_mbps", "max_power_w", "enforce_capacity"},
                   dat);
      DeviceSpec& dev = catalog.device(*name);
      dev.capacity_mbps = get_double(dj, "capacity_mbps", dev.capacity_mbps, dat);
      dev.max_power_w = get_double(dj, "max_power_w", dev.max_power_w, dat);
      dev.enforce_capacity = get_bool(dj, "enforce_capacity",
                                      dev.enforce_capacity, dat);
    }
  }
  if (j.contains("paths")) {
    const Json& paths = j.at("paths");
    const std::string at = where + ".paths";
    require_keys(paths, {"vf", "fixed_fog", "cloud"}, at);
    if (paths.contains("vf"))
      catalog.vf_path.devices = path_from_json(paths.at("vf"), at + ".vf");
    if (paths.contains("fixed_fog"))
      catalog.fixed_fog_path.devices =
          path_from_json(paths.at("fixed_fog"), at + ".fixed_fog");
    if (paths.contains("cloud"))
      catalog.cloud_path.devices =
          path_from_json(paths.at("cloud"), at + ".cloud");
  }
}

NodeRef node_ref_from_json(const Json& j, const std::string& where) {
  require_keys(j, {"tier", "index"}, where);
  const std::string tier = get_string(j, "tier", "", where);
  NodeRef ref;
  if (tier == "vf") ref.tier = Tier::VehicularFog;
  else if (tier == "fixed_fog") ref.tier = Tier::FixedFog;
  else if (tier == "cloud") ref.tier = Tier::Cloud;
  else bad(where + ".tier", "unknown tier '" + tier + "'");
  ref.index = get_int(j, "index", 0, where);
  return ref;
}

Assignment assignment_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  Assignment a;
  a.node_of.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    a.node_of.push_back(
        node_ref_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return a;
}

// --- files -------------------------------------------------------------

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw Error(ErrorCode::ConfigError, path + ": invalid JSON");
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

} // namespace fogmatch
