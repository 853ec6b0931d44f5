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

#include "fogmatch/config.hpp"

#include "fogmatch/errors.hpp"

namespace fogmatch {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigError, where + ": " + what);
}

std::vector<std::uint64_t> seeds_from_json(const Json& j,
                                           const std::string& where) {
  std::vector<std::uint64_t> seeds;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const Json& s = j[i];
      if (!s.is_number_integer() || s.get<std::int64_t>() < 0)
        bad(where + "[" + std::to_string(i) + "]",
            "expected a non-negative integer seed");
      seeds.push_back(s.get<std::uint64_t>());
    }
    return seeds;
  }
  require_keys(j, {"count", "first"}, where);
  const int count = get_int(j, "count", 20, where);
  const int first = get_int(j, "first", 1, where);
  if (count < 1) bad(where + ".count", "need at least one seed");
  if (first < 0) bad(where + ".first", "seeds are non-negative");
  for (int i = 0; i < count; ++i)
    seeds.push_back(static_cast<std::uint64_t>(first + i));
  return seeds;
}

void apply_sweep_section(SweepConfig& sweep, std::string& out_dir,
                         const Json& j, const std::string& where) {
  require_keys(j, {"scenarios", "policies", "k", "seeds", "threads",
                   "out_dir"},
               where);
  if (j.contains("scenarios")) {
    const Json& arr = j.at("scenarios");
    const std::string at = where + ".scenarios";
    if (!arr.is_array()) bad(at, "expected an array");
    sweep.scenarios.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      sweep.scenarios.push_back(
          scenario_from_json(arr[i], at + "[" + std::to_string(i) + "]"));
  }
  if (j.contains("policies")) {
    const Json& arr = j.at("policies");
    const std::string at = where + ".policies";
    if (!arr.is_array()) bad(at, "expected an array");
    sweep.policies.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ith = at + "[" + std::to_string(i) + "]";
      if (!arr[i].is_string()) bad(ith, "expected a policy name");
      const auto policy = policy_from_string(arr[i].get<std::string>());
      if (!policy)
        bad(ith, "unknown policy '" + arr[i].get<std::string>() + "'");
      sweep.policies.push_back(*policy);
    }
  }
  if (j.contains("k")) {
    const Json& arr = j.at("k");
    const std::string at = where + ".k";
    if (arr.is_number_integer()) {
      sweep.k_lo = sweep.k_hi = arr.get<int>();
    } else if (arr.is_array() && arr.size() == 2 &&
               arr[0].is_number_integer() && arr[1].is_number_integer()) {
      sweep.k_lo = arr[0].get<int>();
      sweep.k_hi = arr[1].get<int>();
    } else {
      bad(at, "expected k or [k_lo, k_hi]");
    }
  }
  if (j.contains("seeds"))
    sweep.seeds = seeds_from_json(j.at("seeds"), where + ".seeds");
  sweep.threads = get_int(j, "threads", sweep.threads, where);
  out_dir = get_string(j, "out_dir", out_dir, where);
}

} // namespace

RunConfig parse_run_config(const Json& j) {
  const std::string where = "config";
  require_keys(j, {"schema_version", "catalog", "scenario", "workload",
                   "solver", "sweep"},
               where);
  const int version = get_int(j, "schema_version", kSchemaVersion, where);
  if (version != kSchemaVersion)
    bad(where + ".schema_version",
        "expected " + std::to_string(kSchemaVersion) + ", got " +
            std::to_string(version));

  RunConfig cfg;
  if (j.contains("catalog"))
    apply_catalog_overrides(cfg.sweep.catalog, j.at("catalog"),
                            where + ".catalog");
  if (j.contains("scenario"))
    cfg.scenario = scenario_from_json(j.at("scenario"), where + ".scenario");
  if (j.contains("workload"))
    cfg.sweep.workload = workload_from_json(j.at("workload"),
                                            where + ".workload",
                                            cfg.sweep.workload);
  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    const std::string at = where + ".solver";
    require_keys(s, {"time_limit_s", "max_nodes"}, at);
    cfg.sweep.limits.time_limit_s =
        get_double(s, "time_limit_s", cfg.sweep.limits.time_limit_s, at);
    if (s.contains("max_nodes")) {
      const Json& n = s.at("max_nodes");
      if (!n.is_number_integer() || n.get<std::int64_t>() < 0)
        bad(at + ".max_nodes", "expected a non-negative integer");
      cfg.sweep.limits.max_nodes = n.get<std::uint64_t>();
    }
  }
  if (j.contains("sweep"))
    apply_sweep_section(cfg.sweep, cfg.out_dir, j.at("sweep"),
                        where + ".sweep");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(load_json_file(path));
}

} // namespace fogmatch
