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

#ifndef FOGMATCH_CONFIG_HPP
#define FOGMATCH_CONFIG_HPP

#include <optional>
#include <string>

#include "fogmatch/serialize.hpp"
#include "fogmatch/sweep.hpp"

namespace fogmatch {

/// Everything a run can be told from a config file. All sections are
/// optional; omitted values keep the stock defaults. See README.md for the
/// full schema.
///
/// {
///   "schema_version": 1,
///   "catalog":  { "nodes": {...}, "devices": {...}, "paths": {...} },
///   "scenario": "CloudFogVF1" | { "kind": ..., "vehicle_count": ..., ... },
///   "workload": { "n_requests": 50, "cpu_mhz": [50, 300], ... },
///   "solver":   { "time_limit_s": 60.0, "max_nodes": 2000000 },
///   "sweep":    { "scenarios": [...], "policies": [...], "k": [1, 10],
///                 "seeds": [...] | { "count": 20, "first": 1 },
///                 "threads": 0, "out_dir": "out" }
/// }
struct RunConfig {
  SweepConfig sweep;                // catalog/workload/limits live here too
  std::optional<Scenario> scenario; // single-solve target, if given
  std::string out_dir = "out";
};

/// Strict parse: unknown keys or a schema_version other than kSchemaVersion
/// throw Error(ConfigError) naming the offending location.
RunConfig parse_run_config(const Json& j);
RunConfig load_run_config(const std::string& path);

} // namespace fogmatch

#endif // FOGMATCH_CONFIG_HPP
