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

#ifndef FOGMATCH_SERIALIZE_HPP
#define FOGMATCH_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "fogmatch/catalog.hpp"
#include "fogmatch/optimizer.hpp"
#include "fogmatch/power.hpp"
#include "fogmatch/types.hpp"
#include "fogmatch/workload.hpp"

namespace fogmatch {

/// Ordered so that emitted files have a stable, documented key order.
using Json = nlohmann::ordered_json;

/// Every file this library writes or reads carries this version.
inline constexpr int kSchemaVersion = 1;

// --- writers -------------------------------------------------------------

Json to_json(const Request& r);
Json to_json(const WorkloadConfig& cfg);
Json to_json(const NodeSpec& node);
Json to_json(const DeviceSpec& dev);
Json to_json(const Scenario& s);
Json to_json(const Deployment& d);
Json to_json(const Catalog& c);
Json to_json(const NodeRef& ref);
Json to_json(const TierPower& p);
Json to_json(const PowerBreakdown& p);
Json to_json(const NodeUse& use);
Json to_json(const SolveReport& rep);

// --- readers ---------------------------------------------------------------
// All readers are strict: unknown keys, wrong JSON types, and out-of-range
// enum names throw Error(ConfigError) naming the offending location. Readers
// that take a `base` treat the object as a partial override of it.

Request request_from_json(const Json& j, const std::string& where);
std::vector<Request> requests_from_json(const Json& j, const std::string& where);
WorkloadConfig workload_from_json(const Json& j, const std::string& where,
                                  WorkloadConfig base = {});
Scenario scenario_from_json(const Json& j, const std::string& where);
Deployment deployment_from_json(const Json& j, const std::string& where);
void apply_catalog_overrides(Catalog& catalog, const Json& j,
                             const std::string& where);
NodeRef node_ref_from_json(const Json& j, const std::string& where);
Assignment assignment_from_json(const Json& j, const std::string& where);

// --- strict-access helpers (shared by the config loader) --------------------

/// Throws ConfigError if `j` is not an object or holds a key outside
/// `allowed`.
void require_object(const Json& j, const std::string& where);
void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where);
double get_double(const Json& j, const char* key, double fallback,
                  const std::string& where);
int get_int(const Json& j, const char* key, int fallback,
            const std::string& where);
bool get_bool(const Json& j, const char* key, bool fallback,
              const std::string& where);
std::string get_string(const Json& j, const char* key,
                       const std::string& fallback, const std::string& where);

// --- files -------------------------------------------------------------

Json load_json_file(const std::string& path);
/// Writes text exactly as given (no trailing-newline surprises: the caller
/// includes any). Throws Error(IoError) on failure.
void write_text_file(const std::string& path, const std::string& text);

} // namespace fogmatch

#endif // FOGMATCH_SERIALIZE_HPP
