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

#ifndef FOGMATCH_WORKLOAD_HPP
#define FOGMATCH_WORKLOAD_HPP

#include <cstdint>
#include <vector>

#include "fogmatch/types.hpp"

namespace fogmatch {

/// Parameters of the synthetic request distribution.
struct WorkloadConfig {
  int n_requests = 50;
  double cpu_lo_mhz = 50.0;
  double cpu_hi_mhz = 300.0;
  double net_lo_mbps = 5.0;
  double net_hi_mbps = 50.0;
  double storage_lo_mb = 10.0;
  double storage_hi_mb = 400.0;
  int package_pool = kDefaultPackagePool; // S, packages equally popular
};

/// Throws Error(InvalidRange) if any range is degenerate or non-positive.
void validate_workload_config(const WorkloadConfig& cfg);

/// Draws n_requests requests from a single SplitMix64 stream seeded with
/// `seed`. Per request the draw order is cpu, net, storage, package; demands
/// are uniform doubles on their ranges, the package is uniform on 1..S.
/// Identical seeds give bit-identical requests on every platform.
std::vector<Request> generate_requests(std::uint64_t seed,
                                       const WorkloadConfig& cfg);

} // namespace fogmatch

#endif // FOGMATCH_WORKLOAD_HPP
