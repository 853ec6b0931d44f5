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

#include "fogmatch/workload.hpp"

#include <string>

#include "fogmatch/errors.hpp"
#include "fogmatch/splitmix64.hpp"

namespace fogmatch {

void validate_workload_config(const WorkloadConfig& cfg) {
  if (cfg.n_requests < 0)
    throw Error(ErrorCode::InvalidRange, "n_requests must be >= 0");
  if (cfg.package_pool < 1)
    throw Error(ErrorCode::InvalidRange, "package pool must hold >= 1 package");
  auto check = [](double lo, double hi, const char* what) {
    if (lo > hi)
      throw Error(ErrorCode::InvalidRange,
                  std::string(what) + " range has lo > hi");
    if (lo <= 0)
      throw Error(ErrorCode::InvalidRange,
                  std::string(what) + " range must be strictly positive");
  };
  check(cfg.cpu_lo_mhz, cfg.cpu_hi_mhz, "cpu");
  check(cfg.net_lo_mbps, cfg.net_hi_mbps, "net");
  check(cfg.storage_lo_mb, cfg.storage_hi_mb, "storage");
}

std::vector<Request> generate_requests(std::uint64_t seed,
                                       const WorkloadConfig& cfg) {
  validate_workload_config(cfg);
  SplitMix64 rng(seed);
  std::vector<Request> out;
  out.reserve(static_cast<std::size_t>(cfg.n_requests));
  for (int i = 0; i < cfg.n_requests; ++i) {
    Request r;
    r.id = i;
    r.cpu_mhz = cfg.cpu_lo_mhz + rng.next_unit() * (cfg.cpu_hi_mhz - cfg.cpu_lo_mhz);
    r.net_mbps = cfg.net_lo_mbps + rng.next_unit() * (cfg.net_hi_mbps - cfg.net_lo_mbps);
    r.storage_mb =
        cfg.storage_lo_mb + rng.next_unit() * (cfg.storage_hi_mb - cfg.storage_lo_mb);
    r.package = 1 + rng.next_below(cfg.package_pool);
    out.push_back(r);
  }
  return out;
}

} // namespace fogmatch
