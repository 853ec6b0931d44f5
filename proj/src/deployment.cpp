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

#include "fogmatch/deployment.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fogmatch/errors.hpp"
#include "fogmatch/splitmix64.hpp"

namespace fogmatch {

namespace {

void check_k(int k, int pool, int vehicles) {
  if (vehicles < 0)
    throw Error(ErrorCode::KOutOfRange, "vehicle count must be >= 0");
  if (k < 1 || k > pool)
    throw Error(ErrorCode::KOutOfRange,
                "k = " + std::to_string(k) + " outside 1.." + std::to_string(pool));
}

} // namespace

Deployment same_type_deployment(int vehicle_count, int packages_per_vehicle,
                                int pool_size) {
  check_k(packages_per_vehicle, pool_size, vehicle_count);
  Deployment d;
  d.pool_size = pool_size;
  d.packages_per_vehicle = packages_per_vehicle;
  std::vector<PackageId> prefix(static_cast<std::size_t>(packages_per_vehicle));
  std::iota(prefix.begin(), prefix.end(), 1);
  d.vehicle_packages.assign(static_cast<std::size_t>(vehicle_count), prefix);
  return d;
}

Deployment random_type_deployment(int vehicle_count, int packages_per_vehicle,
                                  std::uint64_t seed, int pool_size) {
  check_k(packages_per_vehicle, pool_size, vehicle_count);
  Deployment d;
  d.pool_size = pool_size;
  d.packages_per_vehicle = packages_per_vehicle;
  d.vehicle_packages.reserve(static_cast<std::size_t>(vehicle_count));
  std::vector<PackageId> pool(static_cast<std::size_t>(pool_size));
  for (int v = 0; v < vehicle_count; ++v) {
    SplitMix64 rng(SplitMix64::mix(seed ^ SplitMix64::mix(static_cast<std::uint64_t>(v))));
    std::iota(pool.begin(), pool.end(), 1);
    // Fisher-Yates; the first k entries of the shuffled pool are the draw.
    for (int i = 0; i < pool_size - 1; ++i) {
      const int j = i + rng.next_below(pool_size - i);
      std::swap(pool[i], pool[j]);
    }
    std::vector<PackageId> chosen(pool.begin(), pool.begin() + packages_per_vehicle);
    std::sort(chosen.begin(), chosen.end());
    d.vehicle_packages.push_back(std::move(chosen));
  }
  return d;
}

} // namespace fogmatch
