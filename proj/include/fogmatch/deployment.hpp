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

#ifndef FOGMATCH_DEPLOYMENT_HPP
#define FOGMATCH_DEPLOYMENT_HPP

#include <cstdint>

#include "fogmatch/types.hpp"

namespace fogmatch {

/// Every vehicle gets the identical prefix set {1, ..., k}. The pool is
/// equally popular, so which k identical packages are chosen does not matter
/// statistically; the prefix keeps runs reproducible.
Deployment same_type_deployment(int vehicle_count, int packages_per_vehicle,
                                int pool_size = kDefaultPackagePool);

/// Every vehicle independently gets k distinct packages drawn uniformly
/// without replacement.
///
/// Implementation: each vehicle shuffles the full pool with its own
/// SplitMix64 stream seeded from (seed, vehicle index) and takes the first k
/// entries. Two useful consequences, both relied on by the sweep harness:
///  - for a fixed seed the draw for vehicle v does not depend on k or on the
///    total vehicle count, so the k-set grows monotonically with k and a
///    bigger fleet extends a smaller one;
///  - marginally each k-subset is still uniform (a uniform permutation
///    prefix is a uniform k-subset).
Deployment random_type_deployment(int vehicle_count, int packages_per_vehicle,
                                  std::uint64_t seed,
                                  int pool_size = kDefaultPackagePool);

} // namespace fogmatch

#endif // FOGMATCH_DEPLOYMENT_HPP
