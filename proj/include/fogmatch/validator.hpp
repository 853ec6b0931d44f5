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

#ifndef FOGMATCH_VALIDATOR_HPP
#define FOGMATCH_VALIDATOR_HPP

#include <string>
#include <vector>

#include "fogmatch/catalog.hpp"
#include "fogmatch/power.hpp"
#include "fogmatch/types.hpp"

namespace fogmatch {

/// Everything check_assignment can find wrong with an assignment.
enum class ViolationKind {
  SizeMismatch,        // node_of length differs from the request count
  InvalidNode,         // node outside the scenario's node set
  PackageMismatch,     // vehicle lacks the request's software package
  CpuOverCapacity,     // aggregate CPU load exceeds the node's capacity
  NetworkOverCapacity, // aggregate demand exceeds an enforced device
  StorageOverCapacity, // aggregate storage exceeds the node's capacity
};

const char* to_string(ViolationKind kind);

/// One violated invariant. Violations are data, not errors: a malformed
/// assignment yields a non-empty report, never a throw.
struct Violation {
  ViolationKind kind;
  int request = -1; // offending request id, or -1 for node-level findings
  NodeRef node{};   // offending node, meaningless for SizeMismatch
  double load = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_text() const; // one line per violation, "" when ok
};

/// Checks every assignment invariant: one node per request, node exists
/// under the scenario, vehicle hosts the request's package, and aggregate
/// CPU/storage loads (plus enforced network devices) fit capacity. Each
/// violated invariant is listed with the offending request/node; the report
/// is empty iff the assignment is valid.
CheckReport check_assignment(const Assignment& assignment,
                             const std::vector<Request>& requests,
                             const Scenario& scenario,
                             const Deployment& deployment,
                             const Catalog& catalog);

/// Independent power recomputation: walks the requests one by one and sums
/// each request's standalone draw on its node and tier path. Shares only the
/// domain types with the power model (no aggregation, no caches) so the two
/// paths are genuinely redundant; they must agree within 1e-9 relative.
/// Precondition: check_assignment returned an empty report.
PowerBreakdown recompute_power(const Assignment& assignment,
                               const std::vector<Request>& requests,
                               const Scenario& scenario,
                               const Deployment& deployment,
                               const Catalog& catalog);

} // namespace fogmatch

#endif // FOGMATCH_VALIDATOR_HPP
