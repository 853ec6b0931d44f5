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

#include "fogmatch/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "fogmatch/errors.hpp"

namespace fogmatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Instance model: static per-request tier costs plus node bookkeeping data.
// Nodes inside a tier are interchangeable for cost (identical hardware), so
// the cost matrix has one column per tier; only feasibility is per node.
// ---------------------------------------------------------------------------

struct Model {
  const std::vector<Request>* reqs = nullptr;
  int n = 0;
  int vehicles = 0;
  int fogs = 0;
  bool cloud = false;
  bool wifi_enforced = true;

  double veh_cpu = 0, veh_sto = 0, veh_net = 0;
  double fog_cpu = 0, fog_sto = 0;

  /// cost[i][t]: standalone power of request i on tier t; +inf when the
  /// request can never run on that tier (absent tier, missing package on
  /// every vehicle, or a demand that exceeds an empty node's capacity).
  std::vector<std::array<double, kTierCount>> cost;

  /// Bit p-1 set when the vehicle hosts package p (pool sizes stay <= 16
  /// in practice; larger pools fall back to a per-vehicle sorted scan).
  std::vector<std::uint32_t> veh_mask;
  /// Vehicles with identical package sets share a class id; only vehicles
  /// of the same class with identical residuals are interchangeable.
  std::vector<int> veh_class;

  /// Branch order: request positions sorted by descending cpu, then id.
  std::vector<int> order;

  bool vehicle_hosts(int v, PackageId p) const {
    if (p >= 1 && p <= 32) return (veh_mask[v] >> (p - 1)) & 1u;
    return false;
  }
  int node_count() const { return vehicles + fogs + (cloud ? 1 : 0); }
};

int tier_of_choice(const Model& m, int choice) {
  if (choice < m.vehicles) return 0;
  if (choice < m.vehicles + m.fogs) return 1;
  return 2;
}

NodeRef ref_of_choice(const Model& m, int choice) {
  if (choice < m.vehicles) return {Tier::VehicularFog, choice};
  if (choice < m.vehicles + m.fogs) return {Tier::FixedFog, choice - m.vehicles};
  return {Tier::Cloud, 0};
}

int choice_of_ref(const Model& m, NodeRef ref) {
  switch (ref.tier) {
  case Tier::VehicularFog: return ref.index;
  case Tier::FixedFog: return m.vehicles + ref.index;
  case Tier::Cloud: return m.vehicles + m.fogs;
  }
  return -1;
}

Model build_model(const std::vector<Request>& requests, const Scenario& scenario,
                  const Deployment& deployment, const Catalog& catalog) {
  const Scenario s = validate_scenario(scenario, catalog);
  if (s.vehicle_count > 0 && deployment.vehicle_count() != s.vehicle_count)
    throw Error(ErrorCode::InvalidScenario,
                "deployment describes " +
                    std::to_string(deployment.vehicle_count()) +
                    " vehicles, scenario has " +
                    std::to_string(s.vehicle_count));

  Model m;
  m.reqs = &requests;
  m.n = static_cast<int>(requests.size());
  m.vehicles = s.vehicle_count;
  m.fogs = s.fog_server_count;
  m.cloud = s.cloud_enabled;

  m.veh_cpu = catalog.vehicle.cpu_capacity_mhz;
  m.veh_sto = catalog.vehicle.storage_capacity_mb;
  m.fog_cpu = catalog.fog_server.cpu_capacity_mhz;
  m.fog_sto = catalog.fog_server.storage_capacity_mb;

  const auto vf_path = expanded_path(catalog, Tier::VehicularFog, s);
  const auto ff_path = expanded_path(catalog, Tier::FixedFog, s);
  const auto cl_path = expanded_path(catalog, Tier::Cloud, s);
  m.veh_net = catalog.device(DeviceName::VehicleWifi).capacity_mbps;
  m.wifi_enforced = catalog.device(DeviceName::VehicleWifi).enforce_capacity;
  for (const auto& dev : vf_path)
    if (dev.name == DeviceName::VehicleWifi) m.wifi_enforced = dev.enforce_capacity;

  m.veh_mask.resize(static_cast<std::size_t>(m.vehicles), 0);
  m.veh_class.resize(static_cast<std::size_t>(m.vehicles), 0);
  std::uint32_t any_mask = 0;
  {
    std::map<std::vector<PackageId>, int> classes;
    for (int v = 0; v < m.vehicles; ++v) {
      std::uint32_t mask = 0;
      for (PackageId p : deployment.vehicle_packages[v])
        if (p >= 1 && p <= 32) mask |= 1u << (p - 1);
      m.veh_mask[v] = mask;
      any_mask |= mask;
      auto [it, _] = classes.try_emplace(deployment.vehicle_packages[v],
                                         static_cast<int>(classes.size()));
      m.veh_class[v] = it->second;
    }
  }

  m.cost.resize(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) {
    const Request& r = requests[i];
    auto& row = m.cost[static_cast<std::size_t>(i)];
    row = {kInf, kInf, kInf};

    const bool vf_possible =
        m.vehicles > 0 && r.package >= 1 && r.package <= 32 &&
        ((any_mask >> (r.package - 1)) & 1u) && r.cpu_mhz <= m.veh_cpu &&
        r.storage_mb <= m.veh_sto &&
        (!m.wifi_enforced || r.net_mbps <= m.veh_net);
    if (vf_possible)
      row[0] = processing_power(r.cpu_mhz, catalog.vehicle, false) +
               network_power(r.net_mbps, vf_path, false) +
               storage_power(r.storage_mb, catalog.vehicle, false);

    if (m.fogs > 0 && r.cpu_mhz <= m.fog_cpu && r.storage_mb <= m.fog_sto)
      row[1] = processing_power(r.cpu_mhz, catalog.fog_server, false) +
               network_power(r.net_mbps, ff_path, false) +
               storage_power(r.storage_mb, catalog.fog_server, false);

    if (m.cloud)
      row[2] = processing_power(r.cpu_mhz, catalog.cloud_server, false) +
               network_power(r.net_mbps, cl_path, false) +
               storage_power(r.storage_mb, catalog.cloud_server, false);

    if (row[0] == kInf && row[1] == kInf && row[2] == kInf)
      throw Error(ErrorCode::Infeasible,
                  "request " + std::to_string(r.id) +
                      " fits no node in the scenario");
  }

  m.order.resize(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) m.order[static_cast<std::size_t>(i)] = i;
  std::sort(m.order.begin(), m.order.end(), [&](int a, int b) {
    if (requests[a].cpu_mhz != requests[b].cpu_mhz)
      return requests[a].cpu_mhz > requests[b].cpu_mhz;
    return requests[a].id < requests[b].id;
  });
  return m;
}

/// Canonical objective: id-ordered sum of the static tier costs. Both the
/// exact solver and the oracle report this exact value, so equal optima
/// compare bitwise-equal.
double canonical_objective(const Model& m, const std::vector<NodeRef>& node_of) {
  double total = 0.0;
  for (int i = 0; i < m.n; ++i)
    total += m.cost[static_cast<std::size_t>(i)]
                   [static_cast<int>(node_of[static_cast<std::size_t>(i)].tier)];
  return total;
}

// ---------------------------------------------------------------------------
// Residual-capacity state shared by the constructions, the local search and
// the branch-and-bound replays.
// ---------------------------------------------------------------------------

struct State {
  std::vector<double> vcpu, vnet, vsto; // per vehicle
  std::vector<double> fcpu, fsto;       // per fog server

  /// Resets to full capacities; reuses the vectors' storage.
  void reset(const Model& m) {
    vcpu.assign(static_cast<std::size_t>(m.vehicles), m.veh_cpu);
    vnet.assign(static_cast<std::size_t>(m.vehicles),
                m.wifi_enforced ? m.veh_net : kInf);
    vsto.assign(static_cast<std::size_t>(m.vehicles), m.veh_sto);
    fcpu.assign(static_cast<std::size_t>(m.fogs), m.fog_cpu);
    fsto.assign(static_cast<std::size_t>(m.fogs), m.fog_sto);
  }

  static State fresh(const Model& m) {
    State s;
    s.reset(m);
    return s;
  }

  bool fits(const Model& m, const Request& r, int choice) const {
    if (choice < m.vehicles) {
      const auto v = static_cast<std::size_t>(choice);
      return m.vehicle_hosts(choice, r.package) && r.cpu_mhz <= vcpu[v] &&
             r.net_mbps <= vnet[v] && r.storage_mb <= vsto[v];
    }
    if (choice < m.vehicles + m.fogs) {
      const auto f = static_cast<std::size_t>(choice - m.vehicles);
      return r.cpu_mhz <= fcpu[f] && r.storage_mb <= fsto[f];
    }
    return m.cloud;
  }

  void apply(const Model& m, const Request& r, int choice, double sign) {
    if (choice < m.vehicles) {
      const auto v = static_cast<std::size_t>(choice);
      vcpu[v] -= sign * r.cpu_mhz;
      if (m.wifi_enforced) vnet[v] -= sign * r.net_mbps;
      vsto[v] -= sign * r.storage_mb;
    } else if (choice < m.vehicles + m.fogs) {
      const auto f = static_cast<std::size_t>(choice - m.vehicles);
      fcpu[f] -= sign * r.cpu_mhz;
      fsto[f] -= sign * r.storage_mb;
    }
  }
};

/// True when `node_of` is a complete assignment that respects every node's
/// eligibility and capacity under this model. Used to vet warm starts.
bool assignment_feasible(const Model& m, const std::vector<NodeRef>& node_of) {
  if (node_of.size() != static_cast<std::size_t>(m.n)) return false;
  State st = State::fresh(m);
  for (int i = 0; i < m.n; ++i) {
    const NodeRef ref = node_of[static_cast<std::size_t>(i)];
    int choice = -1;
    if (ref.tier == Tier::VehicularFog && ref.index >= 0 &&
        ref.index < m.vehicles)
      choice = ref.index;
    else if (ref.tier == Tier::FixedFog && ref.index >= 0 && ref.index < m.fogs)
      choice = m.vehicles + ref.index;
    else if (ref.tier == Tier::Cloud && ref.index == 0 && m.cloud)
      choice = m.vehicles + m.fogs;
    if (choice < 0) return false;
    const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
    if (m.cost[static_cast<std::size_t>(i)][tier_of_choice(m, choice)] == kInf ||
        !st.fits(m, r, choice))
      return false;
    st.apply(m, r, choice, +1.0);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions and local search (incumbent providers).
// ---------------------------------------------------------------------------

/// Places requests in `order`, each on the feasible node with the lowest
/// score; scores[i][t] defaults to the plain tier cost. Returns an id-ordered
/// node map, or empty when some request cannot be placed.
std::vector<NodeRef> construct(const Model& m, const std::vector<int>& order,
                               const std::vector<std::array<double, 3>>* scores) {
  State st = State::fresh(m);
  std::vector<NodeRef> node_of(static_cast<std::size_t>(m.n));
  for (int pos : order) {
    const Request& r = (*m.reqs)[static_cast<std::size_t>(pos)];
    const auto& row =
        scores ? (*scores)[static_cast<std::size_t>(pos)] : m.cost[static_cast<std::size_t>(pos)];
    int best = -1;
    double best_score = kInf;
    for (int choice = 0; choice < m.node_count(); ++choice) {
      const int t = tier_of_choice(m, choice);
      if (m.cost[static_cast<std::size_t>(pos)][t] == kInf) continue;
      if (row[t] >= best_score) continue; // keeps first (tier, index) on ties
      if (st.fits(m, r, choice)) {
        best = choice;
        best_score = row[t];
      }
    }
    if (best < 0) return {};
    st.apply(m, r, best, +1.0);
    node_of[static_cast<std::size_t>(pos)] = ref_of_choice(m, best);
  }
  return node_of;
}

/// Deterministic first-improvement relocate + swap descent on the canonical
/// objective. Mutates node_of in place.
void local_search(const Model& m, std::vector<NodeRef>& node_of) {
  State st = State::fresh(m);
  for (int i = 0; i < m.n; ++i)
    st.apply(m, (*m.reqs)[static_cast<std::size_t>(i)],
             choice_of_ref(m, node_of[static_cast<std::size_t>(i)]), +1.0);

  constexpr double kGain = 1e-12;
  for (int pass = 0; pass < 200; ++pass) {
    bool improved = false;

    for (int i = 0; i < m.n; ++i) {
      const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
      const int from = choice_of_ref(m, node_of[static_cast<std::size_t>(i)]);
      const double c_from =
          m.cost[static_cast<std::size_t>(i)][tier_of_choice(m, from)];
      st.apply(m, r, from, -1.0);
      int best = from;
      double best_cost = c_from;
      for (int to = 0; to < m.node_count(); ++to) {
        if (to == from) continue;
        const double c_to = m.cost[static_cast<std::size_t>(i)][tier_of_choice(m, to)];
        if (c_to >= best_cost - kGain) continue;
        if (st.fits(m, r, to)) {
          best = to;
          best_cost = c_to;
        }
      }
      st.apply(m, r, best, +1.0);
      if (best != from) {
        node_of[static_cast<std::size_t>(i)] = ref_of_choice(m, best);
        improved = true;
      }
    }

    for (int i = 0; i < m.n; ++i) {
      for (int j = i + 1; j < m.n; ++j) {
        const int ni = choice_of_ref(m, node_of[static_cast<std::size_t>(i)]);
        const int nj = choice_of_ref(m, node_of[static_cast<std::size_t>(j)]);
        if (ni == nj) continue;
        const Request& ri = (*m.reqs)[static_cast<std::size_t>(i)];
        const Request& rj = (*m.reqs)[static_cast<std::size_t>(j)];
        const double before =
            m.cost[static_cast<std::size_t>(i)][tier_of_choice(m, ni)] +
            m.cost[static_cast<std::size_t>(j)][tier_of_choice(m, nj)];
        const double after =
            m.cost[static_cast<std::size_t>(i)][tier_of_choice(m, nj)] +
            m.cost[static_cast<std::size_t>(j)][tier_of_choice(m, ni)];
        if (!(after < before - kGain)) continue;
        st.apply(m, ri, ni, -1.0);
        st.apply(m, rj, nj, -1.0);
        if (st.fits(m, ri, nj) && st.fits(m, rj, ni)) {
          st.apply(m, ri, nj, +1.0);
          st.apply(m, rj, ni, +1.0);
          node_of[static_cast<std::size_t>(i)] = ref_of_choice(m, nj);
          node_of[static_cast<std::size_t>(j)] = ref_of_choice(m, ni);
          improved = true;
        } else {
          st.apply(m, ri, ni, +1.0);
          st.apply(m, rj, nj, +1.0);
        }
      }
    }

    if (!improved) break;
  }
}

// ---------------------------------------------------------------------------
// Tier-level local search. The objective depends only on each request's
// tier, never on the node within it, so moves are proposed on the tier
// vector; a candidate is kept when a placement simulation on the residuals
// of the current realization seats every moved request, and the winning
// move commits exactly the simulated placement, so the node map stays
// feasible by construction. In deep mode, moves the simulation rejects get
// a second chance through an exact repack of the affected tiers.
// ---------------------------------------------------------------------------

/// Exact packing of `members` onto one tier's bins by depth-first search:
/// items in (cpu desc, net desc, id) order; per item the candidate bins are
/// deduplicated by (eligibility class, residuals) and tried best-fit-first,
/// so the first descent reproduces best-fit-decreasing and backtracking
/// covers what the heuristic misses. Suffix-demand pruning cuts hopeless
/// branches; the node budget keeps the worst case bounded (exhaustion
/// counts as failure, which is conservative). Returns choices parallel to
/// members, empty on failure. Vehicles when `fog_tier` is false, else fog
/// servers.
std::vector<int> pack_tier(const Model& m, const std::vector<int>& members,
                           bool fog_tier, long budget) {
  const int bins = fog_tier ? m.fogs : m.vehicles;
  if (members.empty()) return {};
  std::vector<double> rc(static_cast<std::size_t>(bins),
                         fog_tier ? m.fog_cpu : m.veh_cpu);
  std::vector<double> rn(static_cast<std::size_t>(bins),
                         !fog_tier && m.wifi_enforced ? m.veh_net : kInf);
  std::vector<double> rs(static_cast<std::size_t>(bins),
                         fog_tier ? m.fog_sto : m.veh_sto);

  std::vector<int> slots(members.size());
  for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = static_cast<int>(s);
  std::sort(slots.begin(), slots.end(), [&](int a, int b) {
    const Request& ra = (*m.reqs)[static_cast<std::size_t>(members[static_cast<std::size_t>(a)])];
    const Request& rb = (*m.reqs)[static_cast<std::size_t>(members[static_cast<std::size_t>(b)])];
    if (ra.cpu_mhz != rb.cpu_mhz) return ra.cpu_mhz > rb.cpu_mhz;
    if (ra.net_mbps != rb.net_mbps) return ra.net_mbps > rb.net_mbps;
    return ra.id < rb.id;
  });

  // Remaining demand from slot s on, for the aggregate prune.
  std::vector<double> suf_cpu(slots.size() + 1, 0.0), suf_net(slots.size() + 1, 0.0),
      suf_sto(slots.size() + 1, 0.0);
  for (std::size_t s = slots.size(); s-- > 0;) {
    const Request& r =
        (*m.reqs)[static_cast<std::size_t>(members[static_cast<std::size_t>(slots[s])])];
    suf_cpu[s] = suf_cpu[s + 1] + r.cpu_mhz;
    suf_net[s] = suf_net[s + 1] + r.net_mbps;
    suf_sto[s] = suf_sto[s + 1] + r.storage_mb;
  }

  std::vector<int> choice(members.size(), -1);
  std::vector<int> cand;
  cand.reserve(static_cast<std::size_t>(bins));

  auto dfs = [&](auto&& self, std::size_t s, double tot_cpu, double tot_net,
                 double tot_sto) -> bool {
    if (s == slots.size()) return true;
    if (--budget <= 0) return false;
    if (suf_cpu[s] > tot_cpu || suf_sto[s] > tot_sto ||
        (!fog_tier && m.wifi_enforced && suf_net[s] > tot_net))
      return false;

    const int slot = slots[s];
    const Request& r =
        (*m.reqs)[static_cast<std::size_t>(members[static_cast<std::size_t>(slot)])];
    cand.clear();
    for (int b = 0; b < bins; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      if (!fog_tier && !m.vehicle_hosts(b, r.package)) continue;
      if (r.cpu_mhz > rc[bi] || r.net_mbps > rn[bi] || r.storage_mb > rs[bi])
        continue;
      bool duplicate = false;
      for (int kb : cand) {
        const auto ki = static_cast<std::size_t>(kb);
        if (rc[ki] == rc[bi] && rn[ki] == rn[bi] && rs[ki] == rs[bi] &&
            (fog_tier ||
             m.veh_class[ki] == m.veh_class[bi])) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) cand.push_back(b);
    }
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
      if (rc[static_cast<std::size_t>(a)] != rc[static_cast<std::size_t>(b)])
        return rc[static_cast<std::size_t>(a)] < rc[static_cast<std::size_t>(b)];
      return a < b;
    });
    // Iterate over a snapshot: `cand` is clobbered by recursion.
    const std::vector<int> local(cand);
    for (int b : local) {
      const auto bi = static_cast<std::size_t>(b);
      rc[bi] -= r.cpu_mhz;
      rs[bi] -= r.storage_mb;
      if (!fog_tier && m.wifi_enforced) rn[bi] -= r.net_mbps;
      choice[static_cast<std::size_t>(slot)] = b;
      if (self(self, s + 1, tot_cpu - r.cpu_mhz, tot_net - r.net_mbps,
               tot_sto - r.storage_mb))
        return true;
      rc[bi] += r.cpu_mhz;
      rs[bi] += r.storage_mb;
      if (!fog_tier && m.wifi_enforced) rn[bi] += r.net_mbps;
      choice[static_cast<std::size_t>(slot)] = -1;
      if (budget <= 0) return false;
    }
    return false;
  };

  double tot_cpu = 0.0, tot_net = 0.0, tot_sto = 0.0;
  for (int b = 0; b < bins; ++b) {
    tot_cpu += rc[static_cast<std::size_t>(b)];
    tot_net += rn[static_cast<std::size_t>(b)];
    tot_sto += rs[static_cast<std::size_t>(b)];
  }
  if (!dfs(dfs, 0, tot_cpu, tot_net, tot_sto)) return {};
  return choice;
}

/// Rebuilds a node map realizing the given tier vector, or returns false if
/// the packing search cannot realize it within budget (conservative).
bool realize_tiers(const Model& m, const std::vector<int>& tiers,
                   std::vector<NodeRef>& node_of, long budget) {
  std::vector<int> vf, ff;
  for (int i = 0; i < m.n; ++i) {
    if (tiers[static_cast<std::size_t>(i)] == 0) vf.push_back(i);
    if (tiers[static_cast<std::size_t>(i)] == 1) ff.push_back(i);
    if (tiers[static_cast<std::size_t>(i)] == 2 && !m.cloud) return false;
  }
  const std::vector<int> vchoice = pack_tier(m, vf, /*fog_tier=*/false, budget);
  if (vchoice.empty() && !vf.empty()) return false;
  const std::vector<int> fchoice = pack_tier(m, ff, /*fog_tier=*/true, budget);
  if (fchoice.empty() && !ff.empty()) return false;

  node_of.assign(static_cast<std::size_t>(m.n), NodeRef{Tier::Cloud, 0});
  for (std::size_t s = 0; s < vf.size(); ++s)
    node_of[static_cast<std::size_t>(vf[s])] =
        NodeRef{Tier::VehicularFog, vchoice[s]};
  for (std::size_t s = 0; s < ff.size(); ++s)
    node_of[static_cast<std::size_t>(ff[s])] = NodeRef{Tier::FixedFog, fchoice[s]};
  return true;
}

/// First-improvement descent on the tier vector. Two move classes, tried in
/// escalation order: singles and promote/demote pairs first; when those are
/// exhausted, two-for-one exchanges (promote two requests into a cheap tier,
/// demote one) and the reverse, which are the smallest moves that can cross
/// a packing ridge the pair neighborhood cannot. Which leaver makes room
/// decides an exchange's feasibility, not the leaver's demotion loss, so
/// exchanges are filtered by the placement simulation instead of trusting
/// the loss ranking. With `deep` set, a bounded repack fallback retries the
/// best simulation-rejected moves, reaching rearrangements that need more
/// than the movers relocated; deep mode is reserved for incumbent
/// candidates, the hot polish path stays simulation-only.
void tier_local_search(const Model& m, std::vector<NodeRef>& node_of,
                       bool deep = false) {
  if (m.n == 0 || node_of.empty()) return;
  std::vector<int> tiers(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i)
    tiers[static_cast<std::size_t>(i)] =
        tier_of_choice(m, choice_of_ref(m, node_of[static_cast<std::size_t>(i)]));

  constexpr double kGain = 1e-12;
  const auto cost = [&](int i, int t) {
    return m.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
  };

  struct Move {
    double delta;
    std::array<int, 3> req{-1, -1, -1};
    std::array<int, 3> to{0, 0, 0};
  };
  std::vector<Move> moves;
  std::vector<Move> rejected; // sim-rejected candidates for the deep fallback
  const auto sort_by_delta = [](std::vector<Move>& v) {
    std::sort(v.begin(), v.end(), [](const Move& a, const Move& b) {
      if (a.delta != b.delta) return a.delta < b.delta;
      if (a.req != b.req) return a.req < b.req;
      return a.to < b.to;
    });
  };
  const auto sort_moves = [&moves, &sort_by_delta]() { sort_by_delta(moves); };

  // Residuals of the current realization, rebuilt at the top of every pass.
  std::vector<std::array<double, 3>> vres;
  std::vector<std::array<double, 2>> fres;

  // Places the moved requests of `mv` on copies of the residuals after
  // refunding every mover's current demand; fills `where` and returns true
  // when a placement seats them all (depth-first over bins, so complete
  // for the moved set).
  std::array<NodeRef, 3> where;
  const auto simulate = [&](const Move& mv) {
    auto v = vres;
    auto f = fres;
    for (int s = 0; s < 3; ++s) {
      const int i = mv.req[static_cast<std::size_t>(s)];
      if (i < 0) continue;
      const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
      const NodeRef ref = node_of[static_cast<std::size_t>(i)];
      if (ref.tier == Tier::VehicularFog) {
        auto& b = v[static_cast<std::size_t>(ref.index)];
        b[0] += r.cpu_mhz;
        b[1] += r.net_mbps;
        b[2] += r.storage_mb;
      } else if (ref.tier == Tier::FixedFog) {
        auto& b = f[static_cast<std::size_t>(ref.index)];
        b[0] += r.cpu_mhz;
        b[1] += r.storage_mb;
      }
    }
    const auto place = [&](auto&& self, int s) -> bool {
      if (s == 3) return true;
      const int i = mv.req[static_cast<std::size_t>(s)];
      if (i < 0) return self(self, s + 1);
      const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
      const int t = mv.to[static_cast<std::size_t>(s)];
      if (t == 2) {
        where[static_cast<std::size_t>(s)] = NodeRef{Tier::Cloud, 0};
        return self(self, s + 1);
      }
      if (t == 0) {
        for (int b = 0; b < m.vehicles; ++b) {
          auto& res = v[static_cast<std::size_t>(b)];
          if (!m.vehicle_hosts(b, r.package) || r.cpu_mhz > res[0] ||
              (m.wifi_enforced && r.net_mbps > res[1]) ||
              r.storage_mb > res[2])
            continue;
          res[0] -= r.cpu_mhz;
          res[1] -= r.net_mbps;
          res[2] -= r.storage_mb;
          where[static_cast<std::size_t>(s)] = NodeRef{Tier::VehicularFog, b};
          if (self(self, s + 1)) return true;
          res[0] += r.cpu_mhz;
          res[1] += r.net_mbps;
          res[2] += r.storage_mb;
        }
        return false;
      }
      for (int b = 0; b < m.fogs; ++b) {
        auto& res = f[static_cast<std::size_t>(b)];
        if (r.cpu_mhz > res[0] || r.storage_mb > res[1]) continue;
        res[0] -= r.cpu_mhz;
        res[1] -= r.storage_mb;
        where[static_cast<std::size_t>(s)] = NodeRef{Tier::FixedFog, b};
        if (self(self, s + 1)) return true;
        res[0] += r.cpu_mhz;
        res[1] += r.storage_mb;
      }
      return false;
    };
    return place(place, 0);
  };
  const auto commit = [&](const Move& mv) {
    for (int s = 0; s < 3; ++s) {
      const int i = mv.req[static_cast<std::size_t>(s)];
      if (i < 0) continue;
      tiers[static_cast<std::size_t>(i)] = mv.to[static_cast<std::size_t>(s)];
      node_of[static_cast<std::size_t>(i)] = where[static_cast<std::size_t>(s)];
    }
  };

  for (int pass = 0; pass < 60; ++pass) {
    vres.assign(static_cast<std::size_t>(m.vehicles),
                {m.veh_cpu, m.veh_net, m.veh_sto});
    fres.assign(static_cast<std::size_t>(m.fogs), {m.fog_cpu, m.fog_sto});
    for (int i = 0; i < m.n; ++i) {
      const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
      const NodeRef ref = node_of[static_cast<std::size_t>(i)];
      if (ref.tier == Tier::VehicularFog) {
        auto& b = vres[static_cast<std::size_t>(ref.index)];
        b[0] -= r.cpu_mhz;
        b[1] -= r.net_mbps;
        b[2] -= r.storage_mb;
      } else if (ref.tier == Tier::FixedFog) {
        auto& b = fres[static_cast<std::size_t>(ref.index)];
        b[0] -= r.cpu_mhz;
        b[1] -= r.storage_mb;
      }
    }

    moves.clear();
    for (int i = 0; i < m.n; ++i) {
      const int cur = tiers[static_cast<std::size_t>(i)];
      for (int t = 0; t < 2; ++t) {
        if (t == cur || cost(i, t) == kInf) continue;
        const double d = cost(i, t) - cost(i, cur);
        if (d < -kGain) moves.push_back({d, {i, -1, -1}, {t, 0, 0}});
      }
    }
    for (int i = 0; i < m.n; ++i) {
      const int ci = tiers[static_cast<std::size_t>(i)];
      for (int ti = 0; ti < 2; ++ti) {
        if (ti == ci || cost(i, ti) == kInf) continue;
        const double di = cost(i, ti) - cost(i, ci);
        if (di >= 0) continue; // i must strictly gain
        for (int j = 0; j < m.n; ++j) {
          if (j == i) continue;
          const int cj = tiers[static_cast<std::size_t>(j)];
          if (cj != ti) continue; // j vacates the tier i enters
          for (int tj = 0; tj < 3; ++tj) {
            if (tj == cj || cost(j, tj) == kInf) continue;
            const double d = di + cost(j, tj) - cost(j, cj);
            if (d < -kGain) moves.push_back({d, {i, j, -1}, {ti, tj, 0}});
          }
        }
      }
    }
    sort_moves();
    rejected.clear();
    bool improved = false;
    for (const Move& mv : moves) {
      if (simulate(mv)) {
        commit(mv);
        improved = true;
        break;
      }
      if (deep) rejected.push_back(mv);
    }

    if (!improved) {
      moves.clear();
      for (int ti = 0; ti < 2; ++ti) {
        std::vector<std::pair<double, int>> entries; // (gain < 0, request)
        std::vector<std::pair<double, int>> leavers; // (loss, request*4 + tier)
        for (int i = 0; i < m.n; ++i) {
          const int ci = tiers[static_cast<std::size_t>(i)];
          if (ci != ti && cost(i, ti) != kInf) {
            const double di = cost(i, ti) - cost(i, ci);
            if (di < -kGain) entries.push_back({di, i});
          }
        }
        std::sort(entries.begin(), entries.end());
        if (entries.size() > 16) entries.resize(16);
        if (entries.empty()) continue;

        for (int j = 0; j < m.n; ++j) {
          if (tiers[static_cast<std::size_t>(j)] != ti) continue;
          for (int tj = 0; tj < 3; ++tj) {
            if (tj == ti || cost(j, tj) == kInf) continue;
            leavers.push_back({cost(j, tj) - cost(j, ti), j * 4 + tj});
          }
        }
        std::sort(leavers.begin(), leavers.end());

        for (std::size_t a = 0; a < entries.size(); ++a) {
          for (std::size_t b = a + 1; b < entries.size(); ++b) {
            const double din = entries[a].first + entries[b].first;
            const int ia = entries[a].second, ib = entries[b].second;
            for (const auto& [loss, packed_j] : leavers) {
              const int j = packed_j / 4, tj = packed_j % 4;
              if (j == ia || j == ib) continue;
              const double d = din + loss;
              if (d >= -kGain) break; // leavers sorted: none cheaper follows
              const Move mv{d, {ia, ib, j}, {ti, ti, tj}};
              if (simulate(mv))
                moves.push_back(mv);
              else if (deep)
                rejected.push_back(mv);
            }
          }
        }

        // One entry, two leavers: frees room for a single high-gain request.
        const std::size_t lv = std::min<std::size_t>(leavers.size(), 24);
        for (const auto& [di, i] : entries) {
          for (std::size_t a = 0; a < lv; ++a) {
            for (std::size_t b = a + 1; b < lv; ++b) {
              const int ja = leavers[a].second / 4, ta = leavers[a].second % 4;
              const int jb = leavers[b].second / 4, tb = leavers[b].second % 4;
              if (ja == i || jb == i || ja == jb) continue;
              const double d = di + leavers[a].first + leavers[b].first;
              if (d >= -kGain) continue;
              const Move mv{d, {i, ja, jb}, {ti, ta, tb}};
              if (simulate(mv))
                moves.push_back(mv);
              else if (deep)
                rejected.push_back(mv);
            }
          }
        }
      }
      sort_moves();
      if (!moves.empty() && simulate(moves.front())) {
        commit(moves.front());
        improved = true;
      }
    }

    if (!improved && deep && !rejected.empty()) {
      // Repack fallback: retry the best simulation-rejected moves with an
      // exact repack of both fog tiers, which may rearrange non-movers.
      sort_by_delta(rejected);
      std::vector<int> trial;
      std::vector<NodeRef> packed;
      int attempts = 0;
      for (const Move& mv : rejected) {
        if (attempts++ >= 64) break;
        trial = tiers;
        for (int s = 0; s < 3; ++s)
          if (mv.req[static_cast<std::size_t>(s)] >= 0)
            trial[static_cast<std::size_t>(mv.req[static_cast<std::size_t>(s)])] =
                mv.to[static_cast<std::size_t>(s)];
        if (!realize_tiers(m, trial, packed, 20000)) continue;
        tiers = trial;
        node_of = packed;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
}

// ---------------------------------------------------------------------------
// Lagrangian lower bound over per-node capacities.
//
// Relaxing every node knapsack (vehicle cpu/wifi/storage, fog server
// cpu/storage) with prices lambda >= 0 gives
//   L(lambda) = sum_r min_node [ c_r,tier(node) + lambda_node . u(r) ] - lambda . C
// which lower-bounds every feasible completion with remaining capacities C.
// Its maximum over lambda is the LP bound of the full per-node relaxation,
// so unlike a tier-aggregate bound it prices package fragmentation (rare
// packages pinned to a few vehicles) correctly. Prices are tuned once at
// the root by normalized subgradient ascent; the search then evaluates the
// fixed family {0, 0.5, 1, 1.5} x lambda* in O(1) per node via suffix sums
// over the branch order plus one running scalar, lambda* . C_residual.
// ---------------------------------------------------------------------------

/// Per-request tier availability during the search; starts as "cost is
/// finite" and shrinks under reduced-cost fixing.
using Allowed = std::vector<std::array<bool, 3>>;

Allowed initial_allowed(const Model& m) {
  Allowed allowed(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int t = 0; t < 3; ++t)
      allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] =
          m.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != kInf;
  return allowed;
}

/// Price layout: 3 entries per vehicle (cpu, net, storage), then 2 per fog
/// server (cpu, storage). The cloud pool is uncapacitated and carries none.
int price_dim(const Model& m) { return 3 * m.vehicles + 2 * m.fogs; }

/// Capacity per price entry; non-positive marks an absent constraint (WiFi
/// when the scenario does not enforce it) whose price is pinned at zero.
std::vector<double> price_caps(const Model& m) {
  std::vector<double> cap(static_cast<std::size_t>(price_dim(m)));
  for (int v = 0; v < m.vehicles; ++v) {
    cap[static_cast<std::size_t>(3 * v) + 0] = m.veh_cpu;
    cap[static_cast<std::size_t>(3 * v) + 1] = m.wifi_enforced ? m.veh_net : -1.0;
    cap[static_cast<std::size_t>(3 * v) + 2] = m.veh_sto;
  }
  for (int f = 0; f < m.fogs; ++f) {
    cap[static_cast<std::size_t>(3 * m.vehicles + 2 * f) + 0] = m.fog_cpu;
    cap[static_cast<std::size_t>(3 * m.vehicles + 2 * f) + 1] = m.fog_sto;
  }
  return cap;
}

/// lambda . u(r) for placing r on `choice` (0 for the cloud).
double priced_use(const Model& m, const std::vector<double>& p, const Request& r,
                  int choice) {
  if (choice < m.vehicles) {
    const auto b = static_cast<std::size_t>(3 * choice);
    return p[b] * r.cpu_mhz + p[b + 1] * r.net_mbps + p[b + 2] * r.storage_mb;
  }
  if (choice < m.vehicles + m.fogs) {
    const auto b =
        static_cast<std::size_t>(3 * m.vehicles + 2 * (choice - m.vehicles));
    return p[b] * r.cpu_mhz + p[b + 1] * r.storage_mb;
  }
  return 0.0;
}

/// Smallest priced score of request i over its eligible nodes (first such
/// node wins ties). Returns kInf when nothing is eligible.
double min_priced_score(const Model& m, const Allowed& allowed,
                        const std::vector<double>& p, int i, int* argmin) {
  const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
  const auto& c = m.cost[static_cast<std::size_t>(i)];
  const auto& arow = allowed[static_cast<std::size_t>(i)];
  double best = kInf;
  if (argmin) *argmin = -1;
  for (int choice = 0; choice < m.node_count(); ++choice) {
    const int t = tier_of_choice(m, choice);
    if (!arow[static_cast<std::size_t>(t)]) continue;
    if (choice < m.vehicles && !m.vehicle_hosts(choice, r.package)) continue;
    const double s = c[static_cast<std::size_t>(t)] + priced_use(m, p, r, choice);
    if (s < best) {
      best = s;
      if (argmin) *argmin = choice;
    }
  }
  return best;
}

double lagrangian_value(const Model& m, const Allowed& allowed,
                        const std::vector<double>& p,
                        const std::vector<double>& cap,
                        std::vector<double>* usage_out) {
  double total = 0.0;
  if (usage_out) usage_out->assign(p.size(), 0.0);
  for (int i = 0; i < m.n; ++i) {
    int choice = -1;
    total += min_priced_score(m, allowed, p, i, &choice);
    if (!usage_out || choice < 0) continue;
    const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
    if (choice < m.vehicles) {
      const auto b = static_cast<std::size_t>(3 * choice);
      (*usage_out)[b] += r.cpu_mhz;
      (*usage_out)[b + 1] += r.net_mbps;
      (*usage_out)[b + 2] += r.storage_mb;
    } else if (choice < m.vehicles + m.fogs) {
      const auto b =
          static_cast<std::size_t>(3 * m.vehicles + 2 * (choice - m.vehicles));
      (*usage_out)[b] += r.cpu_mhz;
      (*usage_out)[b + 1] += r.storage_mb;
    }
  }
  for (std::size_t k = 0; k < p.size(); ++k)
    if (cap[k] > 0) total -= p[k] * cap[k];
  return total;
}

std::vector<double> tune_prices(const Model& m, const Allowed& allowed,
                                const std::vector<double>& cap,
                                double upper_bound) {
  // Projected subgradient ascent with Polyak-style steps, run in a space
  // where every resource is scaled to unit capacity; without the scaling
  // the mixed units (MHz vs Mbps vs MB) make one step size fit nothing.
  //
  // Two phases. Phase 1 ascends in the tier-broadcast subspace (one shared
  // price per tier resource, the model's nodes being identical within a
  // tier), which converges in few iterations; phase 2 refines per node from
  // that start, which is what prices package fragmentation across vehicles.
  // The best vector seen anywhere is returned, so phase 2 never loses
  // phase 1's value.
  const std::size_t dim = cap.size();
  std::vector<double> p(dim, 0.0), best(p), usage, g(dim, 0.0);
  if (dim == 0) return best;

  double best_val = lagrangian_value(m, allowed, p, cap, nullptr);
  const auto consider = [&](double val) {
    if (val > best_val) {
      best_val = val;
      best = p;
      return true;
    }
    return false;
  };

  // Class of each price entry in the broadcast subspace: vehicle cpu/net/
  // storage = 0/1/2, fog cpu/storage = 3/4.
  std::vector<int> cls(dim);
  std::array<double, 5> class_cap{};
  for (std::size_t k = 0; k < dim; ++k) {
    const bool veh = k < static_cast<std::size_t>(3 * m.vehicles);
    cls[k] = veh ? static_cast<int>(k % 3) : 3 + static_cast<int>((k - 3 * m.vehicles) % 2);
    if (cap[k] > 0) class_cap[static_cast<std::size_t>(cls[k])] += cap[k];
  }

  double mu = 1.0;
  int since_improvement = 0;
  for (int it = 0; it < 200 && mu > 1e-5; ++it) {
    const double val = lagrangian_value(m, allowed, p, cap, &usage);
    if (consider(val))
      since_improvement = 0;
    else if (++since_improvement >= 6) {
      mu *= 0.5;
      since_improvement = 0;
    }
    std::array<double, 5> cg{};
    for (std::size_t k = 0; k < dim; ++k)
      if (cap[k] > 0)
        cg[static_cast<std::size_t>(cls[k])] += usage[k] - cap[k];
    double norm2 = 0.0;
    for (int c = 0; c < 5; ++c) {
      cg[static_cast<std::size_t>(c)] =
          class_cap[static_cast<std::size_t>(c)] > 0
              ? cg[static_cast<std::size_t>(c)] / class_cap[static_cast<std::size_t>(c)]
              : 0.0;
      norm2 += cg[static_cast<std::size_t>(c)] * cg[static_cast<std::size_t>(c)];
    }
    if (norm2 == 0.0) break;
    const double step = mu * std::max(upper_bound - val, 1e-9) / norm2;
    for (std::size_t k = 0; k < dim; ++k)
      if (cap[k] > 0)
        p[k] = std::max(0.0, p[k] + step * cg[static_cast<std::size_t>(cls[k])] /
                                        class_cap[static_cast<std::size_t>(cls[k])]);
  }

  p = best;
  mu = 0.5;
  since_improvement = 0;
  for (int it = 0; it < 250 && mu > 1e-5; ++it) {
    const double val = lagrangian_value(m, allowed, p, cap, &usage);
    if (consider(val))
      since_improvement = 0;
    else if (++since_improvement >= 6) {
      mu *= 0.5;
      since_improvement = 0;
    }
    double norm2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      g[k] = cap[k] > 0 ? (usage[k] - cap[k]) / cap[k] : 0.0;
      norm2 += g[k] * g[k];
    }
    if (norm2 == 0.0) break;
    const double step = mu * std::max(upper_bound - val, 1e-9) / norm2;
    for (std::size_t k = 0; k < dim; ++k)
      if (cap[k] > 0) p[k] = std::max(0.0, p[k] + step * g[k] / cap[k]);
  }
  return best;
}

constexpr int kLambdaSets = 4;

/// Root-tuned prices plus the suffix sums that make per-node bound
/// evaluation O(kLambdaSets). All price sets are scalings of one tuned
/// vector, so a single running scalar (star . residual capacity) positions
/// every set's bound.
struct BoundContext {
  std::vector<double> star;
  std::vector<double> cap;
  std::array<double, kLambdaSets> factor{0.0, 0.5, 1.0, 1.5};
  /// msum[l][d] = sum over branch positions d..n of the request's minimum
  /// priced score under factor[l] * star (root eligibility).
  std::array<std::vector<double>, kLambdaSets> msum;
  double root_capdot = 0.0;

  double bound_to_go(int depth, double capdot) const {
    double best = -kInf;
    for (int l = 0; l < kLambdaSets; ++l)
      best = std::max(
          best, msum[static_cast<std::size_t>(l)][static_cast<std::size_t>(depth)] -
                    factor[static_cast<std::size_t>(l)] * capdot);
    return best;
  }

  /// Root lower bound under one price set.
  double root_value(int l) const {
    return msum[static_cast<std::size_t>(l)][0] -
           factor[static_cast<std::size_t>(l)] * root_capdot;
  }
};

BoundContext make_bound_context(const Model& m, const Allowed& allowed,
                                double upper_bound) {
  BoundContext ctx;
  ctx.cap = price_caps(m);
  ctx.star = tune_prices(m, allowed, ctx.cap, upper_bound);
  ctx.root_capdot = 0.0;
  for (std::size_t k = 0; k < ctx.star.size(); ++k)
    if (ctx.cap[k] > 0) ctx.root_capdot += ctx.star[k] * ctx.cap[k];

  std::vector<double> scaled(ctx.star.size());
  for (int l = 0; l < kLambdaSets; ++l) {
    const double f = ctx.factor[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k] = f * ctx.star[k];
    auto& suffix = ctx.msum[static_cast<std::size_t>(l)];
    suffix.assign(static_cast<std::size_t>(m.n) + 1, 0.0);
    for (int d = m.n - 1; d >= 0; --d) {
      const int pos = m.order[static_cast<std::size_t>(d)];
      suffix[static_cast<std::size_t>(d)] =
          suffix[static_cast<std::size_t>(d) + 1] +
          min_priced_score(m, allowed, scaled, pos, nullptr);
    }
  }
  return ctx;
}

/// Removes (request, tier) pairs no optimal assignment can use: if even the
/// root bound plus the pair's best-response penalty exceeds the incumbent,
/// every completion through that pair costs more than the incumbent. Returns
/// the number of pairs newly excluded.
int reduced_cost_fixing(const Model& m, const BoundContext& ctx,
                        double upper_bound, Allowed& allowed) {
  const double margin = 1e-9 * std::max(1.0, std::abs(upper_bound));
  int fixed = 0;
  std::vector<double> scaled(ctx.star.size());
  for (int l = 0; l < kLambdaSets; ++l) {
    const double f = ctx.factor[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k] = f * ctx.star[k];
    const double root_val = ctx.root_value(l);
    for (int i = 0; i < m.n; ++i) {
      auto& row = allowed[static_cast<std::size_t>(i)];
      const Request& r = (*m.reqs)[static_cast<std::size_t>(i)];
      const auto& c = m.cost[static_cast<std::size_t>(i)];
      // Per-tier minimum priced score, then the cheapest overall.
      std::array<double, 3> score{kInf, kInf, kInf};
      for (int choice = 0; choice < m.node_count(); ++choice) {
        const int t = tier_of_choice(m, choice);
        if (!row[static_cast<std::size_t>(t)]) continue;
        if (choice < m.vehicles && !m.vehicle_hosts(choice, r.package)) continue;
        score[static_cast<std::size_t>(t)] =
            std::min(score[static_cast<std::size_t>(t)],
                     c[static_cast<std::size_t>(t)] + priced_use(m, scaled, r, choice));
      }
      const double best =
          std::min(score[0], std::min(score[1], score[2]));
      for (int t = 0; t < 3; ++t) {
        if (!row[static_cast<std::size_t>(t)]) continue;
        if (root_val + (score[static_cast<std::size_t>(t)] - best) >
            upper_bound + margin) {
          row[static_cast<std::size_t>(t)] = false;
          ++fixed;
        }
      }
    }
  }
  return fixed;
}

/// Depth-first dive choosing, at every level, the feasible node with the
/// smallest cost-so-far + bound-to-go. Starts from a partial state at
/// `from_depth` and fills path[from_depth..n-1]; returns false on a dead end
/// (possible only without the cloud tier). st and capdot are advanced.
bool dive_from(const Model& m, const BoundContext& ctx, const Allowed& allowed,
               int from_depth, State& st, double& capdot,
               std::vector<std::int16_t>& path) {
  for (int d = from_depth; d < m.n; ++d) {
    const int pos = m.order[static_cast<std::size_t>(d)];
    const Request& r = (*m.reqs)[static_cast<std::size_t>(pos)];
    const auto& crow = m.cost[static_cast<std::size_t>(pos)];
    const auto& arow = allowed[static_cast<std::size_t>(pos)];
    int best_choice = -1;
    double best_bound = kInf;
    double best_use = 0.0;
    for (int choice = 0; choice < m.node_count(); ++choice) {
      const int t = tier_of_choice(m, choice);
      if (!arow[static_cast<std::size_t>(t)] || !st.fits(m, r, choice)) continue;
      const double use = priced_use(m, ctx.star, r, choice);
      const double b = crow[t] + ctx.bound_to_go(d + 1, capdot - use);
      if (b < best_bound) { // strict: first (tier, index) wins ties
        best_bound = b;
        best_choice = choice;
        best_use = use;
      }
    }
    if (best_choice < 0) return false;
    st.apply(m, r, best_choice, +1.0);
    capdot -= best_use;
    path[static_cast<std::size_t>(d)] = static_cast<std::int16_t>(best_choice);
  }
  return true;
}

std::vector<NodeRef> map_from_path(const Model& m,
                                   const std::vector<std::int16_t>& path) {
  std::vector<NodeRef> node_of(static_cast<std::size_t>(m.n));
  for (int d = 0; d < m.n; ++d)
    node_of[static_cast<std::size_t>(m.order[static_cast<std::size_t>(d)])] =
        ref_of_choice(m, path[static_cast<std::size_t>(d)]);
  return node_of;
}

// ---------------------------------------------------------------------------
// Best-first branch-and-bound.
// ---------------------------------------------------------------------------

struct BBNode {
  std::uint32_t parent = 0;
  std::int16_t choice = -1; // node chosen for the request at parent depth
  std::uint16_t depth = 0;
};

struct HeapEntry {
  double bound;
  std::uint32_t idx; // arena index; doubles as creation sequence number
};

struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.bound != b.bound) return a.bound > b.bound; // min-heap
    return a.idx > b.idx;
  }
};

struct SearchResult {
  std::vector<NodeRef> node_of;
  double objective = kInf;
  bool proved = false;
  double gap = 0.0;
  std::uint64_t explored = 0;
};

SearchResult branch_and_bound(const Model& m, std::vector<NodeRef> incumbent_map,
                              const SolveLimits& limits) {
  SearchResult res;
  res.node_of = std::move(incumbent_map);
  res.objective = (m.n > 0 && res.node_of.empty())
                      ? kInf
                      : canonical_objective(m, res.node_of);

  if (m.n == 0) {
    res.proved = true;
    return res;
  }

  Allowed allowed = initial_allowed(m);
  BoundContext ctx =
      make_bound_context(m, allowed, res.objective == kInf ? 1e6 : res.objective);

  std::vector<std::int16_t> path(static_cast<std::size_t>(m.n), -1);

  // Bound-guided dive: at each depth take the child with the smallest
  // optimistic completion. Usually lands much closer to the optimum than
  // the myopic constructions and tightens pruning from the start.
  {
    State dst = State::fresh(m);
    double dcap = ctx.root_capdot;
    if (dive_from(m, ctx, allowed, 0, dst, dcap, path)) {
      std::vector<NodeRef> dived = map_from_path(m, path);
      local_search(m, dived);
      tier_local_search(m, dived, /*deep=*/true);
      const double obj = canonical_objective(m, dived);
      if (obj < res.objective) {
        res.objective = obj;
        res.node_of = std::move(dived);
      }
    }
  }

  // Reduced-cost fixing at the root: drop (request, tier) pairs the bound
  // already prices above the incumbent, then retune the prices on the
  // shrunken candidate set. A few rounds typically collapse everything but
  // the genuinely contested band of requests.
  if (res.objective != kInf) {
    for (int round = 0; round < 4; ++round) {
      if (reduced_cost_fixing(m, ctx, res.objective, allowed) == 0) break;
      ctx = make_bound_context(m, allowed, res.objective);
    }
  }

  auto prune_eps = [&]() {
    return 1e-9 * std::max(1.0, std::abs(res.objective));
  };

  std::vector<BBNode> arena;
  arena.reserve(1 << 16);
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;

  arena.push_back({0, -1, 0});
  heap.push({ctx.bound_to_go(0, ctx.root_capdot), 0});

  std::vector<int> kept;
  kept.reserve(static_cast<std::size_t>(m.node_count()));
  State st = State::fresh(m);
  const auto t0 = std::chrono::steady_clock::now();
  bool out_of_budget = false;
  double best_outstanding = kInf;

  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    if (top.bound >= res.objective + prune_eps()) break; // bound-proved done
    if (arena.size() >= limits.max_nodes) {
      out_of_budget = true;
      best_outstanding = top.bound;
      break;
    }
    if (limits.time_limit_s > 0 && (res.explored & 511u) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      if (dt.count() > limits.time_limit_s) {
        out_of_budget = true;
        best_outstanding = top.bound;
        break;
      }
    }
    heap.pop();
    res.explored++;

    // Replay the path to rebuild residuals and the partial cost.
    st.reset(m);
    double capdot = ctx.root_capdot;
    double g = 0.0;
    {
      std::uint32_t walk = top.idx;
      while (arena[walk].depth > 0) {
        const BBNode& node = arena[walk];
        path[node.depth - 1u] = node.choice;
        walk = node.parent;
      }
      for (int d = 0; d < arena[top.idx].depth; ++d) {
        const int pos = m.order[static_cast<std::size_t>(d)];
        const Request& r = (*m.reqs)[static_cast<std::size_t>(pos)];
        const int choice = path[static_cast<std::size_t>(d)];
        st.apply(m, r, choice, +1.0);
        g += m.cost[static_cast<std::size_t>(pos)][tier_of_choice(m, choice)];
        capdot -= priced_use(m, ctx.star, r, choice);
      }
    }

    const int depth = arena[top.idx].depth;

    // Periodic plunge: finish the frontier node greedily along the bound
    // and offer the leaf as an incumbent. Best-first alone reaches leaves
    // rarely on wide plateaus; this keeps the incumbent improving even when
    // the proof is slow.
    if (res.explored % 1024 == 1 && depth + 1 < m.n) {
      State pst = st;
      double pcap = capdot;
      if (dive_from(m, ctx, allowed, depth, pst, pcap, path)) {
        std::vector<NodeRef> full = map_from_path(m, path);
        local_search(m, full);
        // The tier walk costs more than the relocate/swap polish, so spend
        // it only on leaves already near or below the incumbent, and the
        // repack fallback only on ones that actually beat it.
        if (canonical_objective(m, full) <
            res.objective + 0.02 * std::max(1.0, std::abs(res.objective)))
          tier_local_search(m, full);
        if (canonical_objective(m, full) < res.objective)
          tier_local_search(m, full, /*deep=*/true);
        const double obj = canonical_objective(m, full);
        if (obj < res.objective) {
          res.objective = obj;
          res.node_of = std::move(full);
        }
      }
    }
    const int pos = m.order[static_cast<std::size_t>(depth)];
    const Request& r = (*m.reqs)[static_cast<std::size_t>(pos)];
    const auto& crow = m.cost[static_cast<std::size_t>(pos)];

    // Candidate children: one representative per interchangeable node
    // group (same package class, bitwise-equal residuals), in (cost, tier,
    // index) order. Vehicle cost < fog < cloud ordering is by value; within
    // a tier the cost is constant so index breaks ties.
    kept.clear();
    const auto& arow = allowed[static_cast<std::size_t>(pos)];
    for (int v = 0; v < m.vehicles; ++v) {
      if (!arow[0]) break;
      if (!st.fits(m, r, v)) continue;
      bool duplicate = false;
      for (int kv : kept) {
        if (m.veh_class[static_cast<std::size_t>(kv)] ==
                m.veh_class[static_cast<std::size_t>(v)] &&
            st.vcpu[static_cast<std::size_t>(kv)] ==
                st.vcpu[static_cast<std::size_t>(v)] &&
            st.vnet[static_cast<std::size_t>(kv)] ==
                st.vnet[static_cast<std::size_t>(v)] &&
            st.vsto[static_cast<std::size_t>(kv)] ==
                st.vsto[static_cast<std::size_t>(v)]) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) kept.push_back(v);
    }
    const std::size_t first_fog = kept.size();
    for (int f = 0; f < m.fogs; ++f) {
      if (!arow[1]) break;
      if (!st.fits(m, r, m.vehicles + f)) continue;
      bool duplicate = false;
      for (std::size_t ki = first_fog; ki < kept.size(); ++ki) {
        const auto kf = static_cast<std::size_t>(kept[ki] - m.vehicles);
        if (st.fcpu[kf] == st.fcpu[static_cast<std::size_t>(f)] &&
            st.fsto[kf] == st.fsto[static_cast<std::size_t>(f)]) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) kept.push_back(m.vehicles + f);
    }
    if (m.cloud && arow[2]) kept.push_back(m.vehicles + m.fogs);

    std::stable_sort(kept.begin(), kept.end(), [&](int a, int b) {
      const double ca = crow[tier_of_choice(m, a)];
      const double cb = crow[tier_of_choice(m, b)];
      if (ca != cb) return ca < cb;
      return a < b; // tier then index: choice ids already order that way
    });

    for (int choice : kept) {
      const int t = tier_of_choice(m, choice);
      const double g_child = g + crow[t];

      if (depth + 1 == m.n) { // complete assignment: evaluate, don't enqueue
        if (g_child >= res.objective) continue;
        path[static_cast<std::size_t>(depth)] = static_cast<std::int16_t>(choice);
        std::vector<NodeRef> full = map_from_path(m, path);
        const double obj = canonical_objective(m, full);
        if (obj < res.objective) {
          res.objective = obj;
          res.node_of = std::move(full);
        }
        continue;
      }

      const double bound =
          g_child + ctx.bound_to_go(depth + 1,
                                    capdot - priced_use(m, ctx.star, r, choice));
      if (bound >= res.objective + prune_eps()) continue;
      arena.push_back({top.idx, static_cast<std::int16_t>(choice),
                       static_cast<std::uint16_t>(depth + 1)});
      heap.push({bound, static_cast<std::uint32_t>(arena.size() - 1)});
    }
  }

  if (res.objective == kInf)
    throw Error(ErrorCode::Infeasible,
                out_of_budget
                    ? "no feasible assignment found within the solve limits"
                    : "no feasible assignment exists");

  if (out_of_budget) {
    res.proved = false;
    res.gap = std::max(0.0, res.objective - best_outstanding);
  } else {
    res.proved = true;
    res.gap = 0.0;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Report assembly.
// ---------------------------------------------------------------------------

SolveReport make_report(const Model& m, const std::vector<Request>& requests,
                        const Scenario& scenario, const Deployment& deployment,
                        const Catalog& catalog, std::vector<NodeRef> node_of,
                        bool proved, double gap, std::uint64_t explored) {
  SolveReport rep;
  rep.assignment.node_of = std::move(node_of);
  rep.objective_w = canonical_objective(m, rep.assignment.node_of);
  rep.power = total_power(rep.assignment, requests, scenario, deployment, catalog);
  rep.proved_optimal = proved;
  rep.gap_w = gap;
  rep.explored_nodes = explored;

  rep.node_uses.resize(static_cast<std::size_t>(m.node_count()));
  for (int choice = 0; choice < m.node_count(); ++choice)
    rep.node_uses[static_cast<std::size_t>(choice)].node = ref_of_choice(m, choice);
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const NodeRef ref = rep.assignment.node_of[i];
    rep.tier_request_counts[static_cast<int>(ref.tier)]++;
    auto& use = rep.node_uses[static_cast<std::size_t>(choice_of_ref(m, ref))];
    use.request_count++;
    use.cpu_mhz += requests[i].cpu_mhz;
    use.net_mbps += requests[i].net_mbps;
    use.storage_mb += requests[i].storage_mb;
  }
  for (auto& use : rep.node_uses) {
    const double cap = use.node.tier == Tier::VehicularFog
                           ? m.veh_cpu
                           : (use.node.tier == Tier::FixedFog
                                  ? m.fog_cpu
                                  : catalog.cloud_server.cpu_capacity_mhz);
    use.cpu_utilization = cap > 0 ? use.cpu_mhz / cap : 0.0;
  }
  return rep;
}

} // namespace

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

SolveReport greedy_baseline(const std::vector<Request>& requests,
                            const Scenario& scenario,
                            const Deployment& deployment,
                            const Catalog& catalog) {
  const Model m = build_model(requests, scenario, deployment, catalog);
  auto node_of = construct(m, m.order, nullptr);
  if (node_of.empty() && m.n > 0)
    throw Error(ErrorCode::Infeasible, "greedy placement ran out of capacity");
  return make_report(m, requests, scenario, deployment, catalog,
                     std::move(node_of), /*proved=*/m.n == 0, /*gap=*/0.0,
                     /*explored=*/0);
}

SolveReport solve_exact(const std::vector<Request>& requests,
                        const Scenario& scenario, const Deployment& deployment,
                        const Catalog& catalog, const SolveLimits& limits,
                        const Assignment* warm_start) {
  const Model m = build_model(requests, scenario, deployment, catalog);

  // Multi-start incumbent: plain greedy, a network-heavy variant, and a
  // capacity-price-guided pass, each polished by local search.
  std::vector<NodeRef> incumbent;
  double incumbent_obj = kInf;
  auto offer = [&](std::vector<NodeRef> cand) {
    if (cand.empty() && m.n > 0) return;
    local_search(m, cand);
    tier_local_search(m, cand, /*deep=*/true);
    const double obj = canonical_objective(m, cand);
    if (obj < incumbent_obj) {
      incumbent_obj = obj;
      incumbent = std::move(cand);
    }
  };

  if (warm_start) {
    std::vector<NodeRef> seed = warm_start->node_of;
    if (assignment_feasible(m, seed)) offer(std::move(seed));
  }

  offer(construct(m, m.order, nullptr));

  {
    std::vector<int> by_net(m.order);
    std::stable_sort(by_net.begin(), by_net.end(), [&](int a, int b) {
      if (requests[static_cast<std::size_t>(a)].net_mbps !=
          requests[static_cast<std::size_t>(b)].net_mbps)
        return requests[static_cast<std::size_t>(a)].net_mbps >
               requests[static_cast<std::size_t>(b)].net_mbps;
      return requests[static_cast<std::size_t>(a)].id <
             requests[static_cast<std::size_t>(b)].id;
    });
    offer(construct(m, by_net, nullptr));
  }

  {
    const Allowed allowed = initial_allowed(m);
    const std::vector<double> cap = price_caps(m);
    const std::vector<double> prices = tune_prices(
        m, allowed, cap, incumbent_obj == kInf ? 1e6 : incumbent_obj);
    std::vector<std::array<double, 3>> scores(static_cast<std::size_t>(m.n));
    for (int i = 0; i < m.n; ++i) {
      const Request& r = requests[static_cast<std::size_t>(i)];
      const auto& c = m.cost[static_cast<std::size_t>(i)];
      auto& row = scores[static_cast<std::size_t>(i)];
      row = {kInf, kInf, c[2]};
      for (int choice = 0; choice < m.node_count() - (m.cloud ? 1 : 0); ++choice) {
        const int t = tier_of_choice(m, choice);
        if (c[static_cast<std::size_t>(t)] == kInf) continue;
        if (choice < m.vehicles && !m.vehicle_hosts(choice, r.package)) continue;
        row[static_cast<std::size_t>(t)] =
            std::min(row[static_cast<std::size_t>(t)],
                     c[static_cast<std::size_t>(t)] + priced_use(m, prices, r, choice));
      }
    }
    offer(construct(m, m.order, &scores));
  }

  SearchResult sr = branch_and_bound(m, std::move(incumbent), limits);
  return make_report(m, requests, scenario, deployment, catalog,
                     std::move(sr.node_of), sr.proved, sr.gap, sr.explored);
}

SolveReport brute_force_oracle(const std::vector<Request>& requests,
                               const Scenario& scenario,
                               const Deployment& deployment,
                               const Catalog& catalog) {
  const Model m = build_model(requests, scenario, deployment, catalog);
  if (m.n > 8 || m.node_count() > 6)
    throw Error(ErrorCode::InstanceTooLarge,
                "oracle handles at most 8 requests over 6 nodes, got " +
                    std::to_string(m.n) + " over " +
                    std::to_string(m.node_count()));

  std::vector<NodeRef> best;
  double best_obj = kInf;
  std::vector<NodeRef> current(static_cast<std::size_t>(m.n));
  State st = State::fresh(m);

  // Requests in id order, candidates in (tier, index) order; keeps the
  // first-found among equal-objective assignments.
  auto dfs = [&](auto&& self, int i) -> void {
    if (i == m.n) {
      const double obj = canonical_objective(m, current);
      if (obj < best_obj) {
        best_obj = obj;
        best = current;
      }
      return;
    }
    const Request& r = requests[static_cast<std::size_t>(i)];
    for (int choice = 0; choice < m.node_count(); ++choice) {
      if (m.cost[static_cast<std::size_t>(i)][tier_of_choice(m, choice)] == kInf)
        continue;
      if (!st.fits(m, r, choice)) continue;
      st.apply(m, r, choice, +1.0);
      current[static_cast<std::size_t>(i)] = ref_of_choice(m, choice);
      self(self, i + 1);
      st.apply(m, r, choice, -1.0);
    }
  };
  dfs(dfs, 0);

  if (best_obj == kInf && m.n > 0)
    throw Error(ErrorCode::Infeasible, "no feasible assignment exists");
  if (m.n == 0) best.clear();
  return make_report(m, requests, scenario, deployment, catalog, std::move(best),
                     /*proved=*/true, /*gap=*/0.0, /*explored=*/0);
}

} // namespace fogmatch
