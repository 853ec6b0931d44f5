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

#include "fogmatch/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <thread>

#include "fogmatch/deployment.hpp"
#include "fogmatch/errors.hpp"
#include "fogmatch/serialize.hpp"
#include "fogmatch/validator.hpp"

namespace fogmatch {

const char* to_string(DeploymentPolicy policy) {
  switch (policy) {
  case DeploymentPolicy::SameType: return "same_type";
  case DeploymentPolicy::RandomType: return "random_type";
  }
  return "?";
}

std::optional<DeploymentPolicy> policy_from_string(std::string_view name) {
  if (name == "same_type") return DeploymentPolicy::SameType;
  if (name == "random_type") return DeploymentPolicy::RandomType;
  return std::nullopt;
}

SweepConfig::SweepConfig() : catalog(default_catalog()) {
  for (ScenarioKind kind :
       {ScenarioKind::Cloud, ScenarioKind::CloudFog, ScenarioKind::CloudFogVF1,
        ScenarioKind::CloudFogVF2, ScenarioKind::CloudFogVF3})
    scenarios.push_back(Scenario::preset(kind));
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
}

std::string scenario_label(const Scenario& s) {
  if (s.kind != ScenarioKind::Custom) return to_string(s.kind);
  return "custom_v" + std::to_string(s.vehicle_count) + "_f" +
         std::to_string(s.fog_server_count);
}

namespace {

SweepConfig validated(SweepConfig cfg) {
  if (cfg.scenarios.empty())
    throw Error(ErrorCode::ConfigError, "sweep: empty scenario list");
  if (cfg.policies.empty())
    throw Error(ErrorCode::ConfigError, "sweep: empty policy list");
  for (std::size_t i = 0; i < cfg.policies.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.policies.size(); ++j)
      if (cfg.policies[i] == cfg.policies[j])
        throw Error(ErrorCode::ConfigError, "sweep: duplicate policy");
  validate_workload_config(cfg.workload);
  if (cfg.k_lo < 1 || cfg.k_lo > cfg.k_hi ||
      cfg.k_hi > cfg.workload.package_pool)
    throw Error(ErrorCode::KOutOfRange,
                "sweep: k range " + std::to_string(cfg.k_lo) + ".." +
                    std::to_string(cfg.k_hi) + " outside 1.." +
                    std::to_string(cfg.workload.package_pool));
  if (cfg.seeds.empty())
    throw Error(ErrorCode::ConfigError, "sweep: empty seed list");
  for (Scenario& s : cfg.scenarios) s = validate_scenario(s, cfg.catalog);
  return cfg;
}

struct Grid {
  int n_scenarios, n_policies, n_k, n_seeds, k_lo;
  int index(int si, int pi, int ki, int sp) const {
    return ((si * n_policies + pi) * n_k + ki) * n_seeds + sp;
  }
};

Deployment make_deployment(DeploymentPolicy policy, int vehicles, int k,
                           std::uint64_t seed, int pool) {
  return policy == DeploymentPolicy::SameType
             ? same_type_deployment(vehicles, k, pool)
             : random_type_deployment(vehicles, k, seed, pool);
}

void fill_cell(CellResult& cell, const SolveReport& rep) {
  cell.total_w = rep.power.total_w;
  cell.power = rep.power;
  cell.tier_requests = rep.tier_request_counts;
  cell.proved_optimal = rep.proved_optimal;
  cell.gap_w = rep.gap_w;
  cell.explored_nodes = rep.explored_nodes;
  cell.assignment = rep.assignment;

  double util_sum = 0.0, util_min = 0.0;
  int vehicles = 0;
  for (const NodeUse& use : rep.node_uses) {
    if (use.node.tier != Tier::VehicularFog) continue;
    util_min = vehicles == 0 ? use.cpu_utilization
                             : std::min(util_min, use.cpu_utilization);
    util_sum += use.cpu_utilization;
    ++vehicles;
  }
  cell.mean_vehicle_cpu_util = vehicles > 0 ? util_sum / vehicles : 0.0;
  cell.min_vehicle_cpu_util = util_min;
}

/// Solves every cell of one seed, in scenario-major order so each cell can
/// warm-start from the previous k (same scenario) and from the previous
/// scenario at the same (policy, k). Both chains keep the per-seed power
/// monotone in k and along the scenario list by construction.
void run_seed(const SweepConfig& cfg, const Grid& g, int sp,
              std::vector<CellResult>& cells) {
  const std::vector<Request> requests =
      generate_requests(cfg.seeds[static_cast<std::size_t>(sp)], cfg.workload);
  const int pool = cfg.workload.package_pool;

  for (int si = 0; si < g.n_scenarios; ++si) {
    const Scenario& sc = cfg.scenarios[static_cast<std::size_t>(si)];
    const int vehicles = sc.vehicle_count;
    for (int pi = 0; pi < g.n_policies; ++pi) {
      for (int ki = 0; ki < g.n_k; ++ki) {
        const int k = g.k_lo + ki;
        CellResult& cell = cells[static_cast<std::size_t>(g.index(si, pi, ki, sp))];
        cell.scenario = si;
        cell.policy = cfg.policies[static_cast<std::size_t>(pi)];
        cell.k = k;
        cell.seed = cfg.seeds[static_cast<std::size_t>(sp)];

        auto replicate = [&](const CellResult& from) {
          const int my_si = cell.scenario;
          const auto my_policy = cell.policy;
          const int my_k = cell.k;
          cell = from;
          cell.scenario = my_si;
          cell.policy = my_policy;
          cell.k = my_k;
        };

        // Scenarios without vehicles do not depend on the deployment at
        // all; solve once and replicate.
        if (vehicles == 0 && (pi > 0 || ki > 0)) {
          replicate(cells[static_cast<std::size_t>(g.index(si, 0, 0, sp))]);
          continue;
        }

        const Deployment dep =
            make_deployment(cell.policy, vehicles, k, cell.seed, pool);

        // Identical deployments give identical solves; in particular at
        // k = S every policy preloads the full pool.
        bool copied = false;
        for (int pj = 0; pj < pi && !copied; ++pj) {
          const CellResult& other =
              cells[static_cast<std::size_t>(g.index(si, pj, ki, sp))];
          if (!other.error.empty()) continue;
          const Deployment other_dep = make_deployment(
              cfg.policies[static_cast<std::size_t>(pj)], vehicles, k,
              cell.seed, pool);
          if (other_dep.vehicle_packages == dep.vehicle_packages) {
            replicate(other);
            copied = true;
          }
        }
        if (copied) continue;

        const CellResult* prev_k =
            ki > 0 ? &cells[static_cast<std::size_t>(g.index(si, pi, ki - 1, sp))]
                   : nullptr;
        if (prev_k && !prev_k->error.empty()) prev_k = nullptr;
        const CellResult* prev_sc = nullptr;
        if (si > 0) {
          const Scenario& prev =
              cfg.scenarios[static_cast<std::size_t>(si - 1)];
          prev_sc = prev.vehicle_count == 0
                        ? &cells[static_cast<std::size_t>(g.index(si - 1, 0, 0, sp))]
                        : &cells[static_cast<std::size_t>(g.index(si - 1, pi, ki, sp))];
          if (!prev_sc->error.empty()) prev_sc = nullptr;
        }
        const CellResult* warm_cell =
            prev_k && prev_sc
                ? (prev_k->total_w <= prev_sc->total_w ? prev_k : prev_sc)
                : (prev_k ? prev_k : prev_sc);

        try {
          const SolveReport rep =
              solve_exact(requests, sc, dep, cfg.catalog, cfg.limits,
                          warm_cell ? &warm_cell->assignment : nullptr);
          fill_cell(cell, rep);
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
      }
    }
  }
}

int find_scenario(const SweepConfig& cfg, ScenarioKind kind) {
  for (std::size_t i = 0; i < cfg.scenarios.size(); ++i)
    if (cfg.scenarios[i].kind == kind) return static_cast<int>(i);
  return -1;
}

void add_power(PowerBreakdown& acc, const PowerBreakdown& p) {
  for (auto [dst, src] : {std::pair{&acc.vf, &p.vf},
                          std::pair{&acc.fixed_fog, &p.fixed_fog},
                          std::pair{&acc.cloud, &p.cloud}}) {
    dst->processing_w += src->processing_w;
    dst->networking_w += src->networking_w;
    dst->storage_w += src->storage_w;
  }
  acc.total_w += p.total_w;
}

void scale_power(PowerBreakdown& acc, double f) {
  for (TierPower* t : {&acc.vf, &acc.fixed_fog, &acc.cloud}) {
    t->processing_w *= f;
    t->networking_w *= f;
    t->storage_w *= f;
  }
  acc.total_w *= f;
}

std::vector<MeanRow> aggregate(const SweepConfig& cfg, const Grid& g,
                               const std::vector<CellResult>& cells) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int cloud_si = find_scenario(cfg, ScenarioKind::Cloud);
  const int fog_si = find_scenario(cfg, ScenarioKind::CloudFog);

  std::vector<MeanRow> means;
  means.reserve(static_cast<std::size_t>(g.n_scenarios) *
                static_cast<std::size_t>(g.n_policies) *
                static_cast<std::size_t>(g.n_k));
  for (int si = 0; si < g.n_scenarios; ++si) {
    for (int pi = 0; pi < g.n_policies; ++pi) {
      for (int ki = 0; ki < g.n_k; ++ki) {
        MeanRow row;
        row.scenario = si;
        row.policy = cfg.policies[static_cast<std::size_t>(pi)];
        row.k = g.k_lo + ki;

        double sav_cloud = 0.0, sav_fog = 0.0;
        int n_cloud = 0, n_fog = 0;
        for (int sp = 0; sp < g.n_seeds; ++sp) {
          const CellResult& cell =
              cells[static_cast<std::size_t>(g.index(si, pi, ki, sp))];
          if (!cell.error.empty()) continue;
          ++row.seeds_ok;
          row.mean_total_w += cell.total_w;
          add_power(row.mean_power, cell.power);
          for (int t = 0; t < kTierCount; ++t)
            row.mean_tier_requests[static_cast<std::size_t>(t)] +=
                cell.tier_requests[static_cast<std::size_t>(t)];
          row.mean_vehicle_cpu_util += cell.mean_vehicle_cpu_util;

          // Savings against the same seed's baseline cell (the baseline
          // grid is replicated across policy/k, so the same slot applies).
          for (auto [bsi, sum, n] : {std::tuple{cloud_si, &sav_cloud, &n_cloud},
                                     std::tuple{fog_si, &sav_fog, &n_fog}}) {
            if (bsi < 0) continue;
            const CellResult& base =
                cells[static_cast<std::size_t>(g.index(bsi, pi, ki, sp))];
            if (!base.error.empty() || base.total_w <= 0) continue;
            *sum += (base.total_w - cell.total_w) / base.total_w;
            ++*n;
          }
        }
        if (row.seeds_ok > 0) {
          const double inv = 1.0 / row.seeds_ok;
          row.mean_total_w *= inv;
          scale_power(row.mean_power, inv);
          for (double& t : row.mean_tier_requests) t *= inv;
          row.mean_vehicle_cpu_util *= inv;
        }
        row.savings_vs_cloud = n_cloud > 0 ? sav_cloud / n_cloud : nan;
        row.savings_vs_cloud_fog = n_fog > 0 ? sav_fog / n_fog : nan;
        means.push_back(std::move(row));
      }
    }
  }
  return means;
}

} // namespace

int SweepResult::cell_index(int scenario, int policy, int k_value,
                            int seed_pos) const {
  const int n_k = config.k_hi - config.k_lo + 1;
  const int ki = k_value - config.k_lo;
  if (scenario < 0 || scenario >= static_cast<int>(config.scenarios.size()) ||
      policy < 0 || policy >= static_cast<int>(config.policies.size()) ||
      ki < 0 || ki >= n_k || seed_pos < 0 ||
      seed_pos >= static_cast<int>(config.seeds.size()))
    throw Error(ErrorCode::InvalidRange, "sweep cell index out of range");
  return ((scenario * static_cast<int>(config.policies.size()) + policy) * n_k +
          ki) *
             static_cast<int>(config.seeds.size()) +
         seed_pos;
}

const CellResult& SweepResult::cell(int scenario, int policy, int k_value,
                                    int seed_pos) const {
  return cells[static_cast<std::size_t>(
      cell_index(scenario, policy, k_value, seed_pos))];
}

const MeanRow& SweepResult::mean(int scenario, int policy, int k_value) const {
  const int n_k = config.k_hi - config.k_lo + 1;
  const int ki = k_value - config.k_lo;
  if (scenario < 0 || scenario >= static_cast<int>(config.scenarios.size()) ||
      policy < 0 || policy >= static_cast<int>(config.policies.size()) ||
      ki < 0 || ki >= n_k)
    throw Error(ErrorCode::InvalidRange, "sweep mean index out of range");
  return means[static_cast<std::size_t>(
      (scenario * static_cast<int>(config.policies.size()) + policy) * n_k +
      ki)];
}

int SweepResult::failed_cells() const {
  int n = 0;
  for (const CellResult& c : cells)
    if (!c.error.empty()) ++n;
  return n;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  SweepResult res;
  res.config = validated(cfg);
  const SweepConfig& c = res.config;

  const Grid g{static_cast<int>(c.scenarios.size()),
               static_cast<int>(c.policies.size()), c.k_hi - c.k_lo + 1,
               static_cast<int>(c.seeds.size()), c.k_lo};
  res.cells.resize(static_cast<std::size_t>(g.n_scenarios) *
                   static_cast<std::size_t>(g.n_policies) *
                   static_cast<std::size_t>(g.n_k) *
                   static_cast<std::size_t>(g.n_seeds));

  // Seeds are independent; everything inside one seed is chained. Workers
  // claim whole seeds, so the thread count cannot change any result.
  int workers = c.threads > 0
                    ? c.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, g.n_seeds));

  std::atomic<int> next{0};
  auto work = [&] {
    for (int sp; (sp = next.fetch_add(1)) < g.n_seeds;)
      run_seed(c, g, sp, res.cells);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  if (res.failed_cells() == static_cast<int>(res.cells.size()))
    throw Error(ErrorCode::Infeasible,
                "every sweep cell failed; first error: " +
                    res.cells.front().error);

  res.means = aggregate(c, g, res.cells);
  return res;
}

// --- audit -------------------------------------------------------------------

namespace {

// Slack for comparing seed means: they are sums of ~500 W cell totals whose
// last bits depend on summation details, never on anything physical.
constexpr double kMeanSlackW = 1e-9;

std::string fmt_w(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string cell_tag(const SweepResult& r, const CellResult& c) {
  return scenario_label(
             r.config.scenarios[static_cast<std::size_t>(c.scenario)]) +
         "/" + to_string(c.policy) + "/k=" + std::to_string(c.k) +
         "/seed=" + std::to_string(c.seed);
}

} // namespace

std::vector<std::string> audit_sweep(const SweepResult& result) {
  const SweepConfig& c = result.config;
  std::vector<std::string> out;
  const int n_sc = static_cast<int>(c.scenarios.size());
  const int n_pol = static_cast<int>(c.policies.size());
  const int n_seeds = static_cast<int>(c.seeds.size());

  // Per-cell: independent feasibility check, request conservation, and the
  // differential power recomputation.
  for (int sp = 0; sp < n_seeds; ++sp) {
    const std::vector<Request> requests =
        generate_requests(c.seeds[static_cast<std::size_t>(sp)], c.workload);
    for (int si = 0; si < n_sc; ++si) {
      const Scenario& sc = c.scenarios[static_cast<std::size_t>(si)];
      for (int pi = 0; pi < n_pol; ++pi) {
        for (int k = c.k_lo; k <= c.k_hi; ++k) {
          const CellResult& cell = result.cell(si, pi, k, sp);
          if (!cell.error.empty()) continue;
          int total = 0;
          for (int t : cell.tier_requests) total += t;
          if (total != c.workload.n_requests)
            out.push_back("request conservation: " + cell_tag(result, cell) +
                          " counts " + std::to_string(total) + " of " +
                          std::to_string(c.workload.n_requests));
          const Deployment dep = make_deployment(
              cell.policy, sc.vehicle_count, cell.k, cell.seed,
              c.workload.package_pool);
          const CheckReport check = check_assignment(
              cell.assignment, requests, sc, dep, c.catalog);
          if (!check.ok())
            out.push_back("invalid assignment: " + cell_tag(result, cell) +
                          ": " + check.to_text());
          const PowerBreakdown redo =
              recompute_power(cell.assignment, requests, sc, dep, c.catalog);
          const double rel = std::abs(redo.total_w - cell.total_w) /
                             std::max(1.0, std::abs(cell.total_w));
          if (rel > 1e-9)
            out.push_back("power mismatch: " + cell_tag(result, cell) +
                          " reported " + fmt_w(cell.total_w) +
                          " recomputed " + fmt_w(redo.total_w));
        }
      }
    }
  }

  // Seed-mean power non-increasing in k for every scenario with vehicles.
  for (int si = 0; si < n_sc; ++si) {
    if (c.scenarios[static_cast<std::size_t>(si)].vehicle_count == 0) continue;
    for (int pi = 0; pi < n_pol; ++pi) {
      for (int k = c.k_lo + 1; k <= c.k_hi; ++k) {
        const MeanRow& lo = result.mean(si, pi, k - 1);
        const MeanRow& hi = result.mean(si, pi, k);
        if (lo.seeds_ok == 0 || hi.seeds_ok == 0) continue;
        if (hi.mean_total_w > lo.mean_total_w + kMeanSlackW)
          out.push_back(
              "k-monotonicity: " +
              scenario_label(c.scenarios[static_cast<std::size_t>(si)]) + "/" +
              to_string(c.policies[static_cast<std::size_t>(pi)]) + " mean(k=" +
              std::to_string(k) + ")=" + fmt_w(hi.mean_total_w) + " > mean(k=" +
              std::to_string(k - 1) + ")=" + fmt_w(lo.mean_total_w));
      }
    }
  }

  // Scenario dominance of the means at every k, along the canonical chain
  // restricted to the scenarios actually present.
  {
    std::vector<int> chain;
    for (ScenarioKind kind :
         {ScenarioKind::Cloud, ScenarioKind::CloudFog, ScenarioKind::CloudFogVF1,
          ScenarioKind::CloudFogVF2, ScenarioKind::CloudFogVF3}) {
      const int si = find_scenario(c, kind);
      if (si >= 0) chain.push_back(si);
    }
    for (std::size_t i = 1; i < chain.size(); ++i) {
      for (int pi = 0; pi < n_pol; ++pi) {
        for (int k = c.k_lo; k <= c.k_hi; ++k) {
          const MeanRow& stronger = result.mean(chain[i], pi, k);
          const MeanRow& weaker = result.mean(chain[i - 1], pi, k);
          if (stronger.seeds_ok == 0 || weaker.seeds_ok == 0) continue;
          if (stronger.mean_total_w > weaker.mean_total_w + kMeanSlackW)
            out.push_back(
                "dominance: mean(" +
                scenario_label(c.scenarios[static_cast<std::size_t>(chain[i])]) +
                ")=" + fmt_w(stronger.mean_total_w) + " > mean(" +
                scenario_label(
                    c.scenarios[static_cast<std::size_t>(chain[i - 1])]) +
                ")=" + fmt_w(weaker.mean_total_w) + " at " +
                to_string(c.policies[static_cast<std::size_t>(pi)]) + "/k=" +
                std::to_string(k));
        }
      }
    }
  }

  // k = S: both policies preload the whole pool, so the cells must be
  // bit-identical per seed.
  if (c.k_hi == c.workload.package_pool && n_pol >= 2) {
    for (int si = 0; si < n_sc; ++si) {
      if (c.scenarios[static_cast<std::size_t>(si)].vehicle_count == 0)
        continue;
      for (int pi = 1; pi < n_pol; ++pi) {
        for (int sp = 0; sp < n_seeds; ++sp) {
          const CellResult& a = result.cell(si, 0, c.k_hi, sp);
          const CellResult& b = result.cell(si, pi, c.k_hi, sp);
          if (!a.error.empty() || !b.error.empty()) continue;
          if (a.total_w != b.total_w || !(a.assignment == b.assignment))
            out.push_back("k=S collapse: " + cell_tag(result, b) +
                          " differs from " + to_string(c.policies[0]));
        }
      }
    }
  }
  return out;
}

// --- emission ----------------------------------------------------------------

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Json config_json(const SweepConfig& c) {
  Json scenarios = Json::array();
  for (const Scenario& s : c.scenarios) scenarios.push_back(to_json(s));
  Json policies = Json::array();
  for (DeploymentPolicy p : c.policies) policies.push_back(to_string(p));
  // `threads` is deliberately not echoed: it is an execution knob that can
  // never change result bytes, and emitted files must not depend on it.
  return Json{{"scenarios", std::move(scenarios)},
              {"policies", std::move(policies)},
              {"k", Json::array({c.k_lo, c.k_hi})},
              {"seeds", c.seeds},
              {"workload", to_json(c.workload)},
              {"catalog", to_json(c.catalog)},
              {"solver", Json{{"time_limit_s", c.limits.time_limit_s},
                              {"max_nodes", c.limits.max_nodes}}}};
}

Json cell_json(const SweepResult& r, const CellResult& c) {
  Json j{{"scenario",
          scenario_label(r.config.scenarios[static_cast<std::size_t>(c.scenario)])},
         {"policy", to_string(c.policy)},
         {"k", c.k},
         {"seed", c.seed}};
  if (!c.error.empty()) {
    j["error"] = c.error;
    return j;
  }
  j["total_w"] = c.total_w;
  j["proved_optimal"] = c.proved_optimal;
  j["gap_w"] = c.gap_w;
  j["explored_nodes"] = c.explored_nodes;
  j["tier_requests"] = Json::array(
      {c.tier_requests[0], c.tier_requests[1], c.tier_requests[2]});
  j["mean_vehicle_cpu_util"] = c.mean_vehicle_cpu_util;
  j["min_vehicle_cpu_util"] = c.min_vehicle_cpu_util;
  j["power"] = to_json(c.power);
  return j;
}

Json mean_json(const SweepResult& r, const MeanRow& m) {
  Json j{{"scenario",
          scenario_label(r.config.scenarios[static_cast<std::size_t>(m.scenario)])},
         {"policy", to_string(m.policy)},
         {"k", m.k},
         {"seeds_ok", m.seeds_ok},
         {"mean_total_w", m.mean_total_w},
         {"mean_tier_requests",
          Json::array({m.mean_tier_requests[0], m.mean_tier_requests[1],
                       m.mean_tier_requests[2]})},
         {"mean_vehicle_cpu_util", m.mean_vehicle_cpu_util},
         {"mean_power", to_json(m.mean_power)}};
  if (!std::isnan(m.savings_vs_cloud))
    j["savings_vs_cloud"] = m.savings_vs_cloud;
  if (!std::isnan(m.savings_vs_cloud_fog))
    j["savings_vs_cloud_fog"] = m.savings_vs_cloud_fog;
  return j;
}

} // namespace

void emit_results(const SweepResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw Error(ErrorCode::IoError,
                "cannot create " + out_dir + ": " + ec.message());

  const SweepConfig& c = result.config;
  const int n_pol = static_cast<int>(c.policies.size());
  const int n_sc = static_cast<int>(c.scenarios.size());

  // Full structured results.
  {
    Json j{{"schema_version", kSchemaVersion}, {"config", config_json(c)}};
    Json cells = Json::array();
    for (const CellResult& cell : result.cells)
      cells.push_back(cell_json(result, cell));
    Json means = Json::array();
    for (const MeanRow& m : result.means)
      means.push_back(mean_json(result, m));
    j["cells"] = std::move(cells);
    j["means"] = std::move(means);
    write_text_file((fs::path(out_dir) / "results.json").string(),
                    j.dump(2) + "\n");
  }

  // Power curves: one file per policy, one row per k, one column per
  // scenario (seed-averaged total watts).
  for (int pi = 0; pi < n_pol; ++pi) {
    std::string text = "k";
    for (const Scenario& s : c.scenarios) text += "," + scenario_label(s);
    text += "\n";
    for (int k = c.k_lo; k <= c.k_hi; ++k) {
      text += std::to_string(k);
      for (int si = 0; si < n_sc; ++si)
        text += "," + fmt(result.mean(si, pi, k).mean_total_w);
      text += "\n";
    }
    const std::string name =
        std::string("power_vs_k_") +
        to_string(c.policies[static_cast<std::size_t>(pi)]) + ".csv";
    write_text_file((fs::path(out_dir) / name).string(), text);
  }

  // Allocation tables: per scenario/policy, mean per-tier request counts
  // per k (rows sum to n_requests).
  for (int si = 0; si < n_sc; ++si) {
    for (int pi = 0; pi < n_pol; ++pi) {
      std::string text = "k,vf,fixed_fog,cloud\n";
      for (int k = c.k_lo; k <= c.k_hi; ++k) {
        const MeanRow& m = result.mean(si, pi, k);
        text += std::to_string(k);
        for (int t = 0; t < kTierCount; ++t)
          text += "," + fmt(m.mean_tier_requests[static_cast<std::size_t>(t)]);
        text += "\n";
      }
      const std::string name =
          "allocation_" +
          scenario_label(c.scenarios[static_cast<std::size_t>(si)]) + "_" +
          to_string(c.policies[static_cast<std::size_t>(pi)]) + ".csv";
      write_text_file((fs::path(out_dir) / name).string(), text);
    }
  }

  // Savings summary: per-k rows plus one "avg" row per scenario/policy
  // (the per-k savings averaged over k). The extra_vs_same_type column is
  // the random-minus-same savings difference at the same k.
  {
    std::string text =
        "scenario,policy,k,savings_vs_cloud_pct,savings_vs_cloud_fog_pct,"
        "extra_vs_same_type_pct\n";
    const int same_pi = [&] {
      for (int pi = 0; pi < n_pol; ++pi)
        if (c.policies[static_cast<std::size_t>(pi)] ==
            DeploymentPolicy::SameType)
          return pi;
      return -1;
    }();
    for (int si = 0; si < n_sc; ++si) {
      const std::string label =
          scenario_label(c.scenarios[static_cast<std::size_t>(si)]);
      for (int pi = 0; pi < n_pol; ++pi) {
        const bool is_random = c.policies[static_cast<std::size_t>(pi)] ==
                               DeploymentPolicy::RandomType;
        double sum_cloud = 0, sum_fog = 0, sum_extra = 0;
        int n_cloud = 0, n_fog = 0, n_extra = 0;
        for (int k = c.k_lo; k <= c.k_hi; ++k) {
          const MeanRow& m = result.mean(si, pi, k);
          std::string extra;
          if (is_random && same_pi >= 0) {
            const MeanRow& same = result.mean(si, same_pi, k);
            if (!std::isnan(m.savings_vs_cloud) &&
                !std::isnan(same.savings_vs_cloud)) {
              const double d = m.savings_vs_cloud - same.savings_vs_cloud;
              extra = fmt(100.0 * d);
              sum_extra += d;
              ++n_extra;
            }
          }
          if (!std::isnan(m.savings_vs_cloud)) {
            sum_cloud += m.savings_vs_cloud;
            ++n_cloud;
          }
          if (!std::isnan(m.savings_vs_cloud_fog)) {
            sum_fog += m.savings_vs_cloud_fog;
            ++n_fog;
          }
          text += label;
          text += ",";
          text += to_string(c.policies[static_cast<std::size_t>(pi)]);
          text += "," + std::to_string(k);
          text += "," + fmt(std::isnan(m.savings_vs_cloud)
                                ? m.savings_vs_cloud
                                : 100.0 * m.savings_vs_cloud);
          text += "," + fmt(std::isnan(m.savings_vs_cloud_fog)
                                ? m.savings_vs_cloud_fog
                                : 100.0 * m.savings_vs_cloud_fog);
          text += "," + extra + "\n";
        }
        text += label;
        text += ",";
        text += to_string(c.policies[static_cast<std::size_t>(pi)]);
        text += ",avg";
        text += "," + (n_cloud ? fmt(100.0 * sum_cloud / n_cloud) : std::string());
        text += "," + (n_fog ? fmt(100.0 * sum_fog / n_fog) : std::string());
        text += "," + (n_extra ? fmt(100.0 * sum_extra / n_extra) : std::string());
        text += "\n";
      }
    }
    write_text_file((fs::path(out_dir) / "savings_summary.csv").string(),
                    text);
  }
}

} // namespace fogmatch
