// Copyright 2026 The gapcg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. `--only N[,M...]` restricts the set; `--quick`
// shrinks the degeneracy family for smoke runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gapcg/cg_driver.hpp"
#include "gapcg/harness.hpp"
#include "gapcg/knapsack.hpp"
#include "gapcg/pricing.hpp"
#include "oracle/enumerate.hpp"

namespace gapcg {
namespace {

// Pinned tolerances.
constexpr double kRcTieTol = 1e-9;       // lex rc agreement
constexpr double kBoundTol = 1e-6;       // lb_raw vs final RMP
constexpr double kEpsilon = 1e-6;        // pricing acceptance
constexpr double kManageTol = 1e-7;      // objective drift after management
constexpr double kDelta = 1e-6;          // similarity threshold
constexpr double kPivotShare = 0.80;
constexpr double kIntegralShare = 0.90;
constexpr double kIterationShare = 0.70;
constexpr double kFamilyTimeLimit = 120.0;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Shared evidence for the whole-suite properties (3, 4, 10).
struct Evidence {
  int64_t runs = 0;
  int64_t bound_rows = 0;
  int64_t bound_violations = 0;
  double worst_bound_excess = -std::numeric_limits<double>::infinity();
  int64_t columns = 0;
  int64_t unsound_columns = 0;
  double worst_rc = -std::numeric_limits<double>::infinity();
  int64_t management_calls = 0;
  int64_t management_failures = 0;
  double worst_drift = 0.0;
  int64_t worst_pivots = 0;

  void Absorb(const RunReport& r) {
    ++runs;
    if (r.final_rmp_objective && r.status != RunStatus::kTimeLimit) {
      for (const IterationRow& row : r.rows) {
        if (!row.lb_raw) continue;
        ++bound_rows;
        const double excess = *row.lb_raw - *r.final_rmp_objective;
        worst_bound_excess = std::max(worst_bound_excess, excess);
        if (excess > kBoundTol) ++bound_violations;
      }
    }
    for (const AddedColumn& c : r.added_columns) {
      ++columns;
      worst_rc = std::max(worst_rc, c.true_rc);
      if (c.true_rc > -kEpsilon) ++unsound_columns;
    }
    for (const ManagementCheck& m : r.management_checks) {
      ++management_calls;
      const double drift = std::abs(m.objective_after - m.objective_before);
      worst_drift = std::max(worst_drift, drift);
      worst_pivots = std::max(worst_pivots, m.pivots);
      if (drift > kManageTol || m.pivots != 0) ++management_failures;
    }
  }
};

CgConfig Traced(PricingMethod m, double time_limit) {
  CgConfig cfg;
  cfg.method = m;
  cfg.epsilon = kEpsilon;
  cfg.template_delta = kDelta;
  cfg.time_limit = std::chrono::duration<double>(time_limit);
  cfg.record_columns = true;
  cfg.verify_management = true;
  return cfg;
}

GapInstance Generated(int m, int n, uint64_t seed, double slack) {
  GeneratorSpec spec;
  spec.num_machines = m;
  spec.num_jobs = n;
  spec.capacity_slack = slack;
  spec.seed = seed;
  return GenerateInstance(spec);
}

std::string Fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome Knapsacks() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  int min_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    KnapsackProblem p;
    const int n = std::uniform_int_distribution<int>(0, 15)(rng);
    p.capacity = std::uniform_int_distribution<int64_t>(0, 50)(rng);
    for (int j = 0; j < n; ++j) {
      p.profit.push_back(std::uniform_int_distribution<int>(-30, 10)(rng));
      p.weight.push_back(std::uniform_int_distribution<int64_t>(0, 25)(rng));
    }
    const KnapsackSolution s = MinKnapsack(p);
    const auto best = oracle::BruteMinKnapsack(p.profit, p.weight, p.capacity);
    int64_t load = 0;
    for (int j = 0; j < n; ++j) load += s.selection[j] ? p.weight[j] : 0;
    if (s.value != best.value || load > p.capacity) ++min_bad;
  }
  int lex_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    LexKnapsackProblem p;
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    p.capacity = std::uniform_int_distribution<int64_t>(0, 50)(rng);
    for (int j = 0; j < n; ++j) {
      p.sim.push_back(std::uniform_int_distribution<int>(-1, 1)(rng));
      p.rc_coeff.push_back(std::uniform_real_distribution<double>(-10, 6)(rng));
      p.weight.push_back(std::uniform_int_distribution<int64_t>(0, 20)(rng));
    }
    p.rc_budget = std::uniform_real_distribution<double>(-20, 1)(rng);
    const auto fast = LexKnapsack(p);
    const auto slow = BruteForceLex(p);
    if (fast.has_value() != slow.has_value()) {
      ++lex_bad;
    } else if (fast && (fast->best_sim != slow->best_sim ||
                        std::abs(fast->rc - slow->rc) > kRcTieTol)) {
      ++lex_bad;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {min_bad == 0 && lex_bad == 0 && secs < 30.0,
          Fmt("min mismatches %d/1000, lex mismatches %d/1000, %.2fs", min_bad, lex_bad,
              secs)};
}

constexpr PricingMethod kCgMethods[] = {PricingMethod::kDantzig, PricingMethod::kPessoa,
                                        PricingMethod::kLagrangeTemplate,
                                        PricingMethod::kExactTemplate};

Outcome MasterAgreement(Evidence& ev) {
  const auto start = Clock::now();
  std::mt19937_64 rng(77);
  int done = 0;
  int mismatches = 0;
  std::string first;
  for (uint64_t seed = 5000; done < 20; ++seed) {
    const int m = std::uniform_int_distribution<int>(2, 3)(rng);
    const int n = std::uniform_int_distribution<int>(6, 12)(rng);
    const GapInstance inst = Generated(m, n, seed, 0.8);
    if (!Validate(inst).ok()) continue;
    const auto lp = oracle::EnumeratedMasterLp(inst);
    if (!lp) continue;
    ++done;
    const int64_t want = static_cast<int64_t>(std::ceil(*lp - 1e-9));
    auto check = [&](const RunReport& r, std::string_view name) {
      if (!r.bounds.lb_int || *r.bounds.lb_int != want) {
        ++mismatches;
        if (first.empty()) {
          first = Fmt("; first: seed %llu %s lb_int %lld vs %lld (LP %.9g)",
                      static_cast<unsigned long long>(seed), std::string(name).c_str(),
                      static_cast<long long>(r.bounds.lb_int.value_or(-1)),
                      static_cast<long long>(want), *lp);
        }
      }
    };
    for (PricingMethod meth : kCgMethods) {
      const RunReport r = Run(inst, Traced(meth, 60.0));
      ev.Absorb(r);
      check(r, ToString(meth));
    }
    CgConfig lr_cfg;
    lr_cfg.time_limit = std::chrono::duration<double>(30.0);
    check(RunLr(inst, lr_cfg), "lr");
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {mismatches == 0 && secs < 300.0,
          Fmt("%d instances x 5 methods, %d lb_int mismatches, %.1fs", done, mismatches,
              secs) +
              first};
}

Outcome PessoaDegeneration(Evidence& ev) {
  int mismatched = 0;
  std::string where;
  for (int k = 0; k < 5; ++k) {
    const GapInstance inst = Generated(3 + k % 2, 20 + 5 * k, 900 + k, 0.8);
    CgConfig dz = Traced(PricingMethod::kDantzig, 120.0);
    dz.seed = k;
    dz.age_policy_override = AgePolicy{0, 0, 10};
    CgConfig ps = dz;
    ps.method = PricingMethod::kPessoa;
    ps.pessoa_freeze_alpha = true;
    const RunReport a = Run(inst, dz);
    const RunReport b = Run(inst, ps);
    ev.Absorb(a);
    ev.Absorb(b);
    using Key = std::tuple<int, int, Selection>;
    std::set<Key> sa, sb;
    for (const auto& c : a.added_columns) sa.insert({c.iteration, c.machine, c.jobs});
    for (const auto& c : b.added_columns) sb.insert({c.iteration, c.machine, c.jobs});
    if (sa != sb || a.iterations != b.iterations) {
      ++mismatched;
      where += Fmt(" inst%d(%d vs %d iters)", k, a.iterations, b.iterations);
    }
  }
  return {mismatched == 0, Fmt("%d/5 instances differ", mismatched) + where};
}

Outcome SimilarityTable() {
  const double in[] = {1.0, 1.0 - 1e-7, 0.5, 1e-7, 0.0};
  const int want[] = {1, 1, 0, -1, -1};
  std::string got;
  bool ok = true;
  for (int k = 0; k < 5; ++k) {
    const int s = SimilarityClass(in[k], kDelta);
    ok = ok && s == want[k];
    got += Fmt("%s%+d", k ? "," : "", s);
  }
  return {ok, "f = [" + got + "]"};
}

Outcome TemplateDominance() {
  std::mt19937_64 rng(4242);
  int lt_above_mt = 0, lt_infeasible = 0, proof_gap = 0, proofs = 0, existence = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    GapInstance inst = Generated(1, n, 7000 + t, 0.5);
    inst.capacity[0] = std::max<int64_t>(inst.capacity[0], 25);
    PricingContext ctx;
    ctx.instance = &inst;
    ctx.epsilon = kEpsilon;
    ctx.phase1 = t % 5 == 0;
    std::vector<double> y, pi, mu;
    for (int j = 0; j < n; ++j) {
      pi.push_back(std::uniform_real_distribution<>(0, 60)(rng));
      const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
      y.push_back(kind == 0   ? 0.0
                  : kind == 1 ? 1.0
                              : std::uniform_real_distribution<>(0, 1)(rng));
    }
    mu.push_back(std::uniform_real_distribution<>(-10, 10)(rng));
    ctx.pi = pi;
    ctx.mu = mu;
    LtState state(1);
    const PricingOutcome lt = LtPrice(ctx, 0, y, kDelta, state);
    const PricingOutcome mt = MtPrice(ctx, 0, y, kDelta);
    const bool dantzig_ok = *lt.dantzig_rc <= -kEpsilon;
    if (lt.column.has_value() != dantzig_ok || mt.column.has_value() != dantzig_ok) {
      ++existence;
    }
    if (!lt.column || !mt.column) continue;
    if (*lt.similarity > *mt.similarity) ++lt_above_mt;
    int64_t load = 0;
    for (int j = 0; j < n; ++j) load += (*lt.column)[j] ? inst.Resource(0, j) : 0;
    if (load > inst.capacity[0] || ctx.ReducedCost(0, *lt.column) > -kEpsilon) {
      ++lt_infeasible;
    }
    if (lt.proof_fired) {
      ++proofs;
      if (*lt.similarity != *mt.similarity) ++proof_gap;
    }
  }
  return {lt_above_mt == 0 && lt_infeasible == 0 && proof_gap == 0 && existence == 0,
          Fmt("LT>MT %d, LT outside S %d, proof-branch gaps %d/%d, existence mismatches %d",
              lt_above_mt, lt_infeasible, proof_gap, proofs, existence)};
}

struct FamilyRun {
  RunReport dantzig;
  RunReport lt;
};

std::vector<FamilyRun> RunFamily(int count, Evidence& ev) {
  std::vector<FamilyRun> out;
  for (int k = 0; k < count; ++k) {
    const int m = 3 + k % 3;
    const int ratio = 10 + 5 * ((k / 3) % 3);
    GapInstance inst = Generated(m, m * ratio, 1000 + k, 0.8);
    inst.name = Fmt("family%02d", k);
    FamilyRun fr{Run(inst, Traced(PricingMethod::kDantzig, kFamilyTimeLimit)),
                 Run(inst, Traced(PricingMethod::kLagrangeTemplate, kFamilyTimeLimit))};
    ev.Absorb(fr.dantzig);
    ev.Absorb(fr.lt);
    std::fprintf(stderr,
                 "  %s m=%d n=%d | dantzig %s it=%d ppc=%.2f t=%.1fs p1gap=%.2f%% | "
                 "lt %s it=%d ppc=%.2f t=%.1fs integral=%d p1gap=%.2f%%\n",
                 inst.name.c_str(), m, m * ratio,
                 std::string(ToString(fr.dantzig.status)).c_str(), fr.dantzig.iterations,
                 fr.dantzig.PivotsPerColumn().value_or(NAN), fr.dantzig.total_time,
                 fr.dantzig.phase1_gap_percent.value_or(NAN),
                 std::string(ToString(fr.lt.status)).c_str(), fr.lt.iterations,
                 fr.lt.PivotsPerColumn().value_or(NAN), fr.lt.total_time,
                 static_cast<int>(fr.lt.integral), fr.lt.phase1_gap_percent.value_or(NAN));
    out.push_back(std::move(fr));
  }
  return out;
}

Outcome Degeneracy(const std::vector<FamilyRun>& family, double secs) {
  const int n = static_cast<int>(family.size());
  int pivots = 0, integral = 0, iterations = 0;
  for (const FamilyRun& f : family) {
    const auto dz = f.dantzig.PivotsPerColumn();
    const auto lt = f.lt.PivotsPerColumn();
    if (dz && lt && *lt < *dz) ++pivots;
    if (f.lt.integral) ++integral;
    if (f.lt.iterations <= f.dantzig.iterations) ++iterations;
  }
  const bool ok = pivots >= kPivotShare * n && integral >= kIntegralShare * n &&
                  iterations >= kIterationShare * n && secs < 7200.0;
  return {ok, Fmt("pivots/col LT<Dantzig %d/%d, LT integral %d/%d, LT iters<=Dantzig %d/%d, "
                  "%.0fs",
                  pivots, n, integral, n, iterations, n, secs)};
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Outcome PhaseOneQuality(const std::vector<FamilyRun>& family) {
  // Both handoffs are measured against the same reference: Dantzig's final
  // RMP when it converged, otherwise LT's.
  std::vector<double> dz, lt;
  for (const FamilyRun& f : family) {
    const RunReport& ref =
        f.dantzig.status != RunStatus::kTimeLimit ? f.dantzig : f.lt;
    if (!ref.final_rmp_objective || !f.dantzig.phase1_handoff_cost ||
        !f.lt.phase1_handoff_cost) {
      continue;
    }
    const double opt = *ref.final_rmp_objective;
    dz.push_back(100.0 * (*f.dantzig.phase1_handoff_cost - opt) / std::abs(opt));
    lt.push_back(100.0 * (*f.lt.phase1_handoff_cost - opt) / std::abs(opt));
  }
  if (dz.empty()) return {false, "no comparable instances"};
  const double mdz = Median(dz), mlt = Median(lt);
  return {mlt < mdz, Fmt("median Phase-I gap LT %.2f%% vs Dantzig %.2f%% over %zu instances",
                         mlt, mdz, lt.size())};
}

Outcome SweepRule() {
  struct Profile {
    const char* name;
    std::vector<int> taus;
    std::vector<double> times;
    int window;
    double rel;
    double abs;
    int want;
  };
  // Expected selections worked out by hand from the smoothing rule.
  const std::vector<Profile> profiles = {
      {"window3", {1, 2, 3, 4, 5}, {10, 3, 3.01, 3.2, 9}, 3, 0.01, 1.0, 3},
      {"flat", {5, 10, 20, 40, 80}, {7, 7, 7, 7, 7}, 5, 0.01, 1.0, 5},
      {"rel-tie", {10, 20, 30, 40}, {500, 403, 400, 600}, 1, 0.01, 0.0, 20},
      {"abs-tie", {10, 20, 30, 40}, {100, 50.9, 50, 70}, 1, 0.0, 1.0, 20},
      // Smoothed (w=3): 30, ~24.66, ~20.80, ~20.80, ~24.66; tau 30 ties tau 40.
      {"smoothed-tie", {10, 20, 30, 40, 50}, {40, 22.5, 20, 20, 32}, 3, 0.01, 0.0, 30},
  };
  int bad = 0;
  std::string got;
  for (const Profile& p : profiles) {
    // Route through the replication path: one replication per tau.
    SweepSpec spec;
    spec.tau_values = p.taus;
    spec.replications = 1;
    spec.smoothing_window = p.window;
    spec.relative_tie = p.rel;
    spec.absolute_tie = p.abs;
    const SweepResult r = RunSweep(spec, [&](int tau, int) {
      const auto it = std::find(p.taus.begin(), p.taus.end(), tau);
      return p.times[it - p.taus.begin()];
    });
    if (r.selection.tau != p.want) ++bad;
    got += Fmt(" %s=%d", p.name, r.selection.tau);
  }
  return {bad == 0, Fmt("%d/5 mismatched;", bad) + got};
}

}  // namespace
}  // namespace gapcg

int main(int argc, char** argv) {
  using namespace gapcg;
  std::set<int> only;
  bool quick = false;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--quick") {
      quick = true;
    } else if (arg == "--only" && a + 1 < argc) {
      std::stringstream ss(argv[++a]);
      for (std::string t; std::getline(ss, t, ',');) only.insert(std::stoi(t));
    } else {
      std::fprintf(stderr, "usage: %s [--quick] [--only N,M,...]\n", argv[0]);
      return 2;
    }
  }
  auto want = [&](int c) { return only.empty() || only.count(c); };

  Evidence ev;
  std::map<int, Outcome> results;
  if (want(1)) results[1] = Knapsacks();
  if (want(2) || want(3) || want(4) || want(10)) results[2] = MasterAgreement(ev);
  if (want(5) || want(3) || want(4) || want(10)) results[5] = PessoaDegeneration(ev);
  if (want(6)) results[6] = SimilarityTable();
  if (want(7)) results[7] = TemplateDominance();
  if (want(8) || want(9) || want(3) || want(4) || want(10)) {
    const auto start = Clock::now();
    const auto family = RunFamily(quick ? 6 : 30, ev);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    results[8] = Degeneracy(family, secs);
    results[9] = PhaseOneQuality(family);
  }
  results[3] = {ev.bound_violations == 0,
                Fmt("%lld violations over %lld bound rows in %lld runs, worst excess %.3g",
                    static_cast<long long>(ev.bound_violations),
                    static_cast<long long>(ev.bound_rows), static_cast<long long>(ev.runs),
                    ev.worst_bound_excess)};
  results[4] = {ev.unsound_columns == 0 && ev.columns > 0,
                Fmt("%lld/%lld added columns above -eps, worst rc %.3g",
                    static_cast<long long>(ev.unsound_columns),
                    static_cast<long long>(ev.columns), ev.worst_rc)};
  results[10] = {ev.management_failures == 0 && ev.management_calls > 0,
                 Fmt("%lld/%lld management steps failed, worst drift %.3g, max pivots %lld",
                     static_cast<long long>(ev.management_failures),
                     static_cast<long long>(ev.management_calls), ev.worst_drift,
                     static_cast<long long>(ev.worst_pivots))};
  if (want(11)) results[11] = SweepRule();

  const char* names[] = {"",
                         "knapsack oracle equivalence",
                         "master-LP agreement",
                         "bound validity",
                         "pricing soundness",
                         "pessoa degeneration",
                         "similarity table",
                         "MT dominance and LT feasibility",
                         "degeneracy direction",
                         "phase-I quality direction",
                         "column-management safety",
                         "sweep rule"};
  bool all = true;
  for (int c = 1; c <= 11; ++c) {
    if (!want(c)) continue;
    const Outcome& o = results[c];
    all = all && o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c, names[c],
                o.detail.c_str());
  }
  return all ? 0 : 1;
}
