// Copyright 2026 The IOA Solver Authors
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

// The inner-outer approximation driver: Mod-S^c assembly, the Kelley loop
// on the convex halves and the outer refinement of the concave halves.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ioa/approx.hpp"
#include "ioa/common.hpp"
#include "ioa/milp/backend.hpp"
#include "ioa/milp/lp_format.hpp"
#include "ioa/milp/model.hpp"
#include "ioa/problem.hpp"
#include "ioa/scurve.hpp"

namespace ioa {

enum class Termination { kGap, kFixedPoint, kTimeLimit, kInfeasible, kIterationLimit };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::kGap: return "gap";
    case Termination::kFixedPoint: return "fixed-point";
    case Termination::kTimeLimit: return "time";
    case Termination::kInfeasible: return "infeasible";
    case Termination::kIterationLimit: return "iterations";
  }
  return "unknown";
}

struct TraceRecord {
  int iteration = 0;
  double lb = -kInf;       // certified bound after this iteration
  double ub = kInf;        // best true objective so far
  double gap_pct = kInf;
  double seconds = 0.0;
  int points_added = 0;
  double raw_lb = -kInf;   // bound of this iteration alone
  int inner_iterations = 0;
};

struct IoaOptions {
  double epsilon = 0.01;
  double time_limit = 10800.0;
  // Relative gap of the Kelley loop; negative means epsilon / 10.
  double inner_epsilon = -1.0;
  int apriori_cuts = 5;
  int extra_points = 0;
  bool include_deflection = true;
  // Adds the perspective chord and tangent rows to every Mod-S^c model.
  bool perspective_rows = true;
  // Uniformly drawn additional initial points per term, seeded by `seed`.
  int random_points = 0;
  std::uint64_t seed = 0;
  int max_outer_iterations = 10000;
  int max_inner_iterations = 200;
  std::shared_ptr<const milp::Backend> backend;
  std::function<void(const TraceRecord&)> on_iteration;
  // When set, the first Mod-S^c model is written there as an LP file.
  std::string export_lp;
};

// Per-term approximation data. `pairs` must not be resized once the sets
// exist, as every ApproxSet points at its pair.
struct IoaState {
  std::vector<SplitPair> pairs;
  std::vector<ApproxSet> sets;
  std::vector<CutPool> pools;
  int iteration = 0;
  double lb = -kInf;
  double ub = kInf;
  std::vector<double> incumbent;  // over the original model's variables
  std::vector<TraceRecord> trace;
  int milp_solves = 0;
};

inline void init_state(const Problem& problem, const IoaOptions& opt, IoaState& state) {
  state = IoaState{};
  state.pairs.reserve(problem.sterms.size());
  for (const auto& t : problem.sterms) state.pairs.emplace_back(t.curve);
  std::mt19937_64 rng(opt.seed);
  for (const auto& pair : state.pairs) {
    state.sets.push_back(init_set(pair, opt.extra_points, opt.include_deflection));
    for (int k = 0; k < opt.random_points; ++k) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      state.sets.back().add(pair.lower() + u * (pair.upper() - pair.lower()));
    }
    state.pools.push_back(apriori_cuts(pair, std::max(2, opt.apriori_cuts)));
  }
}

struct TermHandles {
  milp::VarId z, l0, l1, w, p, s;
  KktBlock kkt;
};

struct ModScModel {
  milp::MilpModel model;
  std::vector<TermHandles> terms;
  int original_vars = 0;
  std::vector<RegimeVars> regimes;
};

// Original model plus, per term, w, p, s, the w/p linearisation rows, the
// KKT block of the inner approximation and the tangent rows of the pool.
//
// With `perspective`, each term also gets rows valid for every regime:
//   w >= cap(lo) l0 + c (z - lo l0 - hi l1)        c: inner chord on [lo, z0]
//   p >= v l1 + d (z - a l1 - z0 l0)               per pool tangent (a, v, d)
// They rely on zlo/zhi pinning z to [lo, z0] under l0, to [z0, hi] under l1
// and to zero when both flags are off.
inline ModScModel assemble_mod_sc(const Problem& problem, const IoaState& state,
                                  bool perspective = true) {
  using namespace milp;
  if (state.sets.size() != problem.sterms.size() ||
      state.pools.size() != problem.sterms.size())
    throw Error(ErrorCode::kInvalidModel, "state does not match the problem terms");
  ModScModel out;
  out.model = problem.original_model(&out.regimes);
  out.original_vars = out.model.num_vars();
  MilpModel& m = out.model;
  for (size_t j = 0; j < problem.sterms.size(); ++j) {
    const SplitPair& pair = state.pairs[j];
    const std::string tag = "_" + std::to_string(j);
    TermHandles h;
    h.z = out.regimes[j].z;
    h.l0 = out.regimes[j].l0;
    h.l1 = out.regimes[j].l1;
    const double m0 = pair.m0(), m1 = pair.m1();
    const double wl = std::min(0.0, pair.cap(pair.lower()));
    const double pl = std::min(0.0, pair.cup(pair.lower()));
    h.w = m.add_continuous("w" + tag, wl, std::max(0.0, m0));
    h.p = m.add_continuous("p" + tag, pl, std::max(0.0, m1));
    h.s = m.add_continuous("s" + tag, pair.cup(pair.lower()), kInf);
    m.set_objective_coef(h.w, 1.0);
    m.set_objective_coef(h.p, 1.0);
    m.add_constraint("wup" + tag, {{h.w, 1.0}, {h.l0, -m0}}, Sense::kLessEqual, 0.0);
    m.add_constraint("wlo" + tag, {{h.w, 1.0}, {h.l0, -wl}}, Sense::kGreaterEqual, 0.0);
    m.add_constraint("pup" + tag, {{h.p, 1.0}, {h.l1, -m1}}, Sense::kLessEqual, 0.0);
    m.add_constraint("plo" + tag, {{h.p, 1.0}, {h.l1, -pl}}, Sense::kGreaterEqual, 0.0);
    // p >= s - M1 (1 - l1)
    m.add_constraint("plink" + tag, {{h.p, 1.0}, {h.s, -1.0}, {h.l1, -m1}},
                     Sense::kGreaterEqual, -m1);
    h.kkt = emit_kkt(state.sets[j], pair, m, static_cast<int>(j),
                     TermVars{h.z, h.l0, h.l1, h.w, h.p});
    const auto& cuts = state.pools[j].cuts();
    for (size_t k = 0; k < cuts.size(); ++k) {
      const auto& c = cuts[k];
      m.add_constraint("cut" + tag + "_" + std::to_string(k),
                       {{h.s, 1.0}, {h.z, -c.slope}}, Sense::kGreaterEqual,
                       c.value - c.slope * c.anchor);
    }
    if (perspective) {
      const double lo = pair.lower(), z0 = pair.deflection();
      const double hi = problem.sterms[j].curve.model_upper();
      if (z0 > lo) {
        const double c = (inner_value(state.sets[j], z0) - pair.cap(lo)) / (z0 - lo);
        if (c >= 0.0)
          m.add_constraint("wpersp" + tag,
                           {{h.w, 1.0}, {h.z, -c}, {h.l0, c * lo - pair.cap(lo)}, {h.l1, c * hi}},
                           Sense::kGreaterEqual, 0.0);
      }
      for (size_t k = 0; k < cuts.size(); ++k) {
        const auto& c = cuts[k];
        if (c.slope < 0.0) continue;
        m.add_constraint("ppersp" + tag + "_" + std::to_string(k),
                         {{h.p, 1.0},
                          {h.z, -c.slope},
                          {h.l1, c.slope * c.anchor - c.value},
                          {h.l0, c.slope * z0}},
                         Sense::kGreaterEqual, 0.0);
      }
    }
    out.terms.push_back(std::move(h));
  }
  return out;
}

struct InnerResult {
  milp::SolveStatus status = milp::SolveStatus::kNumericalError;
  double lb = -kInf;
  double ub = kInf;
  int iterations = 0;
  std::vector<double> candidate;  // original-model part of the last solution
};

namespace ioa_detail {

inline std::shared_ptr<const milp::Backend> backend_of(const IoaOptions& opt) {
  return opt.backend ? opt.backend : std::make_shared<milp::BuiltinBackend>();
}

// Offers a feasible original-model assignment as incumbent.
inline void offer(const Problem& problem, const std::vector<RegimeVars>& regimes,
                  const std::vector<double>& x, IoaState& state) {
  const double f = problem.evaluate(x, regimes);
  if (f < state.ub) {
    state.ub = f;
    state.incumbent = x;
  }
}

}  // namespace ioa_detail

// Kelley loop on the current approximation sets. Each round solves a fresh
// Mod-S^c model, records its bound, and adds a tangent at every z_j whose
// convex regime is active. Stops on inner gap, stalled cuts, or time.
inline InnerResult cutting_plane_solve(const Problem& problem, IoaState& state,
                                       const IoaOptions& opt,
                                       const Stopwatch& clock) {
  using namespace milp;
  const auto backend = ioa_detail::backend_of(opt);
  const double inner_eps = opt.inner_epsilon > 0.0 ? opt.inner_epsilon : opt.epsilon / 10.0;
  InnerResult res;
  for (int it = 0; it < opt.max_inner_iterations; ++it) {
    ModScModel mod = assemble_mod_sc(problem, state, opt.perspective_rows);
    if (!opt.export_lp.empty() && state.milp_solves == 0)
      export_lp_file(mod.model, opt.export_lp);
    MilpLimits limits;
    limits.time_limit = std::max(0.0, opt.time_limit - clock.seconds());
    limits.relative_gap = std::max(limits.relative_gap, inner_eps / 2.0);
    MilpSolution sol = backend->solve(mod.model, limits, nullptr);
    ++state.milp_solves;
    ++res.iterations;
    res.status = sol.status;
    if (sol.status == SolveStatus::kInfeasible || sol.status == SolveStatus::kUnbounded ||
        !sol.has_solution()) {
      if (sol.status == SolveStatus::kTimeLimit && std::isfinite(sol.best_bound))
        res.lb = std::max(res.lb, sol.best_bound);
      return res;
    }
    if (std::isfinite(sol.best_bound)) res.lb = std::max(res.lb, sol.best_bound);
    res.candidate.assign(sol.values.begin(), sol.values.begin() + mod.original_vars);
    ioa_detail::offer(problem, mod.regimes, res.candidate, state);

    // UB_C: the Mod-S^c objective with every p_j replaced by l1 cup(z).
    double ubc = sol.objective;
    bool added = false;
    for (size_t j = 0; j < mod.terms.size(); ++j) {
      const auto& h = mod.terms[j];
      const SplitPair& pair = state.pairs[j];
      ubc -= sol.value(h.p);
      if (sol.value(h.l1) > 0.5) {
        const double z = std::clamp(sol.value(h.z), pair.lower(), pair.upper());
        ubc += pair.cup(z);
        added |= state.pools[j].add(tangent_cut(pair, z));
      }
    }
    res.ub = std::min(res.ub, ubc);
    if (sol.status == SolveStatus::kTimeLimit) return res;
    if (relative_gap(res.lb, res.ub) <= inner_eps || res.ub - res.lb <= 1e-9 * std::max(1.0, std::fabs(res.lb)))
      break;
    if (!added) break;
    if (clock.seconds() >= opt.time_limit) {
      res.status = SolveStatus::kTimeLimit;
      break;
    }
  }
  return res;
}

struct IoaResult {
  Termination reason = Termination::kInfeasible;
  double lb = -kInf;
  double ub = kInf;
  double gap_pct = kInf;
  std::vector<double> incumbent;  // original-model variables
  std::vector<RegimeVars> regimes;
  std::vector<TraceRecord> trace;
  int iterations = 0;
  int milp_solves = 0;
  double seconds = 0.0;
  std::vector<int> set_sizes;

  bool has_incumbent() const { return !incumbent.empty(); }
};

// Outer loop: solve the relaxation, keep the best true objective, add the
// candidate arguments to every term's set, and stop on the relative gap,
// on a repeated point vector, or on the time limit.
inline IoaResult ioa_solve(const Problem& problem, const IoaOptions& opt = {}) {
  if (!(opt.epsilon > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  problem.validate();
  Stopwatch clock;
  IoaState state;
  init_state(problem, opt, state);
  IoaResult out;
  problem.original_model(&out.regimes);

  auto finish = [&](Termination why) {
    out.reason = why;
    out.lb = state.lb;
    out.ub = state.ub;
    out.gap_pct = gap_percent(state.lb, state.ub);
    out.incumbent = state.incumbent;
    out.trace = state.trace;
    out.milp_solves = state.milp_solves;
    out.iterations = state.iteration;
    out.seconds = clock.seconds();
    for (const auto& s : state.sets) out.set_sizes.push_back(s.size());
    return out;
  };

  for (;;) {
    if (state.iteration >= opt.max_outer_iterations)
      return finish(Termination::kIterationLimit);
    InnerResult inner = cutting_plane_solve(problem, state, opt, clock);
    if (inner.status == milp::SolveStatus::kInfeasible ||
        inner.status == milp::SolveStatus::kUnbounded) {
      if (state.iteration == 0 && inner.status == milp::SolveStatus::kInfeasible)
        return finish(Termination::kInfeasible);
      if (inner.status == milp::SolveStatus::kUnbounded)
        throw Error(ErrorCode::kInvalidModel, "relaxation is unbounded");
      throw Error(ErrorCode::kNumerical, "relaxation became infeasible");
    }
    ++state.iteration;
    state.lb = std::max(state.lb, inner.lb);

    int added = 0;
    if (!inner.candidate.empty())
      for (size_t j = 0; j < state.sets.size(); ++j)
        added += state.sets[j].add(inner.candidate[out.regimes[j].z.index]) ? 1 : 0;

    TraceRecord rec;
    rec.iteration = state.iteration;
    rec.lb = state.lb;
    rec.ub = state.ub;
    rec.gap_pct = gap_percent(state.lb, state.ub);
    rec.seconds = clock.seconds();
    rec.points_added = added;
    rec.raw_lb = inner.lb;
    rec.inner_iterations = inner.iterations;
    state.trace.push_back(rec);
    if (opt.on_iteration) opt.on_iteration(rec);

    const double tiny = 1e-9 * std::max(1.0, std::fabs(state.lb));
    if (relative_gap(state.lb, state.ub) <= opt.epsilon || state.ub - state.lb <= tiny)
      return finish(Termination::kGap);
    if (inner.status == milp::SolveStatus::kTimeLimit || clock.seconds() >= opt.time_limit)
      return finish(Termination::kTimeLimit);
    if (inner.candidate.empty())
      throw Error(ErrorCode::kNumerical, "relaxation returned no solution");
    if (added == 0) return finish(Termination::kFixedPoint);
  }
}

// Regime-weighted recombination check: sum of l0 cap + l1 cup against the
// sum of phi over active terms. Returns the relative mismatch.
inline double recombination_error(const Problem& problem,
                                  const std::vector<RegimeVars>& regimes,
                                  const std::vector<double>& x) {
  double split = 0.0, direct = 0.0;
  for (size_t j = 0; j < problem.sterms.size(); ++j) {
    const SplitPair pair(problem.sterms[j].curve);
    const double z = std::clamp(x[regimes[j].z.index], pair.lower(), pair.upper());
    const double l0 = x[regimes[j].l0.index], l1 = x[regimes[j].l1.index];
    split += Problem::term_cost(pair, z, l0, l1);
    if (l0 > 0.5 || l1 > 0.5) direct += pair.curve()(z);
  }
  return std::fabs(split - direct) / std::max(1.0, std::fabs(direct));
}

}  // namespace ioa
