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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Arguments restrict the run to the
// listed criterion numbers. IOA_EXTERNAL_BACKEND, when set, adds the
// external-backend target to criterion 8.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ioa/approx.hpp"
#include "ioa/datagen.hpp"
#include "ioa/flp.hpp"
#include "ioa/ioa.hpp"
#include "ioa/milp/backend.hpp"
#include "ioa/milp/branch_and_bound.hpp"
#include "ioa/milp/lp_format.hpp"
#include "ioa/oracle.hpp"
#include "random_models.hpp"

namespace {

using namespace ioa;

struct Verdict {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Traces of the solves in criteria 1 and 4, audited by criterion 5.
std::vector<std::pair<std::string, std::vector<TraceRecord>>> g_traces;
// Recombination errors of every accepted FLP solution (criterion 9).
std::vector<std::pair<std::string, double>> g_recombination;

void audit_flp(const std::string& name, const FlpProblem& fp, const FlpInstance& inst,
               const IoaResult& r, Verdict& v) {
  try {
    summarize(fp, inst, {}, r.incumbent, r.ub);
    g_recombination.push_back({name, recombination_error(fp.problem, r.regimes, r.incumbent)});
  } catch (const Error& e) {
    g_recombination.push_back({name, kInf});
    v.fail(name + ": " + e.what());
  }
}

Verdict criterion1() {
  Verdict v;
  IoaOptions opt;
  opt.epsilon = 1e-4;
  const IoaResult r = ioa_solve(testing::cubic_example(), opt);
  g_traces.push_back({"appendix-b", r.trace});
  if (!r.has_incumbent()) {
    v.fail("no incumbent");
    return v;
  }
  const double x1 = r.incumbent[0], x2 = r.incumbent[1];
  v.detail = fmt("objective %.6f at (%.4f, %.4f) in %.3f s", r.ub, x1, x2, r.seconds);
  if (std::fabs(r.ub + 52.875) > 1e-3 || std::fabs(x1 - 1.5) > 1e-3 || std::fabs(x2 - 4.5) > 1e-3 ||
      r.seconds >= 10.0)
    v.ok = false;
  return v;
}

Verdict criterion2() {
  Verdict v;
  const double g = gap_percent(-108.214, -52.875);
  v.detail = fmt("gap %.4f%%", g);
  v.ok = std::fabs(g - 51.14) <= 0.01;
  return v;
}

Verdict criterion3() {
  Verdict v;
  const SplitPair p(build_scurve(testing::cubic_example_spec()));
  v.detail = fmt("(m0, m1) = (%.17g, %.17g)", p.m0(), p.m1());
  v.ok = p.m0() == 125.0 && p.m1() == 133.0;
  return v;
}

Verdict criterion4() {
  Verdict v;
  Stopwatch clock;
  std::set<std::pair<int, int>> configs;
  int agreed = 0;
  for (int k = 0; k < 20; ++k) {
    GenSpec g;
    g.n = 2 + (k / 2) % 2;
    g.m = k % 2 ? 6 : 4;
    if (g.m < g.n) g.m = g.n;
    g.seed = static_cast<std::uint64_t>(100 + k);
    g.ftype = 1 + (k % 12) / 4;
    g.cost = 1 + k % 4;
    configs.insert({g.ftype, g.cost});
    const FlpInstance inst = generate(g);
    const FlpProblem fp = build_problem(inst);
    IoaOptions opt;
    opt.epsilon = 1e-3;
    const IoaResult r = ioa_solve(fp.problem, opt);
    g_traces.push_back({inst.meta.id, r.trace});
    const OracleResult o = oracle_solve(fp.problem, 512);
    if (!r.has_incumbent() || o.status != milp::SolveStatus::kOptimal) {
      v.fail(inst.meta.id + ": missing solution");
      continue;
    }
    audit_flp(inst.meta.id, fp, inst, r, v);
    const double tol = std::max(1e-3 * std::fabs(o.objective), o.grid_slack);
    if (std::fabs(r.ub - o.objective) <= tol) {
      ++agreed;
    } else {
      v.fail(inst.meta.id + fmt(": ioa %.6f oracle %.6f tol %.6f", r.ub, o.objective, tol));
    }
  }
  if (configs.size() != 12) v.fail("not every configuration was covered");
  const double secs = clock.seconds();
  if (secs >= 900.0) v.fail(fmt("suite took %.1f s", secs));
  if (v.ok) v.detail = fmt("%.0f/20 agree, 12 configs, %.1f s", agreed, secs);
  return v;
}

Verdict criterion5() {
  Verdict v;
  if (g_traces.empty()) {
    v.fail("needs criteria 1 and 4 in the same run");
    return v;
  }
  int iterations = 0;
  for (const auto& [name, trace] : g_traces) {
    for (size_t k = 0; k < trace.size(); ++k) {
      ++iterations;
      if (k > 0 && trace[k].lb < trace[k - 1].lb) v.fail(name + ": LB decreased");
      if (k > 0 && trace[k].ub > trace[k - 1].ub) v.fail(name + ": UB increased");
      if (std::isfinite(trace[k].ub) &&
          trace[k].ub < trace[k].lb - 1e-6 * std::max(1.0, std::fabs(trace[k].lb)))
        v.fail(name + ": UB below LB");
    }
  }
  if (v.ok) v.detail = fmt("%.0f solves, %.0f iterations", g_traces.size(), iterations);
  return v;
}

double kkt_zeta(const ApproxSet& set, const SplitPair& pair, double z) {
  using namespace milp;
  MilpModel m;
  TermVars h;
  h.z = m.add_continuous("z", z, z);
  h.l0 = m.add_continuous("l0", 1.0, 1.0);
  h.l1 = m.add_continuous("l1", 0.0, 0.0);
  h.w = m.add_continuous("w", -kInf, kInf);
  h.p = m.add_continuous("p", 0.0, 0.0);
  const KktBlock b = emit_kkt(set, pair, m, 0, h);
  m.set_objective_coef(b.zeta, 1.0);
  const MilpSolution s = solve_milp(m);
  return s.status == SolveStatus::kOptimal ? s.value(b.zeta) : kInf;
}

Verdict criterion6() {
  Verdict v;
  std::mt19937_64 rng(606);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int ftype = 1 + trial % 3, structure = 1 + (trial / 3) % 4;
    std::uniform_real_distribution<double> kd(100.0, 500.0);
    const double k = kd(rng);
    const SplitPair p(build_scurve(table1_spec(ftype, structure, k, 0.5 * k)));
    std::uniform_real_distribution<double> zd(p.lower(), p.upper());
    ApproxSet s = init_set(p, 0, trial % 2 == 0);
    const int tau = 2 + static_cast<int>(rng() % 5);
    while (s.size() < tau) s.add(zd(rng));
    const double z = zd(rng);
    const double err = std::fabs(kkt_zeta(s, p, z) - inner_value(s, z));
    worst = std::max(worst, err);
    if (!(err <= 1e-6)) v.fail(fmt("trial %.0f: |zeta - inner| = %.3g", trial, err));
  }
  if (v.ok) v.detail = fmt("200 pairs, max error %.3g", worst);
  return v;
}

Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(707);
  double worst_inner = -kInf, worst_cut = -kInf;
  for (int ftype = 1; ftype <= 3; ++ftype)
    for (int structure = 1; structure <= 4; ++structure) {
      const SplitPair p(build_scurve(table1_spec(ftype, structure, 300.0, 150.0)));
      std::uniform_real_distribution<double> zd(p.lower(), p.upper());
      ApproxSet set = init_set(p, 0);
      CutPool pool = apriori_cuts(p, 5);
      for (int k = 0; k < 6; ++k) {
        set.add(zd(rng));
        pool.add(tangent_cut(p, zd(rng)));
      }
      for (int s = 0; s < 1000; ++s) {
        const double z = zd(rng);
        worst_inner = std::max(worst_inner, inner_value(set, z) - p.cap(z));
        for (const auto& c : pool.cuts()) worst_cut = std::max(worst_cut, c(z) - p.cup(z));
      }
    }
  v.detail = fmt("max(inner - cap) = %.3g, max(cut - cup) = %.3g", worst_inner, worst_cut);
  v.ok = worst_inner <= 1e-8 && worst_cut <= 1e-8;
  return v;
}

Verdict criterion8() {
  Verdict v;
  const char* ext = std::getenv("IOA_EXTERNAL_BACKEND");
  std::ostringstream detail;
  for (int seed = 1; seed <= 3; ++seed) {
    GenSpec g;
    g.n = 10;
    g.m = 50;
    g.ftype = 2;
    g.cost = 1;
    g.seed = static_cast<std::uint64_t>(seed);
    const FlpInstance inst = generate(g);
    const FlpProblem fp = build_problem(inst);
    IoaOptions opt;
    opt.epsilon = 0.01;
    opt.time_limit = 1800.0;
    const IoaResult r = ioa_solve(fp.problem, opt);
    if (r.has_incumbent()) audit_flp(inst.meta.id, fp, inst, r, v);
    detail << (seed > 1 ? "; " : "") << "seed " << seed << ": gap "
           << fmt("%.3f%% in %.1f s", r.gap_pct, r.seconds);
    if (!(r.gap_pct <= 1.0) || r.seconds > 1800.0)
      v.fail(fmt("seed %.0f: gap %.3f%% after %.1f s", seed, r.gap_pct, r.seconds));
    if (ext && *ext) {
      opt.epsilon = 1e-4;
      opt.backend = milp::make_backend(ext);
      const IoaResult x = ioa_solve(fp.problem, opt);
      detail << fmt(" (external gap %.4f%%)", x.gap_pct);
      if (!(x.gap_pct <= 0.01)) v.fail(fmt("seed %.0f: external gap %.4f%%", seed, x.gap_pct));
    }
  }
  if (v.ok) v.detail = detail.str();
  return v;
}

Verdict criterion9() {
  Verdict v;
  if (g_recombination.empty()) {
    v.fail("needs criteria 4 or 8 in the same run");
    return v;
  }
  double worst = 0.0;
  for (const auto& [name, err] : g_recombination) {
    worst = std::max(worst, err);
    if (!(err <= 1e-6)) v.fail(name + fmt(": recombination error %.3g", err));
  }
  if (v.ok) v.detail = fmt("%.0f solutions, max error %.3g", g_recombination.size(), worst);
  return v;
}

bool identical(const milp::MilpModel& a, const milp::MilpModel& b) {
  if (a.num_vars() != b.num_vars() || a.num_rows() != b.num_rows()) return false;
  if (a.objective_offset() != b.objective_offset() || a.sos1().size() != b.sos1().size()) return false;
  for (int j = 0; j < a.num_vars(); ++j)
    if (a.vars()[j].lower != b.vars()[j].lower || a.vars()[j].upper != b.vars()[j].upper ||
        a.vars()[j].type != b.vars()[j].type || a.objective()[j] != b.objective()[j])
      return false;
  for (int i = 0; i < a.num_rows(); ++i) {
    const auto &ra = a.rows()[i], &rb = b.rows()[i];
    if (ra.sense != rb.sense || ra.rhs != rb.rhs || ra.terms.size() != rb.terms.size())
      return false;
    for (size_t k = 0; k < ra.terms.size(); ++k)
      if (ra.terms[k].var.index != rb.terms[k].var.index || ra.terms[k].coef != rb.terms[k].coef)
        return false;
  }
  return true;
}

Verdict criterion10() {
  Verdict v;
  std::mt19937_64 rng(1010);
  int infeasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int bins = 1 + trial % 12;
    const milp::MilpModel m = testing::random_milp(rng, bins, trial % 4, 3 + trial % 5);
    const double ref = testing::enumerate_binaries(m);
    const milp::MilpSolution s = milp::solve_milp(m);
    if (!std::isfinite(ref)) {
      ++infeasible;
      if (s.status != milp::SolveStatus::kInfeasible) v.fail(fmt("trial %.0f: expected infeasible", trial));
      continue;
    }
    if (s.status != milp::SolveStatus::kOptimal ||
        std::fabs(s.objective - ref) > 1e-6 * std::max(1.0, std::fabs(ref)))
      v.fail(fmt("trial %.0f: solver %.9g enumeration %.9g", trial, s.objective, ref));

    std::stringstream lp;
    milp::write_lp(lp, m);
    if (!identical(m, milp::read_lp(lp))) v.fail(fmt("trial %.0f: LP round trip differs", trial));
  }
  // The Mod-S^c model of Appendix B round-trips as well.
  IoaState st;
  init_state(testing::cubic_example(), {}, st);
  const milp::MilpModel mod = assemble_mod_sc(testing::cubic_example(), st).model;
  std::stringstream lp;
  milp::write_lp(lp, mod);
  if (!identical(mod, milp::read_lp(lp))) v.fail("Mod-S^c LP round trip differs");
  if (v.ok) v.detail = fmt("100 models (%.0f infeasible) match enumeration; LP round trips identical", infeasible);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Verdict()>>> all{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  std::set<int> pick;
  for (int a = 1; a < argc; ++a) pick.insert(std::atoi(argv[a]));
  int failed = 0;
  for (const auto& [id, fn] : all) {
    if (!pick.empty() && !pick.count(id)) continue;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s\n", v.ok ? "PASS" : "FAIL", id, v.detail.c_str());
    std::fflush(stdout);
    failed += v.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
