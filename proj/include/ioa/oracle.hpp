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

// Brute-force reference solver: every phi is replaced by its piecewise
// linear interpolation on a uniform grid, one binary per segment.

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/milp/backend.hpp"
#include "ioa/problem.hpp"

namespace ioa {

inline constexpr int kOracleMaxTerms = 4;
inline constexpr long kOracleMaxBinaries = 20000;

struct OracleResult {
  milp::SolveStatus status = milp::SolveStatus::kNumericalError;
  double objective = kInf;       // grid optimum
  double true_objective = kInf;  // original objective at the grid optimum
  double grid_slack = 0.0;       // bound on |interpolant - phi| summed over terms
  std::vector<double> values;    // original-model variables
  std::vector<RegimeVars> regimes;
};

// Largest sampled |interpolant - phi| over a uniform grid of `points` nodes.
inline double interpolation_error(const SCurve& curve, int points) {
  const double lo = curve.lower(), hi = curve.model_upper();
  const double h = (hi - lo) / (points - 1);
  constexpr int kSamples = 8;
  double err = 0.0;
  for (int s = 0; s + 1 < points; ++s) {
    const double a = lo + h * s, b = s + 2 == points ? hi : lo + h * (s + 1);
    const double fa = curve(a), fb = curve(b);
    for (int k = 1; k < kSamples; ++k) {
      const double t = static_cast<double>(k) / kSamples;
      const double z = a + t * (b - a);
      err = std::max(err, std::fabs(fa + t * (fb - fa) - curve(z)));
    }
  }
  return err;
}

inline OracleResult oracle_solve(const Problem& problem, int resolution,
                                 const milp::MilpLimits& limits = {},
                                 std::shared_ptr<const milp::Backend> backend = nullptr) {
  using namespace milp;
  if (resolution < 16)
    throw Error(ErrorCode::kInvalidArgument, "oracle resolution must be >= 16");
  if (problem.sterms.size() > static_cast<size_t>(kOracleMaxTerms))
    throw Error(ErrorCode::kInvalidArgument, "oracle handles at most 4 terms");
  if (static_cast<long>(resolution) * static_cast<long>(problem.sterms.size()) >
      kOracleMaxBinaries)
    throw Error(ErrorCode::kResource, "oracle grid too fine");
  problem.validate();
  if (!backend) backend = std::make_shared<BuiltinBackend>();

  OracleResult out;
  MilpModel m = problem.original_model(&out.regimes);
  const int original_vars = m.num_vars();
  for (size_t j = 0; j < problem.sterms.size(); ++j) {
    const SCurve& curve = problem.sterms[j].curve;
    const RegimeVars& r = out.regimes[j];
    const std::string tag = "_" + std::to_string(j);
    const double lo = curve.lower(), hi = curve.model_upper();
    const int segments = resolution - 1;
    const double h = (hi - lo) / segments;
    std::vector<Term> pick, link{{r.z, -1.0}};
    std::vector<VarId> ys;
    for (int s = 0; s < segments; ++s) {
      const std::string st = tag + "_" + std::to_string(s);
      const double a = lo + h * s, b = s + 1 == segments ? hi : lo + h * (s + 1);
      const VarId y = m.add_binary("y" + st);
      const VarId t = m.add_continuous("t" + st, 0.0, 1.0);
      m.set_objective_coef(y, curve(a));
      m.set_objective_coef(t, curve(b) - curve(a));
      m.add_constraint("seg" + st, {{t, 1.0}, {y, -1.0}}, Sense::kLessEqual, 0.0);
      pick.push_back({y, 1.0});
      link.push_back({y, a});
      link.push_back({t, b - a});
      ys.push_back(y);
    }
    m.add_constraint("pick" + tag, pick, Sense::kEqual, 1.0);
    m.add_constraint("grid" + tag, link, Sense::kEqual, 0.0);
    m.add_sos1(ys);
    // A closed hosted term costs nothing, while the interpolant charges
    // phi(lower) there: add phi(lower) (l0 + l1 - 1).
    if (problem.sterms[j].hosted()) {
      const double f0 = curve(lo);
      if (f0 != 0.0) {
        m.add_objective_coef(r.l0, f0);
        m.add_objective_coef(r.l1, f0);
        m.set_objective_offset(m.objective_offset() - f0);
      }
    }
    out.grid_slack += interpolation_error(curve, resolution);
  }
  MilpSolution sol = backend->solve(m, limits, nullptr);
  out.status = sol.status;
  if (!sol.has_solution()) return out;
  out.objective = sol.objective;
  out.values.assign(sol.values.begin(), sol.values.begin() + original_vars);
  out.true_objective = problem.evaluate(out.values, out.regimes);
  return out;
}

}  // namespace ioa
