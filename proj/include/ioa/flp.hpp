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

// Capacitated facility location with multi-sourcing and an inverse-S
// production cost per facility.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/milp/model.hpp"
#include "ioa/problem.hpp"
#include "ioa/scurve.hpp"

namespace ioa {

struct Facility {
  double fixed_cost = 0.0;
  double capacity = 0.0;
  double x = 0.0, y = 0.0;
  CurveSpec curve;  // deflection and upper carry z0 and K
};

struct Customer {
  double demand = 0.0;
  double x = 0.0, y = 0.0;
};

struct FlpMeta {
  std::string id;
  std::string set;          // generator family, empty for hand-made data
  std::uint64_t seed = 0;
  int ftype = 0;            // 1..3, 0 when the curves are arbitrary
  int cost = 0;             // 1..4, 0 when not a generated configuration
  double beta = 0.0;
};

struct FlpInstance {
  FlpMeta meta;
  std::vector<Facility> facilities;
  std::vector<Customer> customers;
  // transport[i][j]: cost per unit shipped from facility j to customer i.
  std::vector<std::vector<double>> transport;

  int n() const { return static_cast<int>(facilities.size()); }
  int m() const { return static_cast<int>(customers.size()); }
  double total_capacity() const {
    double s = 0.0;
    for (const auto& f : facilities) s += f.capacity;
    return s;
  }
  double total_demand() const {
    double s = 0.0;
    for (const auto& c : customers) s += c.demand;
    return s;
  }

  void validate() const {
    if (facilities.empty())
      throw Error(ErrorCode::kInvalidModel, "instance has no facilities");
    if (static_cast<int>(transport.size()) != m())
      throw Error(ErrorCode::kInvalidModel, "transport needs one row per customer");
    for (int i = 0; i < m(); ++i) {
      if (static_cast<int>(transport[i].size()) != n())
        throw Error(ErrorCode::kInvalidModel,
                    "transport row " + std::to_string(i) + " needs one entry per facility");
      if (!(customers[i].demand >= 0.0))
        throw Error(ErrorCode::kInvalidModel, "negative demand of customer " + std::to_string(i));
      for (double c : transport[i])
        if (!(c >= 0.0) || !std::isfinite(c))
          throw Error(ErrorCode::kInvalidModel, "transport costs must be finite and >= 0");
    }
    for (int j = 0; j < n(); ++j) {
      const auto& f = facilities[j];
      if (!(f.fixed_cost >= 0.0) || !(f.capacity >= 0.0))
        throw Error(ErrorCode::kInvalidModel,
                    "facility " + std::to_string(j) + " has a negative cost or capacity");
    }
  }
};

// Table 1 cost settings for a facility of capacity K and deflection z0.
// Structures 2 and 4 leave the curve unchanged (they scale F and c).
inline CurveSpec table1_spec(int ftype, int structure, double capacity, double z0) {
  if (ftype < 1 || ftype > 3)
    throw Error(ErrorCode::kInvalidArgument, "function type must be 1, 2 or 3");
  if (structure < 1 || structure > 4)
    throw Error(ErrorCode::kInvalidArgument, "cost structure must be 1..4");
  const double k = structure == 3 ? 10.0 : 1.0;
  CurveSpec s;
  s.lower = 0.0;
  s.upper = capacity;
  s.deflection = z0;
  switch (ftype) {
    case 1:
      s.kind = CurveKind::kPowerPower;
      s.a1 = 40.0 * k;
      s.b1 = 0.5;
      s.a2 = 0.5 * k;
      s.b2 = 2.0;
      break;
    case 2:
      s.kind = CurveKind::kPowerHyperbolic;
      s.a1 = 40.0 * k;
      s.b1 = 0.5;
      s.a2 = 20.0 * k * std::sqrt(z0);
      break;
    default:
      s.kind = CurveKind::kCubic;
      s.a = 1e-4 * k;
      s.eps = 0.0;
      s.w = s.a * z0 * z0 * z0;
      break;
  }
  return s;
}

struct FlpWeights {
  double alpha = 1.0;  // transport
  double theta = 1.0;  // production
  // Deflection as a fraction of capacity; unset keeps the instance curves.
  std::optional<double> beta;
};

struct FlpProblem {
  Problem problem;
  std::vector<std::vector<milp::VarId>> x;  // [i][j]
  std::vector<milp::VarId> z, l0, l1, open;
  std::vector<SCurve> unit_curves;  // before the theta factor
};

inline SCurve facility_curve(const FlpInstance& inst, int j,
                             const std::optional<double>& beta) {
  const Facility& f = inst.facilities[j];
  CurveSpec spec = f.curve;
  if (beta) {
    if (!(*beta > 0.0 && *beta < 1.0))
      throw Error(ErrorCode::kInvalidArgument, "beta must lie in (0, 1)");
    const double z0 = *beta * spec.upper;
    if (inst.meta.ftype >= 1 && inst.meta.ftype <= 3 && inst.meta.cost >= 1) {
      const double scale = spec.scale;
      spec = table1_spec(inst.meta.ftype, inst.meta.cost, spec.upper, z0);
      spec.scale = scale;
    } else {
      spec.deflection = z0;
    }
  }
  return build_scurve(spec);
}

// min sum F_j open_j + alpha sum c_ij x_ij + theta sum phi_j(z_j)
// s.t. sum_j x_ij >= d_i, z_j >= sum_i x_ij, open_j = l0_j + l1_j,
// plus the regime rows z0 l1 <= z <= K l1 + z0 l0 added by the problem.
// With strong_links, each flow also gets x_ij <= min(d_i, K_j) open_j. The
// rows are implied by the others for integral open_j and only tighten the
// relaxation.
inline FlpProblem build_problem(const FlpInstance& inst, const FlpWeights& w = {},
                                bool strong_links = true) {
  using namespace milp;
  inst.validate();
  if (!(w.alpha > 0.0) || !(w.theta > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "alpha and theta must be positive");
  if (inst.total_capacity() < inst.total_demand())
    throw Error(ErrorCode::kInfeasible, "total capacity is below total demand");
  FlpProblem fp;
  MilpModel& m = fp.problem.base;
  const int n = inst.n(), mm = inst.m();
  fp.x.assign(mm, std::vector<VarId>(n));
  for (int i = 0; i < mm; ++i)
    for (int j = 0; j < n; ++j) {
      fp.x[i][j] = m.add_continuous("x_" + std::to_string(i) + "_" + std::to_string(j),
                                    0.0, inst.customers[i].demand);
      m.set_objective_coef(fp.x[i][j], w.alpha * inst.transport[i][j]);
    }
  for (int j = 0; j < n; ++j) {
    const std::string tag = "_" + std::to_string(j);
    SCurve curve = facility_curve(inst, j, w.beta);
    fp.unit_curves.push_back(curve);
    fp.z.push_back(m.add_continuous("z" + tag, 0.0, curve.model_upper()));
    fp.l0.push_back(m.add_binary("l0" + tag));
    fp.l1.push_back(m.add_binary("l1" + tag));
    fp.open.push_back(m.add_binary("open" + tag));
    m.set_objective_coef(fp.open[j], inst.facilities[j].fixed_cost);
    fp.problem.sterms.push_back({"facility" + tag, fp.z[j], curve.scaled(w.theta),
                                 fp.l0[j], fp.l1[j]});
  }
  for (int i = 0; i < mm; ++i) {
    std::vector<Term> row;
    for (int j = 0; j < n; ++j) row.push_back({fp.x[i][j], 1.0});
    m.add_constraint("demand_" + std::to_string(i), row, Sense::kGreaterEqual,
                     inst.customers[i].demand);
  }
  for (int j = 0; j < n; ++j) {
    const std::string tag = "_" + std::to_string(j);
    std::vector<Term> row{{fp.z[j], 1.0}};
    for (int i = 0; i < mm; ++i) row.push_back({fp.x[i][j], -1.0});
    m.add_constraint("supply" + tag, row, Sense::kGreaterEqual, 0.0);
    m.add_constraint("open" + tag, {{fp.open[j], 1.0}, {fp.l0[j], -1.0}, {fp.l1[j], -1.0}},
                     Sense::kEqual, 0.0);
  }
  if (strong_links)
    for (int i = 0; i < mm; ++i)
      for (int j = 0; j < n; ++j)
        m.add_constraint("link_" + std::to_string(i) + "_" + std::to_string(j),
                         {{fp.x[i][j], 1.0},
                          {fp.open[j], -std::min(inst.customers[i].demand,
                                                 inst.facilities[j].capacity)}},
                         Sense::kLessEqual, 0.0);
  return fp;
}

struct FlpSolution {
  std::vector<int> open, l0, l1;
  std::vector<double> z;
  std::vector<std::vector<double>> flows;  // [i][j]
  double objective = 0.0;
  double fixed = 0.0, transport = 0.0, production = 0.0;
  int n_e = 0, n_d = 0, n_T = 0;
};

inline constexpr double kFlpFeasTol = 1e-6;

// Checks an original-model assignment and recomputes its cost from the
// instance data. Throws kInfeasible naming the worst row, kNumerical when
// the split recombination or the solver objective disagrees.
inline FlpSolution summarize(const FlpProblem& fp, const FlpInstance& inst,
                             const FlpWeights& w, const std::vector<double>& x,
                             std::optional<double> solver_objective = std::nullopt) {
  using namespace milp;
  std::vector<RegimeVars> regimes;
  const MilpModel model = fp.problem.original_model(&regimes);
  if (static_cast<int>(x.size()) != model.num_vars())
    throw Error(ErrorCode::kInvalidArgument, "assignment size does not match the model");
  {
    double worst = 0.0;
    std::string name;
    for (const auto& row : model.rows()) {
      const double a = MilpModel::activity(row, x);
      double v = 0.0;
      if (row.sense != Sense::kGreaterEqual) v = std::max(v, a - row.rhs);
      if (row.sense != Sense::kLessEqual) v = std::max(v, row.rhs - a);
      v /= std::max(1.0, std::fabs(row.rhs));
      if (v > worst) {
        worst = v;
        name = row.name;
      }
    }
    if (worst > kFlpFeasTol)
      throw Error(ErrorCode::kInfeasible,
                  "row " + name + " violated by " + std::to_string(worst));
    for (int j = 0; j < model.num_vars(); ++j) {
      const auto& v = model.vars()[j];
      const double tol = kFlpFeasTol * std::max(1.0, std::fabs(x[j]));
      if (x[j] < v.lower - tol || x[j] > v.upper + tol)
        throw Error(ErrorCode::kInfeasible, "bound of " + v.name + " violated");
      if (v.type != VarType::kContinuous && std::fabs(x[j] - std::round(x[j])) > 1e-5)
        throw Error(ErrorCode::kInfeasible, v.name + " is not integral");
    }
  }

  FlpSolution s;
  const int n = inst.n(), mm = inst.m();
  s.flows.assign(mm, std::vector<double>(n, 0.0));
  double split = 0.0, direct = 0.0;
  for (int j = 0; j < n; ++j) {
    const int o = x[fp.open[j].index] > 0.5, a = x[fp.l0[j].index] > 0.5,
              b = x[fp.l1[j].index] > 0.5;
    s.open.push_back(o);
    s.l0.push_back(a);
    s.l1.push_back(b);
    const SplitPair pair(fp.problem.sterms[j].curve);
    const double z = std::clamp(x[fp.z[j].index], pair.lower(), pair.upper());
    s.z.push_back(z);
    s.n_e += a;
    s.n_d += b;
    s.n_T += o;
    s.fixed += o * inst.facilities[j].fixed_cost;
    split += Problem::term_cost(pair, z, a, b);
    if (o) direct += pair.curve()(z);
  }
  for (int i = 0; i < mm; ++i)
    for (int j = 0; j < n; ++j) {
      s.flows[i][j] = x[fp.x[i][j].index];
      s.transport += w.alpha * inst.transport[i][j] * s.flows[i][j];
    }
  if (std::fabs(split - direct) > 1e-6 * std::max(1.0, std::fabs(direct)))
    throw Error(ErrorCode::kNumerical, "split costs do not recombine to phi");
  s.production = direct;
  s.objective = s.fixed + s.transport + s.production;
  if (solver_objective &&
      std::fabs(*solver_objective - s.objective) >
          1e-5 * std::max(1.0, std::fabs(s.objective)))
    throw Error(ErrorCode::kNumerical, "solver objective " + std::to_string(*solver_objective) +
                                           " differs from recomputed " +
                                           std::to_string(s.objective));
  return s;
}

}  // namespace ioa
