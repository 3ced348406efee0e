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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ioa/common.hpp"

namespace ioa::milp {

struct VarId {
  int index = -1;
  bool valid() const { return index >= 0; }
  friend bool operator==(VarId, VarId) = default;
};

struct RowId {
  int index = -1;
  bool valid() const { return index >= 0; }
  friend bool operator==(RowId, RowId) = default;
};

enum class VarType { kContinuous, kBinary, kInteger };
enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  VarType type = VarType::kContinuous;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
  VarId var;
  double coef = 0.0;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Minimisation MILP. Mutable while being assembled, then handed by const
// reference to a solver.
class MilpModel {
 public:
  VarId add_variable(std::string name, double lower, double upper,
                     VarType type = VarType::kContinuous) {
    if (type == VarType::kBinary) {
      lower = std::max(lower, 0.0);
      upper = std::min(upper, 1.0);
    }
    VarId id{static_cast<int>(vars_.size())};
    index_.emplace(name, id.index);
    vars_.push_back({std::move(name), lower, upper, type});
    objective_.push_back(0.0);
    return id;
  }
  VarId add_continuous(std::string name, double lower, double upper) {
    return add_variable(std::move(name), lower, upper, VarType::kContinuous);
  }
  VarId add_binary(std::string name) {
    return add_variable(std::move(name), 0.0, 1.0, VarType::kBinary);
  }

  RowId add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                       double rhs) {
    RowId id{static_cast<int>(rows_.size())};
    rows_.push_back({std::move(name), std::move(terms), sense, rhs});
    return id;
  }

  void set_objective_coef(VarId v, double c) { objective_.at(v.index) = c; }
  void add_objective_coef(VarId v, double c) { objective_.at(v.index) += c; }
  void set_objective_offset(double c) { offset_ = c; }
  double objective_offset() const { return offset_; }

  // Ordered set of binaries of which at most one may be nonzero. The branch
  // and bound splits such a set in two halves instead of branching on a
  // single member.
  void add_sos1(std::vector<VarId> members) {
    sos1_.push_back(std::move(members));
  }
  const std::vector<std::vector<VarId>>& sos1() const { return sos1_; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& var(VarId v) const { return vars_.at(v.index); }
  Variable& var(VarId v) { return vars_.at(v.index); }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }
  std::vector<Constraint>& rows() { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  double objective_coef(VarId v) const { return objective_.at(v.index); }

  VarId find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? VarId{} : VarId{it->second};
  }

  bool is_integer(int j) const {
    return vars_[j].type != VarType::kContinuous;
  }
  int num_integer() const {
    int n = 0;
    for (int j = 0; j < num_vars(); ++j) n += is_integer(j);
    return n;
  }

  double evaluate_objective(const std::vector<double>& x) const {
    double v = offset_;
    for (int j = 0; j < num_vars(); ++j) v += objective_[j] * x[j];
    return v;
  }
  static double activity(const Constraint& row, const std::vector<double>& x) {
    double a = 0.0;
    for (const auto& t : row.terms) a += t.coef * x[t.var.index];
    return a;
  }

  // Largest violation of bounds, rows and integrality, scaled per row by
  // max(1, |rhs|).
  double max_violation(const std::vector<double>& x,
                       bool check_integrality = true) const {
    double worst = 0.0;
    for (int j = 0; j < num_vars(); ++j) {
      worst = std::max(worst, vars_[j].lower - x[j]);
      worst = std::max(worst, x[j] - vars_[j].upper);
      if (check_integrality && is_integer(j))
        worst = std::max(worst, std::fabs(x[j] - std::round(x[j])));
    }
    for (const auto& row : rows_) {
      const double a = activity(row, x);
      const double scale = std::max(1.0, std::fabs(row.rhs));
      double v = 0.0;
      if (row.sense != Sense::kGreaterEqual) v = std::max(v, a - row.rhs);
      if (row.sense != Sense::kLessEqual) v = std::max(v, row.rhs - a);
      worst = std::max(worst, v / scale);
    }
    return worst;
  }

  // Throws InvalidModel on dangling references, non-finite data or binary
  // bounds outside [0, 1].
  void validate() const {
    for (int j = 0; j < num_vars(); ++j) {
      const auto& v = vars_[j];
      if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower == kInf ||
          v.upper == -kInf)
        throw Error(ErrorCode::kInvalidModel, "bad bounds on " + v.name);
      if (v.type == VarType::kBinary && (v.lower < 0.0 || v.upper > 1.0))
        throw Error(ErrorCode::kInvalidModel,
                    "binary " + v.name + " has bounds outside [0,1]");
      if (!std::isfinite(objective_[j]))
        throw Error(ErrorCode::kInvalidModel,
                    "non-finite objective coefficient on " + v.name);
    }
    for (const auto& row : rows_) {
      if (!std::isfinite(row.rhs))
        throw Error(ErrorCode::kInvalidModel, "non-finite rhs in " + row.name);
      for (const auto& t : row.terms) {
        if (t.var.index < 0 || t.var.index >= num_vars())
          throw Error(ErrorCode::kInvalidModel,
                      "row " + row.name + " references an undeclared variable");
        if (!std::isfinite(t.coef))
          throw Error(ErrorCode::kInvalidModel,
                      "non-finite coefficient in " + row.name);
      }
    }
    for (const auto& set : sos1_)
      for (auto v : set)
        if (v.index < 0 || v.index >= num_vars() || !is_integer(v.index))
          throw Error(ErrorCode::kInvalidModel,
                      "SOS1 member must be a declared binary");
  }

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<double> objective_;
  std::vector<std::vector<VarId>> sos1_;
  std::unordered_map<std::string, int> index_;
  double offset_ = 0.0;
};

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kTimeLimit,
  kNodeLimit,
  kNumericalError,
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kUnbounded: return "Unbounded";
    case SolveStatus::kTimeLimit: return "TimeLimit";
    case SolveStatus::kNodeLimit: return "NodeLimit";
    case SolveStatus::kNumericalError: return "NumericalError";
  }
  return "Unknown";
}

struct MilpSolution {
  SolveStatus status = SolveStatus::kNumericalError;
  double objective = kInf;
  double best_bound = -kInf;
  std::vector<double> values;
  long nodes = 0;
  long lp_iterations = 0;
  double seconds = 0.0;

  bool has_solution() const { return !values.empty(); }
  double value(VarId v) const { return values.at(v.index); }
};

struct MilpLimits {
  double time_limit = kInf;
  double relative_gap = 1e-9;
  long node_limit = -1;
  double integrality_tolerance = 1e-6;
  double feasibility_tolerance = 1e-6;
};

}  // namespace ioa::milp
