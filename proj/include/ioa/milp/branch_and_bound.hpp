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

// LP-based branch and bound. Best-bound node selection with plunging into
// one child after every branching, most-fractional branching with ties
// broken by the lowest column index, and set branching for SOS1 groups.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/milp/model.hpp"
#include "ioa/milp/simplex.hpp"

namespace ioa::milp {

namespace bb_detail {

struct BoundChange {
  int var = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct Node {
  double bound = -kInf;
  long id = 0;
  int branch_var = -1;     // variable whose bound created this node
  bool branch_up = false;
  double branch_dist = 0;  // distance the LP value was pushed
  std::vector<BoundChange> changes;
  Basis basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace bb_detail

// Observer invoked whenever the incumbent or the global bound moves; used
// by tests to audit weak duality at every node event.
using NodeEventHook = std::function<void(double incumbent, double bound)>;

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, MilpLimits limits)
      : model_(model), limits_(limits), lp_(model) {}

  void set_event_hook(NodeEventHook hook) { hook_ = std::move(hook); }

  // Optional starting incumbent; ignored unless it is feasible.
  void set_start(const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != model_.num_vars()) return;
    if (model_.max_violation(x) > limits_.feasibility_tolerance) return;
    const double obj = model_.evaluate_objective(x);
    if (obj < incumbent_) {
      incumbent_ = obj;
      best_x_ = x;
    }
  }

  MilpSolution run() {
    using bb_detail::BoundChange;
    using bb_detail::Node;
    Stopwatch clock;
    const int n = model_.num_vars();
    root_lo_.resize(n);
    root_hi_.resize(n);
    for (int j = 0; j < n; ++j) {
      double lo = model_.vars()[j].lower, hi = model_.vars()[j].upper;
      if (model_.is_integer(j)) {
        if (std::isfinite(lo)) lo = std::ceil(lo - limits_.integrality_tolerance);
        if (std::isfinite(hi)) hi = std::floor(hi + limits_.integrality_tolerance);
      }
      root_lo_[j] = lo;
      root_hi_[j] = hi;
      cur_lo_.push_back(lo);
      cur_hi_.push_back(hi);
      if (lo > hi) {
        MilpSolution s;
        s.status = SolveStatus::kInfeasible;
        return s;
      }
      lp_.set_col_bounds(j, lo, hi);
    }
    gain_sum_[0].assign(n, 0.0);
    gain_sum_[1].assign(n, 0.0);
    gain_cnt_[0].assign(n, 0);
    gain_cnt_[1].assign(n, 0);
    sos_of_.assign(n, {-1, -1});
    for (int g = 0; g < static_cast<int>(model_.sos1().size()); ++g)
      for (int k = 0; k < static_cast<int>(model_.sos1()[g].size()); ++k)
        sos_of_[model_.sos1()[g][k].index] = {g, k};

    std::priority_queue<Node, std::vector<Node>, bb_detail::NodeOrder> open;
    long next_id = 0;
    bool stopped = false;
    bool numerical = false;
    double lost_bound = kInf;  // bounds of nodes dropped for numerical reasons
    SolveStatus stop_status = SolveStatus::kOptimal;

    Node current;
    current.id = next_id++;
    bool have_current = true;
    bool warm = true;  // the LP already holds the parent's basis

    auto global_bound = [&](double extra) {
      double b = std::min(extra, lost_bound);
      if (!open.empty()) b = std::min(b, open.top().bound);
      return std::min(b, incumbent_);
    };
    auto gap_closed = [&](double bound) {
      if (!std::isfinite(incumbent_)) return false;
      return incumbent_ - bound <=
             limits_.relative_gap * std::max(1.0, std::fabs(bound));
    };
    auto prune_threshold = [&]() {
      if (!std::isfinite(incumbent_)) return kInf;
      return incumbent_ -
             limits_.relative_gap * std::max(1.0, std::fabs(incumbent_));
    };

    while (true) {
      if (!have_current) {
        if (open.empty()) break;
        if (gap_closed(open.top().bound) ||
            open.top().bound >= prune_threshold()) {
          break;
        }
        current = open.top();
        open.pop();
        warm = false;
      }
      have_current = false;
      if (clock.seconds() > limits_.time_limit) {
        open.push(current);
        stopped = true;
        stop_status = SolveStatus::kTimeLimit;
        break;
      }
      if (limits_.node_limit >= 0 && nodes_ >= limits_.node_limit) {
        open.push(current);
        stopped = true;
        stop_status = SolveStatus::kNodeLimit;
        break;
      }
      if (current.bound >= prune_threshold()) continue;
      ++nodes_;

      if (!apply(current.changes)) continue;
      if (!warm && !current.basis.empty()) lp_.set_basis(current.basis);
      lp_.set_cutoff(prune_threshold() - model_.objective_offset());
      lp_.set_deadline(std::max(0.0, limits_.time_limit - clock.seconds()));
      LpStatus st = lp_.solve_dual();
      if (st == LpStatus::kNumerical || st == LpStatus::kIterationLimit) {
        lp_.slack_basis();
        st = lp_.solve_primal();
      }
      if (st == LpStatus::kTimeLimit) {
        open.push(current);
        stopped = true;
        stop_status = SolveStatus::kTimeLimit;
        break;
      }
      if (st == LpStatus::kUnbounded) {
        if (!std::isfinite(incumbent_) && nodes_ == 1) {
          MilpSolution s;
          s.status = SolveStatus::kUnbounded;
          s.objective = -kInf;
          s.nodes = nodes_;
          s.lp_iterations = lp_.iterations();
          s.seconds = clock.seconds();
          return s;
        }
        numerical = true;
        lost_bound = -kInf;
        continue;
      }
      if (st == LpStatus::kInfeasible || st == LpStatus::kCutoff) continue;
      if (st != LpStatus::kOptimal) {
        numerical = true;
        lost_bound = std::min(lost_bound, current.bound);
        continue;
      }
      const double obj = lp_.objective() + model_.objective_offset();
      if (current.branch_var >= 0)
        record_gain(current.branch_var, current.branch_up,
                    (obj - current.bound) / current.branch_dist);
      if (obj >= prune_threshold()) continue;
      std::vector<double> x = lp_.primal_values();

      int branch_var = most_fractional(x, limits_.integrality_tolerance);
      if (branch_var < 0) {
        // Integral within tolerance: polish by fixing the integers.
        const Basis keep = lp_.basis();
        std::vector<double> polished;
        const double pobj = polish(x, polished);
        apply(current.changes);
        lp_.set_basis(keep);
        const double tol = 1e-7 * std::max(1.0, std::fabs(obj));
        if (std::isfinite(pobj) && pobj <= obj + tol) {
          accept(pobj, polished);
          if (hook_) hook_(incumbent_, global_bound(obj));
          continue;
        }
        if (std::isfinite(pobj)) accept(pobj, polished);
        // The LP point is integral only within tolerance. Split a free
        // integer column; with every integer fixed the node is infeasible.
        branch_var = most_fractional(x, 1e-12, true);
        if (branch_var < 0) branch_var = first_free_integer();
        if (branch_var < 0) continue;
      } else {
        const long every = std::isfinite(incumbent_) ? kDiveEvery : kDiveEvery / 5;
        if (nodes_ == 1 || nodes_ % every == 0) {
          const Basis keep = lp_.basis();
          dive(current.changes, x);
          apply(current.changes);
          lp_.set_basis(keep);
        }
        branch_var = select_branch(x, obj, lp_.basis(), prune_threshold());
      }

      // Branch.
      Node down, up;
      down.bound = up.bound = obj;
      down.changes = up.changes = current.changes;
      down.basis = up.basis = lp_.basis();
      down.id = next_id++;
      up.id = next_id++;
      bool prefer_up;
      const int group = sos_of_[branch_var].first;
      if (group >= 0 && sos_split(group, x, down.changes, up.changes)) {
        prefer_up = false;
      } else {
        const double v = x[branch_var];
        double below = std::floor(v), above = std::ceil(v);
        if (above - below < 0.5) {
          below = std::round(v) < cur_hi_[branch_var] ? std::round(v) : std::round(v) - 1.0;
          above = below + 1.0;
        }
        down.changes.push_back({branch_var, cur_lo_[branch_var], below});
        up.changes.push_back({branch_var, above, cur_hi_[branch_var]});
        prefer_up = v - below >= 0.5;
        down.branch_var = up.branch_var = branch_var;
        up.branch_up = true;
        down.branch_dist = std::max(v - below, 1e-6);
        up.branch_dist = std::max(above - v, 1e-6);
      }
      if (hook_) hook_(incumbent_, global_bound(obj));
      if (prefer_up) {
        open.push(std::move(down));
        current = std::move(up);
      } else {
        open.push(std::move(up));
        current = std::move(down);
      }
      have_current = true;
      warm = true;
    }

    MilpSolution sol;
    sol.nodes = nodes_;
    sol.lp_iterations = lp_.iterations();
    sol.seconds = clock.seconds();
    double bound = incumbent_;
    if (!open.empty()) bound = std::min(bound, open.top().bound);
    bound = std::min(bound, lost_bound);
    sol.best_bound = bound;
    if (std::isfinite(incumbent_)) {
      sol.objective = incumbent_;
      sol.values = best_x_;
    }
    if (stopped) {
      sol.status = stop_status;
    } else if (std::isfinite(incumbent_)) {
      sol.status = numerical && lost_bound < prune_threshold()
                       ? SolveStatus::kNumericalError
                       : SolveStatus::kOptimal;
    } else {
      sol.status = numerical ? SolveStatus::kNumericalError
                             : SolveStatus::kInfeasible;
    }
    if (hook_) hook_(incumbent_, sol.best_bound);
    return sol;
  }

 private:
  // Index of the integer column whose value is farthest from integral, ties
  // to the lowest index; -1 when every integer column is within tol.
  // skip_fixed ignores columns whose current bounds admit one integer.
  int most_fractional(const std::vector<double>& x, double tol, bool skip_fixed = false) const {
    int best = -1;
    double best_frac = tol;
    for (int j = 0; j < model_.num_vars(); ++j) {
      if (!model_.is_integer(j)) continue;
      if (skip_fixed && cur_hi_[j] - cur_lo_[j] < 0.5) continue;
      const double f = std::fabs(x[j] - std::round(x[j]));
      if (f > best_frac) {
        best_frac = f;
        best = j;
      }
    }
    return best;
  }

  int first_free_integer() const {
    for (int j = 0; j < model_.num_vars(); ++j)
      if (model_.is_integer(j) && cur_hi_[j] - cur_lo_[j] >= 0.5) return j;
    return -1;
  }

  // Fractional diving: rounds the least fractional integer column, re-solves,
  // flips the last rounding once on failure, and polishes any integral LP
  // point it reaches. Leaves the LP bounds at `changes` plus the dive.
  void dive(std::vector<bb_detail::BoundChange> changes, std::vector<double> x) {
    const double tol = limits_.integrality_tolerance;
    for (int depth = 0; depth < kDiveDepth; ++depth) {
      int pick = -1;
      double best = 1.0;
      for (int j = 0; j < model_.num_vars(); ++j) {
        if (!model_.is_integer(j)) continue;
        const double f = std::fabs(x[j] - std::round(x[j]));
        if (f > tol && f < best) {
          best = f;
          pick = j;
        }
      }
      if (pick < 0) {
        std::vector<double> polished;
        const double pobj = polish(x, polished);
        if (std::isfinite(pobj)) accept(pobj, polished);
        return;
      }
      const double r = std::round(x[pick]);
      const double other = x[pick] < r ? std::floor(x[pick]) : std::ceil(x[pick]);
      bool solved = false;
      for (double v : {r, other}) {
        auto trial = changes;
        trial.push_back({pick, v, v});
        if (!apply(trial)) continue;
        lp_.set_cutoff(kInf);
        if (lp_.solve_dual() != LpStatus::kOptimal) continue;
        if (lp_.objective() + model_.objective_offset() >=
            (std::isfinite(incumbent_) ? incumbent_ : kInf))
          return;
        changes = std::move(trial);
        x = lp_.primal_values();
        solved = true;
        break;
      }
      if (!solved) return;
    }
  }

  void record_gain(int j, bool up, double per_unit) {
    if (!std::isfinite(per_unit)) return;
    gain_sum_[up][j] += std::max(0.0, per_unit);
    ++gain_cnt_[up][j];
  }

  double pseudocost(int j, bool up) const {
    if (gain_cnt_[up][j] > 0) return gain_sum_[up][j] / gain_cnt_[up][j];
    double sum = 0.0;
    long cnt = 0;
    for (size_t k = 0; k < gain_cnt_[up].size(); ++k)
      if (gain_cnt_[up][k] > 0) {
        sum += gain_sum_[up][k] / gain_cnt_[up][k];
        ++cnt;
      }
    return cnt > 0 ? sum / cnt : 1.0;
  }

  // LP bound of the node with column j restricted to [lo, hi], from a
  // dual simplex run capped at kStrongIterations; +inf when the child is
  // infeasible or cut off, NaN when the probe fails.
  double probe(int j, double lo, double hi, const Basis& base) {
    const double olo = cur_lo_[j], ohi = cur_hi_[j];
    lp_.set_col_bounds(j, lo, hi);
    lp_.set_iteration_limit(kStrongIterations);
    const LpStatus st = lp_.solve_dual();
    lp_.set_iteration_limit(-1);
    double v = std::numeric_limits<double>::quiet_NaN();
    if (st == LpStatus::kInfeasible || st == LpStatus::kCutoff) v = kInf;
    else if (st == LpStatus::kOptimal || st == LpStatus::kIterationLimit)
      v = lp_.objective() + model_.objective_offset();
    lp_.set_col_bounds(j, olo, ohi);
    lp_.set_basis(base);
    return v;
  }

  // Reliability branching: pseudocost product score, with strong branching
  // on the most fractional candidates whose history is still thin.
  int select_branch(const std::vector<double>& x, double obj, const Basis& base,
                    double cutoff) {
    const double tol = limits_.integrality_tolerance;
    std::vector<std::pair<double, int>> cand;
    for (int j = 0; j < model_.num_vars(); ++j) {
      if (!model_.is_integer(j)) continue;
      const double f = x[j] - std::floor(x[j]);
      if (f > tol && f < 1.0 - tol) cand.push_back({-std::min(f, 1.0 - f), j});
    }
    if (cand.empty()) return -1;
    std::stable_sort(cand.begin(), cand.end());
    const double eps = 1e-6 * std::max(1.0, std::fabs(obj));
    int best = cand.front().second, probes = 0;
    double best_score = -1.0;
    for (const auto& [neg_frac, j] : cand) {
      const double f = x[j] - std::floor(x[j]);
      double down = pseudocost(j, false) * f, up = pseudocost(j, true) * (1.0 - f);
      const bool unreliable =
          std::min(gain_cnt_[0][j], gain_cnt_[1][j]) < kReliability;
      if (unreliable && probes < kMaxProbes && sos_of_[j].first < 0) {
        ++probes;
        lp_.set_cutoff(cutoff - model_.objective_offset());
        const double bd = probe(j, cur_lo_[j], std::floor(x[j]), base);
        const double bu = probe(j, std::ceil(x[j]), cur_hi_[j], base);
        if (std::isinf(bd) || std::isinf(bu)) return j;
        if (!std::isnan(bd)) {
          down = bd - obj;
          record_gain(j, false, down / f);
        }
        if (!std::isnan(bu)) {
          up = bu - obj;
          record_gain(j, true, up / (1.0 - f));
        }
      }
      const double score = std::max(down, eps) * std::max(up, eps);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Splits an SOS1 group at the LP-weighted mean position of its nonzero
  // members. Returns false when fewer than two members are nonzero.
  bool sos_split(int group, const std::vector<double>& x,
                 std::vector<bb_detail::BoundChange>& left,
                 std::vector<bb_detail::BoundChange>& right) const {
    const auto& members = model_.sos1()[group];
    const double tol = limits_.integrality_tolerance;
    int first = -1, last = -1;
    double total = 0.0, moment = 0.0;
    for (int k = 0; k < static_cast<int>(members.size()); ++k) {
      const double v = x[members[k].index];
      if (v > tol) {
        if (first < 0) first = k;
        last = k;
        total += v;
        moment += v * k;
      }
    }
    if (first < 0 || first == last) return false;
    const int split =
        std::clamp(static_cast<int>(std::floor(moment / total)), first, last - 1);
    for (int k = 0; k < static_cast<int>(members.size()); ++k) {
      const int j = members[k].index;
      if (cur_hi_[j] <= 0.0 && cur_lo_[j] >= 0.0) continue;
      if (k > split) left.push_back({j, cur_lo_[j], 0.0});
      else right.push_back({j, cur_lo_[j], 0.0});
    }
    return true;
  }

  // Resets every column to its root bounds, then applies `changes`. Returns
  // false when the changes leave an empty domain.
  bool apply(const std::vector<bb_detail::BoundChange>& changes) {
    for (int j : touched_) {
      if (cur_lo_[j] != root_lo_[j] || cur_hi_[j] != root_hi_[j]) {
        cur_lo_[j] = root_lo_[j];
        cur_hi_[j] = root_hi_[j];
        lp_.set_col_bounds(j, cur_lo_[j], cur_hi_[j]);
      }
    }
    touched_.clear();
    for (const auto& c : changes) {
      const double lo = std::max(cur_lo_[c.var], c.lower);
      const double hi = std::min(cur_hi_[c.var], c.upper);
      cur_lo_[c.var] = lo;
      cur_hi_[c.var] = hi;
      touched_.push_back(c.var);
    }
    bool ok = true;
    for (const auto& c : changes) {
      if (cur_lo_[c.var] > cur_hi_[c.var]) {
        ok = false;
        cur_hi_[c.var] = cur_lo_[c.var];
      }
      lp_.set_col_bounds(c.var, cur_lo_[c.var], cur_hi_[c.var]);
    }
    return ok;
  }

  // Fixes the integer columns at their rounded values and re-solves the
  // LP. Returns the objective, or +inf when the fixed LP fails.
  double polish(const std::vector<double>& x, std::vector<double>& out) {
    const int n = model_.num_vars();
    bool any_integer = false;
    for (int j = 0; j < n; ++j) {
      if (!model_.is_integer(j)) continue;
      any_integer = true;
      const double v = std::clamp(std::round(x[j]), cur_lo_[j], cur_hi_[j]);
      lp_.set_col_bounds(j, v, v);
      touched_.push_back(j);
      cur_lo_[j] = cur_hi_[j] = v;
    }
    if (!any_integer) {
      out = x;
      return model_.evaluate_objective(out);
    }
    lp_.set_cutoff(kInf);
    LpStatus st = lp_.solve_dual();
    if (st != LpStatus::kOptimal) {
      lp_.slack_basis();
      st = lp_.solve_primal();
    }
    if (st != LpStatus::kOptimal) return kInf;
    out = lp_.primal_values();
    for (int j = 0; j < n; ++j)
      if (model_.is_integer(j)) out[j] = std::round(out[j]);
    if (model_.max_violation(out) > limits_.feasibility_tolerance) {
      lp_.slack_basis();
      if (lp_.solve_primal() != LpStatus::kOptimal) return kInf;
      out = lp_.primal_values();
      for (int j = 0; j < n; ++j)
        if (model_.is_integer(j)) out[j] = std::round(out[j]);
      if (model_.max_violation(out) > limits_.feasibility_tolerance)
        return kInf;
    }
    return model_.evaluate_objective(out);
  }

  void accept(double obj, const std::vector<double>& x) {
    if (obj < incumbent_) {
      incumbent_ = obj;
      best_x_ = x;
    }
  }

  const MilpModel& model_;
  MilpLimits limits_;
  Simplex lp_;
  NodeEventHook hook_;
  std::vector<double> root_lo_, root_hi_, cur_lo_, cur_hi_;
  std::vector<int> touched_;
  std::vector<std::pair<int, int>> sos_of_;
  std::vector<double> gain_sum_[2];
  std::vector<long> gain_cnt_[2];
  static constexpr long kReliability = 4;
  static constexpr int kMaxProbes = 8;
  static constexpr long kStrongIterations = 60;
  static constexpr long kDiveEvery = 1000;
  static constexpr int kDiveDepth = 200;
  double incumbent_ = kInf;
  std::vector<double> best_x_;
  long nodes_ = 0;
};

inline MilpSolution solve_milp(const MilpModel& model,
                               const MilpLimits& limits = {},
                               const std::vector<double>* start = nullptr) {
  model.validate();
  BranchAndBound bb(model, limits);
  if (start) bb.set_start(*start);
  return bb.run();
}

}  // namespace ioa::milp
