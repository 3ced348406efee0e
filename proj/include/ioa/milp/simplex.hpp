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

// Bounded revised simplex. Every row i gets a logical r_i with
// A x - r = 0 and row bounds on r, so the all-logical basis is always
// available. The basis is factored with a sparse LU and updated in product
// form between refactorisations.

#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/milp/model.hpp"

namespace ioa::milp {

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kCutoff,
  kTimeLimit,
  kIterationLimit,
  kNumerical,
};

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

struct Basis {
  std::vector<int> head;
  std::vector<VarStatus> status;
  bool empty() const { return head.empty(); }
};

struct SimplexOptions {
  double primal_tolerance = 1e-7;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 64;
  int degenerate_before_bland = 60;
  long iteration_limit = -1;
};

class Simplex {
 public:
  explicit Simplex(const MilpModel& model, SimplexOptions options = {})
      : opt_(options) {
    n_ = model.num_vars();
    m_ = model.num_rows();
    const int total = n_ + m_;
    lb_.resize(total);
    ub_.resize(total);
    cost_.assign(total, 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = model.vars()[j].lower;
      ub_[j] = model.vars()[j].upper;
      cost_[j] = model.objective()[j];
    }
    std::vector<std::vector<std::pair<int, double>>> cols(n_);
    for (int i = 0; i < m_; ++i) {
      const auto& row = model.rows()[i];
      for (const auto& t : row.terms)
        if (t.coef != 0.0) cols[t.var.index].push_back({i, t.coef});
      double lo = -kInf, hi = kInf;
      if (row.sense != Sense::kGreaterEqual) hi = row.rhs;
      if (row.sense != Sense::kLessEqual) lo = row.rhs;
      lb_[n_ + i] = lo;
      ub_[n_ + i] = hi;
    }
    cs_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) {
      // Merge duplicate entries of the same row.
      auto& c = cols[j];
      std::sort(c.begin(), c.end(),
                [](auto& a, auto& b) { return a.first < b.first; });
      int before = static_cast<int>(ri_.size());
      for (auto& [i, v] : c) {
        if (static_cast<int>(ri_.size()) > before && ri_.back() == i)
          va_.back() += v;
        else {
          ri_.push_back(i);
          va_.push_back(v);
        }
      }
      cs_[j + 1] = static_cast<int>(ri_.size());
    }
    slack_basis();
  }

  int num_cols() const { return n_; }
  int num_rows() const { return m_; }
  long iterations() const { return iterations_; }

  void set_deadline(double seconds_from_now) {
    deadline_ = seconds_from_now;
    clock_ = Stopwatch();
  }
  void set_cutoff(double cutoff) { cutoff_ = cutoff; }
  // Per-solve cap on simplex iterations; nonpositive restores the default.
  void set_iteration_limit(long limit) { opt_.iteration_limit = limit; }

  double col_lower(int j) const { return lb_[j]; }
  double col_upper(int j) const { return ub_[j]; }

  // Changes the bounds of structural column j. A nonbasic column is moved to
  // its new bound; the basic values are recomputed lazily.
  void set_col_bounds(int j, double lo, double hi) {
    lb_[j] = lo;
    ub_[j] = hi;
    if (status_[j] != VarStatus::kBasic) {
      place_nonbasic(j, status_[j]);
      primal_stale_ = true;
    }
  }

  Basis basis() const { return {head_, status_}; }

  void set_basis(const Basis& b) {
    if (static_cast<int>(b.head.size()) != m_ ||
        static_cast<int>(b.status.size()) != n_ + m_) {
      slack_basis();
      return;
    }
    head_ = b.head;
    status_ = b.status;
    for (int j = 0; j < n_ + m_; ++j)
      if (status_[j] != VarStatus::kBasic) place_nonbasic(j, status_[j]);
    factor_stale_ = true;
    primal_stale_ = true;
  }

  void slack_basis() {
    const int total = n_ + m_;
    status_.assign(total, VarStatus::kAtLower);
    x_.assign(total, 0.0);
    head_.resize(m_);
    for (int j = 0; j < n_; ++j) place_nonbasic(j, VarStatus::kAtLower);
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      status_[n_ + i] = VarStatus::kBasic;
    }
    factor_stale_ = true;
    primal_stale_ = true;
  }

  // Primal simplex from the current basis (phase 1 when needed).
  LpStatus solve_primal() {
    for (int attempt = 0; attempt < 4; ++attempt) {
      LpStatus s = primal_loop();
      if (s != LpStatus::kOptimal) {
        if (s == LpStatus::kNumerical && attempt < 3) {
          slack_basis();
          continue;
        }
        return s;
      }
      if (!refresh()) {
        slack_basis();
        continue;
      }
      if (max_primal_infeasibility() <= opt_.primal_tolerance * 10 &&
          dual_feasible())
        return LpStatus::kOptimal;
    }
    return LpStatus::kNumerical;
  }

  // Dual simplex from the current basis. Falls back to the primal simplex
  // when the basis is not dual feasible or the dual iteration breaks down.
  LpStatus solve_dual() {
    if (!refresh()) {
      slack_basis();
      return solve_primal();
    }
    if (!make_dual_feasible()) return solve_primal();
    LpStatus s = dual_loop();
    if (s == LpStatus::kNumerical) {
      if (!refresh()) slack_basis();
      return solve_primal();
    }
    if (s != LpStatus::kOptimal) return s;
    return solve_primal();
  }

  // Structural values.
  std::vector<double> primal_values() const {
    return std::vector<double>(x_.begin(), x_.begin() + n_);
  }
  double objective() const {
    double v = 0.0;
    for (int j = 0; j < n_; ++j) v += cost_[j] * x_[j];
    return v;
  }
  // Reduced costs of the structural columns at the last optimal basis.
  std::vector<double> reduced_costs() const {
    return std::vector<double>(d_.begin(), d_.begin() + n_);
  }
  const std::vector<VarStatus>& status() const { return status_; }

 private:
  struct Eta {
    int r = 0;
    double pivot = 1.0;
    std::vector<int> idx;
    std::vector<double> val;
  };

  template <class F>
  void for_col(int j, F&& f) const {
    if (j < n_) {
      for (int k = cs_[j]; k < cs_[j + 1]; ++k) f(ri_[k], va_[k]);
    } else {
      f(j - n_, -1.0);
    }
  }
  double col_dot(int j, const Eigen::VectorXd& v) const {
    if (j >= n_) return -v[j - n_];
    double s = 0.0;
    for (int k = cs_[j]; k < cs_[j + 1]; ++k) s += va_[k] * v[ri_[k]];
    return s;
  }

  void place_nonbasic(int j, VarStatus hint) {
    const bool lo = std::isfinite(lb_[j]), hi = std::isfinite(ub_[j]);
    VarStatus s = hint;
    if (s == VarStatus::kBasic || s == VarStatus::kFree)
      s = VarStatus::kAtLower;
    if (s == VarStatus::kAtLower && !lo) s = VarStatus::kAtUpper;
    if (s == VarStatus::kAtUpper && !hi) s = lo ? VarStatus::kAtLower
                                                : VarStatus::kFree;
    status_[j] = s;
    x_[j] = s == VarStatus::kAtLower   ? lb_[j]
            : s == VarStatus::kAtUpper ? ub_[j]
                                       : 0.0;
  }

  bool factorize() {
    etas_.clear();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(m_ * 3);
    for (int p = 0; p < m_; ++p)
      for_col(head_[p], [&](int i, double v) { trip.emplace_back(i, p, v); });
    Eigen::SparseMatrix<double> B(m_, m_);
    B.setFromTriplets(trip.begin(), trip.end());
    B.makeCompressed();
    if (m_ == 0) {
      factor_stale_ = false;
      return true;
    }
    lu_.analyzePattern(B);
    lu_.factorize(B);
    if (lu_.info() != Eigen::Success) return false;
    factor_stale_ = false;
    return true;
  }

  void ftran(Eigen::VectorXd& y) const {
    if (m_ == 0) return;
    y = lu_.solve(y).eval();
    for (const auto& e : etas_) {
      const double yr = y[e.r] / e.pivot;
      y[e.r] = yr;
      if (yr != 0.0)
        for (std::size_t k = 0; k < e.idx.size(); ++k)
          y[e.idx[k]] -= e.val[k] * yr;
    }
  }
  void btran(Eigen::VectorXd& y) const {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = y[it->r];
      for (std::size_t k = 0; k < it->idx.size(); ++k)
        s -= it->val[k] * y[it->idx[k]];
      y[it->r] = s / it->pivot;
    }
    y = lu_.transpose().solve(y).eval();
  }

  void push_eta(int r, const Eigen::VectorXd& alpha) {
    Eta e;
    e.r = r;
    e.pivot = alpha[r];
    for (int i = 0; i < m_; ++i)
      if (i != r && alpha[i] != 0.0) {
        e.idx.push_back(i);
        e.val.push_back(alpha[i]);
      }
    etas_.push_back(std::move(e));
  }

  void compute_primal() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      const double xj = x_[j];
      for_col(j, [&](int i, double v) { rhs[i] -= v * xj; });
    }
    ftran(rhs);
    for (int p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
    primal_stale_ = false;
  }

  void compute_duals(bool phase1) {
    Eigen::VectorXd y(m_);
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      if (!phase1) {
        y[p] = cost_[j];
      } else {
        y[p] = x_[j] < lb_[j] - opt_.primal_tolerance   ? -1.0
               : x_[j] > ub_[j] + opt_.primal_tolerance ? 1.0
                                                        : 0.0;
      }
    }
    btran(y);
    y_ = y;
    d_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      d_[j] = (phase1 ? 0.0 : cost_[j]) - col_dot(j, y);
    }
  }

  // Refactor and recompute primal values and phase-2 reduced costs.
  bool refresh() {
    if (!factorize()) return false;
    compute_primal();
    compute_duals(false);
    return true;
  }

  double max_primal_infeasibility() const {
    double worst = 0.0;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      worst = std::max(worst, lb_[j] - x_[j]);
      worst = std::max(worst, x_[j] - ub_[j]);
    }
    return worst;
  }

  bool dual_feasible() const {
    const double tol = opt_.dual_tolerance * 10;
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == VarStatus::kBasic || lb_[j] == ub_[j]) continue;
      const double d = d_[j];
      if (status_[j] == VarStatus::kAtLower && d < -tol) return false;
      if (status_[j] == VarStatus::kAtUpper && d > tol) return false;
      if (status_[j] == VarStatus::kFree && std::fabs(d) > tol) return false;
    }
    return true;
  }

  // Flips boxed columns with wrong-signed reduced costs. Returns false when
  // some column cannot be made dual feasible.
  bool make_dual_feasible() {
    bool flipped = false;
    const double tol = opt_.dual_tolerance;
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == VarStatus::kBasic || lb_[j] == ub_[j]) continue;
      const double d = d_[j];
      if (status_[j] == VarStatus::kAtLower && d < -tol) {
        if (!std::isfinite(ub_[j])) return false;
        status_[j] = VarStatus::kAtUpper;
        x_[j] = ub_[j];
        flipped = true;
      } else if (status_[j] == VarStatus::kAtUpper && d > tol) {
        if (!std::isfinite(lb_[j])) return false;
        status_[j] = VarStatus::kAtLower;
        x_[j] = lb_[j];
        flipped = true;
      } else if (status_[j] == VarStatus::kFree && std::fabs(d) > tol) {
        return false;
      }
    }
    if (flipped) compute_primal();
    return true;
  }

  bool out_of_time() const {
    return std::isfinite(deadline_) && clock_.seconds() > deadline_;
  }
  long iteration_cap() const {
    return opt_.iteration_limit > 0 ? opt_.iteration_limit
                                    : 200L * (n_ + m_) + 20000L;
  }

  LpStatus primal_loop() {
    if (factor_stale_ && !factorize()) return LpStatus::kNumerical;
    if (primal_stale_) compute_primal();
    const double ptol = opt_.primal_tolerance;
    const double dtol = opt_.dual_tolerance;
    long local = 0;
    int degenerate = 0;
    bool bland = false;
    bool last_phase1 = true;
    Eigen::VectorXd alpha(m_);
    while (true) {
      if (++local > iteration_cap()) return LpStatus::kIterationLimit;
      if ((local & 63) == 0 && out_of_time()) return LpStatus::kTimeLimit;
      if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
        if (!factorize()) return LpStatus::kNumerical;
        compute_primal();
      }
      const bool phase1 = max_primal_infeasibility() > ptol;
      if (phase1 != last_phase1) {
        bland = false;
        degenerate = 0;
        last_phase1 = phase1;
      }
      compute_duals(phase1);

      // Pricing.
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        const VarStatus s = status_[j];
        if (s == VarStatus::kBasic || lb_[j] == ub_[j]) continue;
        const double d = d_[j];
        double score = 0.0;
        if (s == VarStatus::kAtLower && d < -dtol) score = -d;
        else if (s == VarStatus::kAtUpper && d > dtol) score = d;
        else if (s == VarStatus::kFree && std::fabs(d) > dtol) score = std::fabs(d);
        if (score <= 0.0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q < 0) {
        if (phase1) return LpStatus::kInfeasible;
        return LpStatus::kOptimal;
      }
      const double dir = d_[q] < 0.0 ? 1.0 : -1.0;

      alpha.setZero();
      for_col(q, [&](int i, double v) { alpha[i] = v; });
      ftran(alpha);

      // Two-pass ratio test.
      double theta_max = kInf;
      for (int p = 0; p < m_; ++p) {
        const double a = alpha[p];
        if (std::fabs(a) <= opt_.pivot_tolerance) continue;
        const int j = head_[p];
        const double g = -dir * a;
        const double v = x_[j];
        double ratio = kInf;
        if (phase1 && v < lb_[j] - ptol) {
          if (g > 0) ratio = (lb_[j] - v) / g;
        } else if (phase1 && v > ub_[j] + ptol) {
          if (g < 0) ratio = (v - ub_[j]) / -g;
        } else if (g < 0 && std::isfinite(lb_[j])) {
          ratio = (v - lb_[j] + ptol) / -g;
        } else if (g > 0 && std::isfinite(ub_[j])) {
          ratio = (ub_[j] - v + ptol) / g;
        }
        theta_max = std::min(theta_max, ratio);
      }
      const double own_range = ub_[q] - lb_[q];
      int r = -1;
      double theta = 0.0;
      double target = 0.0;
      if (std::isfinite(own_range) && own_range <= theta_max) {
        theta = own_range;
      } else if (!std::isfinite(theta_max)) {
        return phase1 ? LpStatus::kNumerical : LpStatus::kUnbounded;
      } else {
        double best_pivot = 0.0;
        for (int p = 0; p < m_; ++p) {
          const double a = alpha[p];
          if (std::fabs(a) <= opt_.pivot_tolerance) continue;
          const int j = head_[p];
          const double g = -dir * a;
          const double v = x_[j];
          double ratio = kInf, tgt = 0.0;
          if (phase1 && v < lb_[j] - ptol) {
            if (g > 0) { ratio = (lb_[j] - v) / g; tgt = lb_[j]; }
          } else if (phase1 && v > ub_[j] + ptol) {
            if (g < 0) { ratio = (v - ub_[j]) / -g; tgt = ub_[j]; }
          } else if (g < 0 && std::isfinite(lb_[j])) {
            ratio = (v - lb_[j]) / -g;
            tgt = lb_[j];
          } else if (g > 0 && std::isfinite(ub_[j])) {
            ratio = (ub_[j] - v) / g;
            tgt = ub_[j];
          }
          if (ratio > theta_max) continue;
          const bool take = bland ? (r < 0 || j < head_[r])
                                  : std::fabs(a) > best_pivot;
          if (take) {
            best_pivot = std::fabs(a);
            r = p;
            theta = std::max(0.0, ratio);
            target = tgt;
          }
        }
        if (r < 0) return LpStatus::kNumerical;
      }

      // Update.
      ++iterations_;
      if (theta < 1e-12) {
        if (++degenerate > opt_.degenerate_before_bland) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      if (theta != 0.0) {
        for (int p = 0; p < m_; ++p)
          if (alpha[p] != 0.0) x_[head_[p]] -= dir * alpha[p] * theta;
      }
      x_[q] += dir * theta;
      if (r < 0) {
        status_[q] = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
        x_[q] = dir > 0 ? ub_[q] : lb_[q];
        continue;
      }
      const int leaving = head_[r];
      x_[leaving] = target;
      status_[leaving] = target == lb_[leaving] ? VarStatus::kAtLower
                                                : VarStatus::kAtUpper;
      if (lb_[leaving] == ub_[leaving]) status_[leaving] = VarStatus::kAtLower;
      head_[r] = q;
      status_[q] = VarStatus::kBasic;
      push_eta(r, alpha);
    }
  }

  LpStatus dual_loop() {
    const double ptol = opt_.primal_tolerance;
    const double dtol = opt_.dual_tolerance;
    long local = 0;
    Eigen::VectorXd rho(m_), alpha(m_);
    std::vector<double> row(n_ + m_, 0.0);
    while (true) {
      if (++local > iteration_cap()) return LpStatus::kIterationLimit;
      if ((local & 63) == 0 && out_of_time()) return LpStatus::kTimeLimit;
      if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
        if (!refresh()) return LpStatus::kNumerical;
        if (!dual_feasible() && !make_dual_feasible())
          return LpStatus::kNumerical;
      }
      if (std::isfinite(cutoff_) && (local & 7) == 0 &&
          objective() > cutoff_ + 1e-9 * std::max(1.0, std::fabs(cutoff_)))
        return LpStatus::kCutoff;

      // Leaving row: largest bound violation.
      int r = -1;
      double worst = ptol;
      for (int p = 0; p < m_; ++p) {
        const int j = head_[p];
        const double v = std::max(lb_[j] - x_[j], x_[j] - ub_[j]);
        if (v > worst) {
          worst = v;
          r = p;
        }
      }
      if (r < 0) return LpStatus::kOptimal;
      const int leaving = head_[r];
      const bool to_lower = x_[leaving] < lb_[leaving];
      const double s = to_lower ? 1.0 : -1.0;
      const double target = to_lower ? lb_[leaving] : ub_[leaving];

      rho.setZero();
      rho[r] = 1.0;
      btran(rho);

      // Two-pass dual ratio test.
      double theta_max = kInf;
      for (int j = 0; j < n_ + m_; ++j) {
        const VarStatus st = status_[j];
        if (st == VarStatus::kBasic || lb_[j] == ub_[j]) {
          row[j] = 0.0;
          continue;
        }
        const double a = col_dot(j, rho);
        row[j] = a;
        const double ap = s * a;
        if (std::fabs(a) <= opt_.pivot_tolerance) continue;
        double ratio = kInf;
        if (st == VarStatus::kAtLower && ap < 0) ratio = (d_[j] + dtol) / -ap;
        else if (st == VarStatus::kAtUpper && ap > 0) ratio = (-d_[j] + dtol) / ap;
        else if (st == VarStatus::kFree) ratio = (std::fabs(d_[j]) + dtol) / std::fabs(ap);
        theta_max = std::min(theta_max, ratio);
      }
      if (!std::isfinite(theta_max)) return LpStatus::kInfeasible;
      int q = -1;
      double t = 0.0, best_pivot = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        const VarStatus st = status_[j];
        if (st == VarStatus::kBasic || lb_[j] == ub_[j]) continue;
        const double a = row[j];
        if (std::fabs(a) <= opt_.pivot_tolerance) continue;
        const double ap = s * a;
        double ratio = kInf;
        if (st == VarStatus::kAtLower && ap < 0) ratio = std::max(0.0, d_[j]) / -ap;
        else if (st == VarStatus::kAtUpper && ap > 0) ratio = std::max(0.0, -d_[j]) / ap;
        else if (st == VarStatus::kFree) ratio = 0.0;
        if (ratio > theta_max) continue;
        if (std::fabs(a) > best_pivot) {
          best_pivot = std::fabs(a);
          q = j;
          t = ratio;
        }
      }
      if (q < 0) return LpStatus::kNumerical;

      alpha.setZero();
      for_col(q, [&](int i, double v) { alpha[i] = v; });
      ftran(alpha);
      const double piv = alpha[r];
      if (std::fabs(piv) <= opt_.pivot_tolerance ||
          std::fabs(piv - row[q]) > 1e-6 * std::max(1.0, std::fabs(piv))) {
        if (etas_.empty()) return LpStatus::kNumerical;
        if (!refresh()) return LpStatus::kNumerical;
        if (!dual_feasible() && !make_dual_feasible())
          return LpStatus::kNumerical;
        continue;
      }

      ++iterations_;
      for (int j = 0; j < n_ + m_; ++j)
        if (row[j] != 0.0) d_[j] += s * t * row[j];
      d_[q] = 0.0;
      d_[leaving] = s * t;

      const double delta = (x_[leaving] - target) / piv;
      for (int p = 0; p < m_; ++p)
        if (alpha[p] != 0.0) x_[head_[p]] -= alpha[p] * delta;
      x_[q] += delta;
      x_[leaving] = target;
      status_[leaving] = to_lower ? VarStatus::kAtLower : VarStatus::kAtUpper;
      head_[r] = q;
      status_[q] = VarStatus::kBasic;
      push_eta(r, alpha);
    }
  }

  SimplexOptions opt_;
  int n_ = 0, m_ = 0;
  std::vector<int> cs_, ri_;
  std::vector<double> va_;
  std::vector<double> lb_, ub_, cost_;
  std::vector<double> x_, d_;
  Eigen::VectorXd y_;
  std::vector<VarStatus> status_;
  std::vector<int> head_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  bool factor_stale_ = true;
  bool primal_stale_ = true;
  long iterations_ = 0;
  double deadline_ = kInf;
  double cutoff_ = kInf;
  Stopwatch clock_;
};

// Solves the LP relaxation (integrality ignored) from the all-logical basis.
inline MilpSolution solve_lp(const MilpModel& model,
                             const MilpLimits& limits = {}) {
  model.validate();
  Stopwatch clock;
  MilpSolution sol;
  Simplex lp(model);
  lp.set_deadline(limits.time_limit);
  const LpStatus s = lp.solve_primal();
  sol.lp_iterations = lp.iterations();
  sol.seconds = clock.seconds();
  switch (s) {
    case LpStatus::kOptimal:
      sol.status = SolveStatus::kOptimal;
      sol.values = lp.primal_values();
      sol.objective = lp.objective() + model.objective_offset();
      sol.best_bound = sol.objective;
      break;
    case LpStatus::kInfeasible:
      sol.status = SolveStatus::kInfeasible;
      break;
    case LpStatus::kUnbounded:
      sol.status = SolveStatus::kUnbounded;
      sol.objective = -kInf;
      break;
    case LpStatus::kTimeLimit:
      sol.status = SolveStatus::kTimeLimit;
      break;
    default:
      sol.status = SolveStatus::kNumericalError;
      break;
  }
  return sol;
}

}  // namespace ioa::milp
