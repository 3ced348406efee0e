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

// Inner approximation of the concave half by convex combinations of sampled
// points, its KKT encoding as MILP rows, and tangent cuts for the convex
// half.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/milp/model.hpp"
#include "ioa/scurve.hpp"

namespace ioa {

// Relative spacing below which two approximation points count as equal.
inline constexpr double kDupTolerance = 1e-7;

class ApproxSet {
 public:
  ApproxSet() = default;
  ApproxSet(const SplitPair& pair) : pair_(&pair) {
    tol_ = kDupTolerance * (pair.upper() - pair.lower());
  }

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(points_.size()); }
  double tolerance() const { return tol_; }
  double lower() const { return points_.front(); }
  double upper() const { return points_.back(); }

  bool contains(double z) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), z - tol_);
    return it != points_.end() && *it <= z + tol_;
  }

  // Inserts z (clamped to the domain) unless a point within the duplicate
  // tolerance exists. Returns whether the set grew.
  bool add(double z) {
    z = std::clamp(z, pair_->lower(), pair_->upper());
    if (contains(z)) return false;
    auto it = std::lower_bound(points_.begin(), points_.end(), z);
    const auto k = it - points_.begin();
    points_.insert(it, z);
    values_.insert(values_.begin() + k, pair_->cap(z));
    return true;
  }

 private:
  const SplitPair* pair_ = nullptr;
  double tol_ = 0.0;
  std::vector<double> points_;
  std::vector<double> values_;
};

// {lower, deflection, upper} plus `extra` evenly spaced interior points.
// With include_deflection = false the deflection seed is left out, which
// reproduces a bare two-point start.
inline ApproxSet init_set(const SplitPair& pair, int extra = 0,
                          bool include_deflection = true) {
  if (extra < 0)
    throw Error(ErrorCode::kInvalidArgument, "extra must be >= 0");
  const double lo = pair.lower(), hi = pair.upper();
  if (!(hi - lo > kDupTolerance * std::max(1.0, std::fabs(hi))))
    throw Error(ErrorCode::kDegenerateDomain, "approximation domain is empty");
  ApproxSet set(pair);
  set.add(lo);
  set.add(hi);
  if (include_deflection) set.add(pair.deflection());
  for (int k = 1; k <= extra; ++k) set.add(lo + (hi - lo) * k / (extra + 1));
  return set;
}

namespace approx_detail {

// Indices of the upper concave hull of (points, values), left to right.
inline std::vector<int> upper_hull(const std::vector<double>& q,
                                   const std::vector<double>& v) {
  std::vector<int> h;
  for (int k = 0; k < static_cast<int>(q.size()); ++k) {
    while (h.size() >= 2) {
      const int a = h[h.size() - 2], b = h.back();
      // Drop b when it lies on or below the chord from a to k.
      const double cross =
          (q[b] - q[a]) * (v[k] - v[a]) - (v[b] - v[a]) * (q[k] - q[a]);
      if (cross >= 0.0) h.pop_back();
      else break;
    }
    h.push_back(k);
  }
  return h;
}

}  // namespace approx_detail

// Optimum of max sum mu_k v_k s.t. sum mu_k = 1, sum mu_k q_k = z, mu >= 0,
// i.e. the upper concave envelope of the points evaluated at z.
inline double inner_value(const ApproxSet& set, double z) {
  const auto& q = set.points();
  const auto& v = set.values();
  if (q.empty()) throw Error(ErrorCode::kInvalidArgument, "empty set");
  const double tol = std::max(set.tolerance(), 1e-12);
  if (z < q.front() - tol || z > q.back() + tol)
    throw Error(ErrorCode::kDomain, "z outside the approximation range");
  z = std::clamp(z, q.front(), q.back());
  const auto h = approx_detail::upper_hull(q, v);
  if (h.size() == 1) return v[h[0]];
  for (size_t k = 0; k + 1 < h.size(); ++k) {
    const int a = h[k], b = h[k + 1];
    if (z <= q[b] || k + 2 == h.size()) {
      if (z == q[a]) return v[a];
      if (z == q[b]) return v[b];
      const double t = (z - q[a]) / (q[b] - q[a]);
      return v[a] + t * (v[b] - v[a]);
    }
  }
  return v[h.back()];
}

// Host variables of one S-term inside a MilpModel.
struct TermVars {
  milp::VarId z, l0, l1, w, p;
};

struct KktBlock {
  int term = -1;
  std::vector<milp::VarId> mu, gamma, u;
  milp::VarId alpha, beta, zeta;
  std::vector<milp::RowId> stationarity;
  milp::RowId sum_mu, sum_mu_q;
  std::vector<milp::RowId> gamma_bigm, mu_bigm;
  milp::RowId convex_combination, coupling;
  double m2 = 0.0;
  double m3 = 1.0;
};

// Bound on the multipliers gamma valid for this particular point set:
// L_set * range + max v - min v with L_set the steepest hull chord. Never
// larger than bigm_gamma(pair).
inline double set_gamma_bound(const ApproxSet& set, const SplitPair& pair) {
  const auto& q = set.points();
  const auto& v = set.values();
  const auto h = approx_detail::upper_hull(q, v);
  double lip = 0.0;
  for (size_t k = 0; k + 1 < h.size(); ++k)
    lip = std::max(lip, std::fabs((v[h[k + 1]] - v[h[k]]) / (q[h[k + 1]] - q[h[k]])));
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double local = lip * (q.back() - q.front()) + (*mx - *mn);
  return std::max(1.0, std::min(bigm_gamma(pair), local * (1.0 + 1e-9) + 1e-9));
}

// Appends the KKT system of the inner-approximation LP of term `term`.
inline KktBlock emit_kkt(const ApproxSet& set, const SplitPair& pair,
                         milp::MilpModel& model, int term, const TermVars& host) {
  using namespace milp;
  if (term < 0) throw Error(ErrorCode::kInvalidArgument, "negative term index");
  for (VarId v : {host.z, host.l0, host.l1, host.w, host.p})
    if (!v.valid() || v.index >= model.num_vars())
      throw Error(ErrorCode::kInvalidModel,
                  "emit_kkt needs z, l0, l1, w, p of term " + std::to_string(term));
  if (set.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "approximation set needs two points");
  const std::string tag = "_" + std::to_string(term);
  const auto& q = set.points();
  const auto& v = set.values();
  const int tau = set.size();

  KktBlock b;
  b.term = term;
  b.m2 = set_gamma_bound(set, pair);
  for (int k = 0; k < tau; ++k) {
    const std::string kt = tag + "_" + std::to_string(k);
    b.mu.push_back(model.add_continuous("mu" + kt, 0.0, 1.0));
    b.gamma.push_back(model.add_continuous("gamma" + kt, 0.0, b.m2));
    b.u.push_back(model.add_binary("u" + kt));
  }
  b.alpha = model.add_continuous("alpha" + tag, -kInf, kInf);
  b.beta = model.add_continuous("beta" + tag, -kInf, kInf);
  b.zeta = model.add_continuous("zeta" + tag, -kInf, kInf);

  // v_k - alpha - beta q_k + gamma_k = 0
  for (int k = 0; k < tau; ++k)
    b.stationarity.push_back(model.add_constraint(
        "stat" + tag + "_" + std::to_string(k),
        {{b.alpha, -1.0}, {b.beta, -q[k]}, {b.gamma[k], 1.0}}, Sense::kEqual, -v[k]));
  {
    std::vector<Term> sum, moment;
    for (int k = 0; k < tau; ++k) {
      sum.push_back({b.mu[k], 1.0});
      moment.push_back({b.mu[k], q[k]});
    }
    moment.push_back({host.z, -1.0});
    b.sum_mu = model.add_constraint("musum" + tag, sum, Sense::kEqual, 1.0);
    b.sum_mu_q = model.add_constraint("mumom" + tag, moment, Sense::kEqual, 0.0);
  }
  for (int k = 0; k < tau; ++k) {
    const std::string kt = tag + "_" + std::to_string(k);
    b.gamma_bigm.push_back(model.add_constraint(
        "gbig" + kt, {{b.gamma[k], 1.0}, {b.u[k], -b.m2}}, Sense::kLessEqual, 0.0));
    b.mu_bigm.push_back(model.add_constraint(
        "mbig" + kt, {{b.mu[k], 1.0}, {b.u[k], b.m3}}, Sense::kLessEqual, b.m3));
  }
  {
    std::vector<Term> cc{{b.zeta, 1.0}};
    for (int k = 0; k < tau; ++k) cc.push_back({b.mu[k], -v[k]});
    b.convex_combination =
        model.add_constraint("zlink" + tag, cc, Sense::kGreaterEqual, 0.0);
  }
  // M0 l0 + zeta - M0 <= w
  const double m0 = pair.m0();
  b.coupling = model.add_constraint(
      "wlink" + tag, {{host.l0, m0}, {b.zeta, 1.0}, {host.w, -1.0}},
      Sense::kLessEqual, m0);
  return b;
}

// s >= value + slope * (z - anchor)
struct TangentCut {
  double anchor = 0.0;
  double value = 0.0;
  double slope = 0.0;
  double operator()(double z) const { return value + slope * (z - anchor); }
};

inline TangentCut tangent_cut(const SplitPair& pair, double z) {
  const double tol = kDupTolerance * (pair.upper() - pair.lower());
  if (z < pair.lower() - tol || z > pair.upper() + tol) {
    if (pair.curve().kind() == CurveKind::kPowerHyperbolic &&
        z > pair.upper())
      throw Error(ErrorCode::kDomain, "tangent requested at or beyond the pole");
    throw Error(ErrorCode::kDomain, "tangent point outside the domain");
  }
  z = std::clamp(z, pair.lower(), pair.upper());
  return {z, pair.cup(z), pair.cup_slope(z)};
}

class CutPool {
 public:
  CutPool() = default;
  explicit CutPool(double tolerance) : tol_(tolerance) {}

  const std::vector<TangentCut>& cuts() const { return cuts_; }
  int size() const { return static_cast<int>(cuts_.size()); }

  bool has_anchor(double z) const {
    for (const auto& c : cuts_)
      if (std::fabs(c.anchor - z) <= tol_) return true;
    return false;
  }
  bool add(const TangentCut& cut) {
    if (has_anchor(cut.anchor)) return false;
    cuts_.push_back(cut);
    return true;
  }
  // Largest cut value at z; -inf for an empty pool.
  double envelope(double z) const {
    double best = -kInf;
    for (const auto& c : cuts_) best = std::max(best, c(z));
    return best;
  }

 private:
  double tol_ = 0.0;
  std::vector<TangentCut> cuts_;
};

// Tangents at `count` evenly spaced points of [deflection, upper], where
// upper is the model domain end (short of the hyperbolic pole).
inline CutPool apriori_cuts(const SplitPair& pair, int count) {
  if (count < 2)
    throw Error(ErrorCode::kInvalidArgument, "apriori_cuts needs count >= 2");
  CutPool pool(kDupTolerance * (pair.upper() - pair.lower()));
  const double a = pair.deflection(), b = pair.upper();
  for (int k = 0; k < count; ++k) {
    const double z = k + 1 == count ? b : a + (b - a) * k / (count - 1);
    pool.add(tangent_cut(pair, z));
  }
  return pool;
}

}  // namespace ioa
