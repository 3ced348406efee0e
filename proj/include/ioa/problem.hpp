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
#include <string>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/milp/model.hpp"
#include "ioa/scurve.hpp"

namespace ioa {

// One separable inverse-S cost term phi(z) added to the objective.
//
// Terms may bring their own regime binaries (l0, l1) from the base model, in
// which case the base model is responsible for tying them to the rest of the
// problem (e.g. l0 + l1 = open flag). Otherwise the original model gets fresh
// binaries with l0 + l1 = 1.
struct STerm {
  std::string name;
  milp::VarId z;
  SCurve curve;
  milp::VarId l0;
  milp::VarId l1;

  bool hosted() const { return l0.valid() && l1.valid(); }
};

// Handles of the regime binaries per term inside an original model.
struct RegimeVars {
  milp::VarId z, l0, l1;
};

// min c'x + sum_j phi_j(z_j) over the affine rows of `base`.
class Problem {
 public:
  milp::MilpModel base;
  std::vector<STerm> sterms;

  void validate() const {
    base.validate();
    std::vector<char> seen(base.num_vars(), 0);
    for (size_t j = 0; j < sterms.size(); ++j) {
      const auto& t = sterms[j];
      const std::string who = "term " + std::to_string(j) + " (" + t.name + ")";
      if (!t.z.valid() || t.z.index >= base.num_vars())
        throw Error(ErrorCode::kInvalidModel, who + " has no argument variable");
      if (seen[t.z.index])
        throw Error(ErrorCode::kInvalidModel, who + " shares its variable");
      seen[t.z.index] = 1;
      if (t.l0.valid() != t.l1.valid())
        throw Error(ErrorCode::kInvalidModel, who + " supplies only one regime flag");
      for (milp::VarId l : {t.l0, t.l1})
        if (l.valid() && (l.index >= base.num_vars() || !base.is_integer(l.index)))
          throw Error(ErrorCode::kInvalidModel, who + " regime flag must be binary");
      if (t.curve.lower() > t.curve.model_upper())
        throw Error(ErrorCode::kInvalidModel, who + " has an empty domain");
      const auto& v = base.var(t.z);
      if (v.lower > t.curve.model_upper() || v.upper < t.curve.lower())
        throw Error(ErrorCode::kInvalidModel,
                    who + " variable bounds miss the curve domain");
    }
  }

  // The base model with argument bounds clipped to the curve domains, regime
  // binaries for unhosted terms and the regime rows
  //   z - z0 l1 - lower l0 >= 0,  z - K l1 - z0 l0 <= 0
  // for every term (K the model domain end). Variable indices of `base` are
  // preserved; new variables are appended.
  milp::MilpModel original_model(std::vector<RegimeVars>* regimes = nullptr) const {
    using namespace milp;
    MilpModel m = base;
    if (regimes) regimes->clear();
    for (size_t j = 0; j < sterms.size(); ++j) {
      const auto& t = sterms[j];
      const std::string tag = "_" + std::to_string(j);
      auto& zv = m.var(t.z);
      zv.lower = std::max(zv.lower, t.curve.lower());
      zv.upper = std::min(zv.upper, t.curve.model_upper());
      VarId l0 = t.l0, l1 = t.l1;
      if (!t.hosted()) {
        l0 = m.add_binary("l0" + tag);
        l1 = m.add_binary("l1" + tag);
        m.add_constraint("regime" + tag, {{l0, 1.0}, {l1, 1.0}}, Sense::kEqual, 1.0);
      } else {
        m.add_constraint("regime" + tag, {{l0, 1.0}, {l1, 1.0}}, Sense::kLessEqual, 1.0);
      }
      const double lo = t.curve.lower(), z0 = t.curve.deflection(),
                   hi = t.curve.model_upper();
      m.add_constraint("zlo" + tag, {{t.z, 1.0}, {l1, -z0}, {l0, -lo}},
                       Sense::kGreaterEqual, 0.0);
      m.add_constraint("zhi" + tag, {{t.z, 1.0}, {l1, -hi}, {l0, -z0}},
                       Sense::kLessEqual, 0.0);
      if (regimes) regimes->push_back({t.z, l0, l1});
    }
    return m;
  }

  // Cost of term j under the regime flags: l0 cap(z) + l1 cup(z).
  static double term_cost(const SplitPair& pair, double z, double l0, double l1) {
    double c = 0.0;
    if (l0 > 0.5) c += pair.cap(z);
    if (l1 > 0.5) c += pair.cup(z);
    return c;
  }

  // True objective of an assignment of the original model: base objective
  // plus the regime-weighted split costs, which equal phi(z) in the active
  // regime and vanish when both flags are off.
  double evaluate(const std::vector<double>& x,
                  const std::vector<RegimeVars>& regimes) const {
    double f = base.evaluate_objective(x);
    for (size_t j = 0; j < sterms.size(); ++j) {
      const SplitPair pair(sterms[j].curve);
      const double z = std::clamp(x[regimes[j].z.index], pair.lower(), pair.upper());
      f += term_cost(pair, z, x[regimes[j].l0.index], x[regimes[j].l1.index]);
    }
    return f;
  }
};

}  // namespace ioa
