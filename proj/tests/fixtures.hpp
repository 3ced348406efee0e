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

#include "ioa/problem.hpp"
#include "ioa/scurve.hpp"

namespace ioa::testing {

// (z - 5)^3 + 125 on [1, 7].
inline CurveSpec cubic_example_spec() {
  CurveSpec s;
  s.kind = CurveKind::kCubic;
  s.lower = 1.0;
  s.upper = 7.0;
  s.deflection = 5.0;
  s.a = 1.0;
  s.eps = 0.0;
  s.w = 125.0;
  return s;
}

// min x1^3 - 15 x1^2 + 75 x1 - 30 x2 over a small polytope in [1, 7]^2.
inline Problem cubic_example() {
  using namespace milp;
  Problem p;
  const VarId x1 = p.base.add_continuous("x1", 1.0, 7.0);
  const VarId x2 = p.base.add_continuous("x2", 1.0, 7.0);
  p.base.set_objective_coef(x2, -30.0);
  p.base.add_constraint("c1", {{x1, -9.0}, {x2, 5.0}}, Sense::kLessEqual, 9.0);
  p.base.add_constraint("c2", {{x1, 1.0}, {x2, -6.0}}, Sense::kLessEqual, 6.0);
  p.base.add_constraint("c3", {{x1, 3.0}, {x2, 1.0}}, Sense::kLessEqual, 9.0);
  p.sterms.push_back({"x1", x1, build_scurve(cubic_example_spec()), {}, {}});
  return p;
}

}  // namespace ioa::testing
