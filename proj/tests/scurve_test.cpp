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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "ioa/flp.hpp"
#include "ioa/scurve.hpp"

namespace ioa {
namespace {

CurveSpec type1(double k = 100.0, double z0 = 50.0) { return table1_spec(1, 1, k, z0); }

void expect_error(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(BuildScurve, PowerPowerValues) {
  const SCurve c = build_scurve(type1());
  EXPECT_NEAR(c(50.0), 40.0 * std::sqrt(50.0), 1e-12);
  EXPECT_NEAR(c(50.0), 282.843, 1e-3);
  EXPECT_NEAR(c(100.0), 40.0 * std::sqrt(50.0) + 0.5 * 2500.0, 1e-9);
  EXPECT_NEAR(c(100.0), 1532.843, 1e-3);
}

TEST(BuildScurve, CubicExampleValues) {
  const SCurve c = build_scurve(testing::cubic_example_spec());
  EXPECT_DOUBLE_EQ(c(5.0), 125.0);
  EXPECT_DOUBLE_EQ(c(1.0), 61.0);
  EXPECT_DOUBLE_EQ(c(7.0), 133.0);
  EXPECT_DOUBLE_EQ(c.dleft(), 0.0);
  EXPECT_DOUBLE_EQ(c.dright(), 0.0);
}

TEST(BuildScurve, OneSidedDerivativesAtDeflection) {
  const SCurve c = build_scurve(type1());
  EXPECT_NEAR(c.dleft(), 20.0 / std::sqrt(50.0), 1e-12);
  EXPECT_DOUBLE_EQ(c.dright(), 0.0);
  const SCurve h = build_scurve(table1_spec(2, 1, 100.0, 50.0));
  EXPECT_NEAR(h.dright(), 20.0 * std::sqrt(50.0) / 50.0, 1e-12);
}

TEST(BuildScurve, RejectsBadCurves) {
  CurveSpec s = type1();
  s.deflection = 150.0;
  expect_error(ErrorCode::kDomain, [&] { build_scurve(s); });

  // Decreasing on the right half.
  expect_error(ErrorCode::kNonMonotone, [&] {
    build_custom_scurve(0.0, 10.0, 5.0,
                        {[](double z) { return z <= 5.0 ? z : 5.0 - (z - 5.0) * (z - 5.0); }, {}});
  });

  // z^2 on the left is convex, not concave.
  expect_error(ErrorCode::kShape, [&] {
    build_custom_scurve(0.0, 10.0, 5.0, {[](double z) { return z * z; }, {}});
  });

  CurveSpec bad_params = type1();
  bad_params.b1 = 2.0;
  expect_error(ErrorCode::kDomain, [&] { build_scurve(bad_params); });

  expect_error(ErrorCode::kDiscontinuous, [&] {
    build_custom_scurve(0.0, 10.0, 5.0,
                        {[](double z) { return z < 5.0 ? std::sqrt(z) : 10.0 + z; }, {}});
  });
}

TEST(BuildScurve, CustomUsesFiniteDifferences) {
  const SCurve c = build_custom_scurve(
      1.0, 7.0, 5.0, {[](double z) { return z * z * z - 15 * z * z + 75 * z; }, {}});
  EXPECT_NEAR(c.dleft(), 0.0, 1e-3);
  EXPECT_NEAR(c.dright(), 0.0, 1e-3);
  EXPECT_NEAR(c(6.0), 126.0, 1e-12);
}

TEST(Split, CubicExampleHalves) {
  const SplitPair p(build_scurve(testing::cubic_example_spec()));
  EXPECT_DOUBLE_EQ(p.cap(6.0), 125.0);
  EXPECT_DOUBLE_EQ(p.cup(3.0), 125.0);
  EXPECT_DOUBLE_EQ(p.cap(1.0), 61.0);
  EXPECT_DOUBLE_EQ(p.m0(), 125.0);
  EXPECT_DOUBLE_EQ(p.m1(), 133.0);
}

TEST(Split, TangentExtensions) {
  const SplitPair p(build_scurve(type1()));
  const double f0 = 40.0 * std::sqrt(50.0);
  EXPECT_NEAR(p.cap(80.0), f0 + 30.0 * p.curve().dleft(), 1e-9);
  EXPECT_NEAR(p.cup(20.0), f0, 1e-9);
  EXPECT_DOUBLE_EQ(p.cap(50.0), p.cup(50.0));
}

TEST(BigmGamma, CubicExample) {
  const SplitPair p(build_scurve(testing::cubic_example_spec()));
  // 48 * 6 + 125 - 61
  EXPECT_NEAR(bigm_gamma(p), 352.0, 1e-9);
}

TEST(BigmGamma, ConstantCapIsFloored) {
  const SCurve flat = build_custom_scurve(0.0, 10.0, 10.0, {[](double) { return 3.0; }, {}});
  EXPECT_DOUBLE_EQ(bigm_gamma(SplitPair(flat)), 1.0);
}

TEST(BigmGamma, LinearCap) {
  const SCurve lin = build_custom_scurve(0.0, 10.0, 10.0,
                                         {[](double z) { return 2.0 * z; },
                                          [](double) { return 2.0; }});
  EXPECT_NEAR(bigm_gamma(SplitPair(lin)), 40.0, 1e-9);
}

TEST(HyperbolicGuard, ModelDomainStopsShortOfPole) {
  const SCurve c = build_scurve(table1_spec(2, 1, 100.0, 50.0));
  EXPECT_LT(c.model_upper(), 100.0);
  EXPECT_NEAR(c.model_upper(), 100.0 - 0.5, 1e-12);
  EXPECT_TRUE(std::isfinite(SplitPair(c).m1()));
  EXPECT_THROW(c(99.9), Error);
}

class AllConfigs : public ::testing::TestWithParam<std::tuple<int, int>> {};

// Every Table 1 configuration: recombination, BigM dominance, concavity and
// convexity of the halves, determinism.
TEST_P(AllConfigs, SplitProperties) {
  const auto [ftype, structure] = GetParam();
  std::mt19937_64 rng(ftype * 10 + structure);
  std::uniform_real_distribution<double> cap_draw(100.0, 500.0);
  for (int rep = 0; rep < 5; ++rep) {
    const double k = cap_draw(rng);
    const SCurve c = build_scurve(table1_spec(ftype, structure, k, 0.5 * k));
    const SplitPair p(c), q(c);
    EXPECT_EQ(p.m0(), q.m0());
    EXPECT_EQ(p.m1(), q.m1());
    std::uniform_real_distribution<double> zd(p.lower(), p.upper());
    const double z0 = p.deflection();
    for (int s = 0; s < 200; ++s) {
      const double z = zd(rng);
      if (z <= z0) EXPECT_NEAR(p.cap(z), c(z), 1e-9 * std::max(1.0, c(z)));
      else EXPECT_NEAR(p.cup(z), c(z), 1e-9 * std::max(1.0, c(z)));
      EXPECT_LE(p.cap(z), p.m0() + 1e-9);
      EXPECT_LE(p.cup(z), p.m1() + 1e-9);
      const double a = zd(rng), b = zd(rng), mid = 0.5 * (a + b);
      const double tol = 1e-9 * std::max(1.0, p.m1());
      EXPECT_GE(p.cap(mid) + tol, 0.5 * (p.cap(a) + p.cap(b)));
      EXPECT_LE(p.cup(mid) - tol, 0.5 * (p.cup(a) + p.cup(b)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Table1, AllConfigs,
                         ::testing::Combine(::testing::Values(1, 2, 3),
                                            ::testing::Values(1, 2, 3, 4)));

TEST(Scaled, MultipliesValuesAndSlopes) {
  const SCurve c = build_scurve(type1());
  const SCurve d = c.scaled(3.0);
  EXPECT_NEAR(d(70.0), 3.0 * c(70.0), 1e-9);
  EXPECT_NEAR(d.dleft(), 3.0 * c.dleft(), 1e-12);
  EXPECT_NEAR(SplitPair(d).m1(), 3.0 * SplitPair(c).m1(), 1e-9);
}

}  // namespace
}  // namespace ioa
