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

#include "ioa/datagen.hpp"
#include "ioa/io.hpp"

namespace ioa {
namespace {

GenSpec spec(const std::string& set, int seed, int ftype = 1, int cost = 1) {
  GenSpec g;
  g.set = set;
  g.seed = static_cast<std::uint64_t>(seed);
  g.ftype = ftype;
  g.cost = cost;
  return g;
}

TEST(Generate, Set1aRanges) {
  for (int seed = 1; seed <= 5; ++seed) {
    const FlpInstance inst = generate(spec("1a", seed));
    ASSERT_EQ(inst.n(), 10);
    ASSERT_EQ(inst.m(), 50);
    for (const auto& c : inst.customers) {
      EXPECT_GE(c.demand, 10.0);
      EXPECT_LE(c.demand, 50.0);
      EXPECT_GE(c.x, 10.0);
      EXPECT_LE(c.x, 200.0);
    }
    for (const auto& f : inst.facilities) {
      EXPECT_GE(f.fixed_cost, 300.0);
      EXPECT_LE(f.fixed_cost, 700.0);
      EXPECT_GE(f.capacity, 100.0);
      EXPECT_LE(f.capacity, 500.0);
      EXPECT_DOUBLE_EQ(f.curve.deflection, 0.5 * f.capacity);
      EXPECT_DOUBLE_EQ(f.curve.upper, f.capacity);
    }
  }
}

TEST(Generate, TransportIsPerUnitDistance) {
  const FlpInstance inst = generate(spec("1a", 2));
  for (int i = 0; i < inst.m(); ++i)
    for (int j = 0; j < inst.n(); ++j) {
      const auto& c = inst.customers[i];
      const auto& f = inst.facilities[j];
      EXPECT_NEAR(inst.transport[i][j] * c.demand, 4.0 * std::hypot(c.x - f.x, c.y - f.y),
                  1e-9);
    }
}

TEST(Generate, SitesComeFromCustomerPoints) {
  const FlpInstance inst = generate(spec("1a", 3));
  for (const auto& f : inst.facilities) {
    bool found = false;
    for (const auto& c : inst.customers) found |= c.x == f.x && c.y == f.y;
    EXPECT_TRUE(found);
  }
}

TEST(Generate, Deterministic) {
  for (const char* set : {"1a", "1b", "2", "3-analog"}) {
    const auto a = io::to_text(generate(spec(set, 7)));
    const auto b = io::to_text(generate(spec(set, 7)));
    EXPECT_EQ(a, b) << set;
    EXPECT_NE(a, io::to_text(generate(spec(set, 8)))) << set;
  }
}

TEST(Generate, CapacityRatioBand) {
  double lo = kInf, hi = 0.0;
  for (int seed = 1; seed <= 100; ++seed) {
    const FlpInstance inst = generate(spec("1a", seed));
    const double r = inst.total_capacity() / inst.total_demand();
    EXPECT_GE(r, 1.0);
    EXPECT_LE(r, 5.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  // The band must cover the published 1.37 to 2.06.
  EXPECT_LE(lo, 1.37);
  EXPECT_GE(hi, 2.06);
}

TEST(Generate, OtherSets) {
  const FlpInstance b = generate(spec("1b", 1));
  for (const auto& c : b.customers) {
    EXPECT_GE(c.demand, 30.0);
    EXPECT_LE(c.demand, 80.0);
  }
  const FlpInstance two = generate(spec("2", 1));
  for (const auto& f : two.facilities) {
    EXPECT_GE(f.capacity, 200.0);
    EXPECT_LE(f.capacity, 600.0);
  }
  // Depot legs make every set 2 cost at least the direct set 1 style cost.
  for (int i = 0; i < two.m(); ++i)
    for (int j = 0; j < two.n(); ++j) {
      const auto& c = two.customers[i];
      const auto& f = two.facilities[j];
      EXPECT_GE(two.transport[i][j] * c.demand + 1e-9, 4.0 * std::hypot(c.x - f.x, c.y - f.y));
    }
  const FlpInstance three = generate(spec("3-analog", 1));
  for (const auto& c : three.customers) {
    EXPECT_GE(c.x, 0.0);
    EXPECT_LE(c.x, 250.0);
  }
  for (const auto& f : three.facilities) EXPECT_LE(f.fixed_cost, 600.0);
}

TEST(Generate, RejectsBadSpecs) {
  GenSpec g;
  g.set = "9";
  EXPECT_THROW(generate(g), Error);
  g = GenSpec{};
  g.n = 60;
  EXPECT_THROW(generate(g), Error);
  g = GenSpec{};
  g.beta = 1.0;
  EXPECT_THROW(generate(g), Error);
  g = GenSpec{};
  g.ftype = 4;
  EXPECT_THROW(generate(g), Error);
}

class Configs : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(Configs, EveryCurveValidates) {
  const auto [ftype, cost] = GetParam();
  for (int seed = 1; seed <= 20; ++seed) {
    const FlpInstance inst = generate(spec("1a", seed, ftype, cost));
    for (const auto& f : inst.facilities) EXPECT_NO_THROW(build_scurve(f.curve));
  }
}

INSTANTIATE_TEST_SUITE_P(Table1, Configs,
                         ::testing::Combine(::testing::Values(1, 2, 3),
                                            ::testing::Values(1, 2, 3, 4)));

TEST(AttachCostConfig, Structures) {
  const FlpInstance base = generate(spec("1a", 4));
  const FlpInstance fixed = generate(spec("1a", 4, 1, 2));
  const FlpInstance heavy = generate(spec("1a", 4, 1, 3));
  const FlpInstance far = generate(spec("1a", 4, 1, 4));
  for (int j = 0; j < base.n(); ++j) {
    EXPECT_DOUBLE_EQ(fixed.facilities[j].fixed_cost, 10.0 * base.facilities[j].fixed_cost);
    EXPECT_DOUBLE_EQ(heavy.facilities[j].curve.a1, 400.0);
    EXPECT_DOUBLE_EQ(heavy.facilities[j].curve.a2, 5.0);
  }
  EXPECT_DOUBLE_EQ(far.transport[3][2], 10.0 * base.transport[3][2]);
  EXPECT_THROW(attach_cost_config(far, 1, 2), Error);
}

TEST(AttachCostConfig, Table1Values) {
  EXPECT_NEAR(build_scurve(table1_spec(1, 1, 100.0, 50.0))(50.0), 282.843, 1e-3);
  EXPECT_NEAR(build_scurve(table1_spec(3, 1, 100.0, 50.0))(50.0), 12.5, 1e-12);
  const SCurve h = build_scurve(table1_spec(2, 1, 100.0, 50.0));
  EXPECT_GT(h(99.0), h(90.0));
  EXPECT_GT(h(99.0), 10.0 * h(50.0));
}

}  // namespace
}  // namespace ioa
