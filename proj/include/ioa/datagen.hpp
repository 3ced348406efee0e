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

// Seeded generator of Holmberg-style facility location instances.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/flp.hpp"

namespace ioa {

struct GenSpec {
  std::string set = "1a";  // 1a, 1b, 2, 3-analog
  int n = 10;              // facilities
  int m = 50;              // customers
  std::uint64_t seed = 1;
  int ftype = 1;
  int cost = 1;
  double beta = 0.5;
};

inline constexpr int kCapacityRedraws = 100;

namespace datagen_detail {

struct Point {
  double x, y;
};

inline double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// uniform_real_distribution is implementation-defined; this keeps draws
// identical across standard libraries.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline double normal(std::mt19937_64& rng) {
  double u1 = uniform(rng, 0.0, 1.0);
  while (u1 <= 0.0) u1 = uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Demand-weighted p-median over the customer locations: greedy opening
// followed by first-improvement swaps.
inline std::vector<int> p_median(const std::vector<Point>& pts,
                                 const std::vector<double>& weight, int p) {
  const int m = static_cast<int>(pts.size());
  std::vector<std::vector<double>> d(m, std::vector<double>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) d[a][b] = dist(pts[a], pts[b]);
  auto cost_of = [&](const std::vector<int>& sites) {
    double c = 0.0;
    for (int i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int s : sites) best = std::min(best, d[i][s]);
      c += weight[i] * best;
    }
    return c;
  };
  std::vector<int> sites;
  std::vector<char> used(m, 0);
  std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
  for (int k = 0; k < p; ++k) {
    int pick = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < m; ++c) {
      if (used[c]) continue;
      double total = 0.0;
      for (int i = 0; i < m; ++i) total += weight[i] * std::min(nearest[i], d[i][c]);
      if (total < best) {
        best = total;
        pick = c;
      }
    }
    used[pick] = 1;
    sites.push_back(pick);
    for (int i = 0; i < m; ++i) nearest[i] = std::min(nearest[i], d[i][pick]);
  }
  double current = cost_of(sites);
  for (int round = 0; round < 20; ++round) {
    bool improved = false;
    for (int k = 0; k < p; ++k)
      for (int c = 0; c < m; ++c) {
        if (used[c]) continue;
        const int old = sites[k];
        sites[k] = c;
        const double trial = cost_of(sites);
        if (trial < current - 1e-9) {
          current = trial;
          used[old] = 0;
          used[c] = 1;
          improved = true;
        } else {
          sites[k] = old;
        }
      }
    if (!improved) break;
  }
  return sites;
}

}  // namespace datagen_detail

// Replaces every facility curve by the Table 1 setting and scales fixed or
// transport costs for structures 2 and 4. Expects an instance that carries
// the base (structure 1) cost data.
inline FlpInstance attach_cost_config(FlpInstance inst, int ftype, int structure) {
  if (ftype < 1 || ftype > 3)
    throw Error(ErrorCode::kInvalidArgument, "function type must be 1, 2 or 3");
  if (structure < 1 || structure > 4)
    throw Error(ErrorCode::kInvalidArgument, "cost structure must be 1..4");
  if (inst.meta.cost > 1)
    throw Error(ErrorCode::kInvalidArgument, "instance already carries cost structure " +
                                                 std::to_string(inst.meta.cost));
  const double beta = inst.meta.beta > 0.0 ? inst.meta.beta : 0.5;
  for (auto& f : inst.facilities) {
    f.curve = table1_spec(ftype, structure, f.capacity, beta * f.capacity);
    if (structure == 2) f.fixed_cost *= 10.0;
  }
  if (structure == 4)
    for (auto& row : inst.transport)
      for (double& c : row) c *= 10.0;
  inst.meta.ftype = ftype;
  inst.meta.cost = structure;
  inst.meta.beta = beta;
  return inst;
}

inline FlpInstance generate(const GenSpec& spec) {
  using namespace datagen_detail;
  if (spec.n <= 0 || spec.m <= 0)
    throw Error(ErrorCode::kInvalidArgument, "n and m must be positive");
  if (spec.n > spec.m)
    throw Error(ErrorCode::kInvalidArgument, "sites are drawn from customers, need n <= m");
  if (!(spec.beta > 0.0 && spec.beta < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "beta must lie in (0, 1)");
  const bool set2 = spec.set == "2", set3 = spec.set == "3-analog";
  if (!(spec.set == "1a" || spec.set == "1b" || set2 || set3))
    throw Error(ErrorCode::kInvalidArgument, "unknown set '" + spec.set + "'");
  std::mt19937_64 rng(spec.seed);

  const double coord_hi = set2 ? 300.0 : 200.0;
  const double d_lo = spec.set == "1b" ? 30.0 : 10.0, d_hi = spec.set == "1b" ? 80.0 : 50.0;
  const double f_lo = 300.0, f_hi = set3 ? 600.0 : 700.0;
  const double k_lo = set2 ? 200.0 : 100.0, k_hi = set2 ? 600.0 : 500.0;

  std::vector<Point> pts(spec.m);
  if (set3) {
    constexpr int kClusters = 5;
    constexpr double kSpread = 15.0;
    std::vector<Point> centers(kClusters);
    for (auto& c : centers) c = {uniform(rng, 10.0, 200.0), uniform(rng, 10.0, 200.0)};
    for (auto& p : pts) {
      const Point& c = centers[static_cast<size_t>(uniform(rng, 0.0, kClusters)) % kClusters];
      p = {std::clamp(c.x + kSpread * normal(rng), 0.0, 250.0),
           std::clamp(c.y + kSpread * normal(rng), 0.0, 250.0)};
    }
  } else {
    for (auto& p : pts) p = {uniform(rng, 10.0, coord_hi), uniform(rng, 10.0, coord_hi)};
  }
  std::vector<double> demand(spec.m);
  for (double& d : demand) d = uniform(rng, d_lo, d_hi);
  const std::vector<int> sites = p_median(pts, demand, spec.n);

  FlpInstance inst;
  inst.meta.set = spec.set;
  inst.meta.seed = spec.seed;
  inst.meta.beta = spec.beta;
  inst.meta.cost = 1;
  inst.meta.id = "set" + spec.set + "-n" + std::to_string(spec.n) + "-m" +
                 std::to_string(spec.m) + "-s" + std::to_string(spec.seed);
  for (int i = 0; i < spec.m; ++i) inst.customers.push_back({demand[i], pts[i].x, pts[i].y});
  std::vector<double> extra(spec.n, 0.0);
  for (int j = 0; j < spec.n; ++j) {
    Facility f;
    f.x = pts[sites[j]].x;
    f.y = pts[sites[j]].y;
    f.fixed_cost = uniform(rng, f_lo, f_hi);
    f.capacity = uniform(rng, k_lo, k_hi);
    if (set2) extra[j] = uniform(rng, 0.0, 50.0);
    inst.facilities.push_back(f);
  }
  const double total_demand = inst.total_demand();
  for (int attempt = 0; inst.total_capacity() < total_demand; ++attempt) {
    if (attempt >= kCapacityRedraws)
      throw Error(ErrorCode::kInfeasible, "capacity below demand after 100 redraws");
    for (auto& f : inst.facilities) f.capacity = uniform(rng, k_lo, k_hi);
  }

  // Full-demand service costs, then per unit.
  const Point depot{0.0, 0.0};
  inst.transport.assign(spec.m, std::vector<double>(spec.n));
  for (int i = 0; i < spec.m; ++i)
    for (int j = 0; j < spec.n; ++j) {
      const Point fj{inst.facilities[j].x, inst.facilities[j].y};
      const double e = dist(pts[i], fj);
      const double c = set2 ? 4.0 * (dist(depot, fj) + e + dist(depot, pts[i])) + 2.0 * extra[j]
                            : 4.0 * e;
      inst.transport[i][j] = c / demand[i];
    }
  return attach_cost_config(std::move(inst), spec.ftype, spec.cost);
}

}  // namespace ioa
