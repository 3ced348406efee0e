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

// Run reports, their CSV form and the per-iteration trace file.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/ioa.hpp"

namespace ioa {

inline constexpr const char* kCsvHeader =
    "instance,n,m,ftype,cost,alpha,theta,beta,LB,UB,gap_pct,time_s,iters,"
    "milp_solves,n_e,n_d,n_T,reason";

struct RunReport {
  std::string instance;
  int n = 0, m = 0;
  int ftype = 0, cost = 0;
  double alpha = 1.0, theta = 1.0, beta = 0.0;
  double lb = -kInf, ub = kInf;
  double gap_pct = kInf;
  double time_s = 0.0;
  double iters = 0, milp_solves = 0;
  double n_e = 0, n_d = 0, n_T = 0;
  std::string reason;
};

namespace report_detail {

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_num(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "bad number '" + s + "' in report");
  }
  if (used != s.size()) throw Error(ErrorCode::kParse, "bad number '" + s + "' in report");
  return v;
}

// Instance ids and reasons never contain commas; anything else is replaced.
inline std::string clean(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace report_detail

inline std::string to_csv_row(const RunReport& r) {
  using report_detail::fmt;
  std::ostringstream os;
  os << report_detail::clean(r.instance) << ',' << r.n << ',' << r.m << ',' << r.ftype << ','
     << r.cost << ',' << fmt(r.alpha) << ',' << fmt(r.theta) << ',' << fmt(r.beta) << ','
     << fmt(r.lb) << ',' << fmt(r.ub) << ',' << fmt(r.gap_pct) << ',' << fmt(r.time_s) << ','
     << fmt(r.iters) << ',' << fmt(r.milp_solves) << ',' << fmt(r.n_e) << ',' << fmt(r.n_d)
     << ',' << fmt(r.n_T) << ',' << report_detail::clean(r.reason);
  return os.str();
}

inline RunReport parse_csv_row(const std::string& line) {
  std::vector<std::string> f;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) f.push_back(cell);
  if (!line.empty() && line.back() == ',') f.push_back("");
  if (f.size() != 18) throw Error(ErrorCode::kParse, "report row needs 18 fields");
  using report_detail::parse_num;
  RunReport r;
  r.instance = f[0];
  r.n = static_cast<int>(parse_num(f[1]));
  r.m = static_cast<int>(parse_num(f[2]));
  r.ftype = static_cast<int>(parse_num(f[3]));
  r.cost = static_cast<int>(parse_num(f[4]));
  r.alpha = parse_num(f[5]);
  r.theta = parse_num(f[6]);
  r.beta = parse_num(f[7]);
  r.lb = parse_num(f[8]);
  r.ub = parse_num(f[9]);
  r.gap_pct = parse_num(f[10]);
  r.time_s = parse_num(f[11]);
  r.iters = parse_num(f[12]);
  r.milp_solves = parse_num(f[13]);
  r.n_e = parse_num(f[14]);
  r.n_d = parse_num(f[15]);
  r.n_T = parse_num(f[16]);
  r.reason = f[17];
  return r;
}

// Avg, Min and Max rows over a group of reports sharing one configuration.
// Fields that are not finite in some row are skipped for that column.
inline std::vector<RunReport> summarize_group(const std::vector<RunReport>& rows,
                                              const std::string& group) {
  if (rows.empty()) return {};
  std::vector<RunReport> out(3, rows.front());
  const char* names[3] = {"Avg", "Min", "Max"};
  for (int k = 0; k < 3; ++k) {
    out[k].instance = std::string(names[k]) + ":" + group;
    out[k].reason = "summary";
  }
  auto agg = [&](auto member) {
    double sum = 0.0, mn = kInf, mx = -kInf;
    int count = 0;
    for (const auto& r : rows) {
      const double v = r.*member;
      if (!std::isfinite(v)) continue;
      sum += v;
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      ++count;
    }
    out[0].*member = count ? sum / count : std::numeric_limits<double>::quiet_NaN();
    out[1].*member = count ? mn : std::numeric_limits<double>::quiet_NaN();
    out[2].*member = count ? mx : std::numeric_limits<double>::quiet_NaN();
  };
  agg(&RunReport::lb);
  agg(&RunReport::ub);
  agg(&RunReport::gap_pct);
  agg(&RunReport::time_s);
  agg(&RunReport::iters);
  agg(&RunReport::milp_solves);
  agg(&RunReport::n_e);
  agg(&RunReport::n_d);
  agg(&RunReport::n_T);
  return out;
}

inline constexpr const char* kTraceHeader =
    "iteration,lb,ub,gap_pct,seconds,points_added,raw_lb,inner_iterations";

inline void write_trace_row(std::ostream& os, const TraceRecord& r) {
  using report_detail::fmt;
  os << r.iteration << ',' << fmt(r.lb) << ',' << fmt(r.ub) << ',' << fmt(r.gap_pct) << ','
     << fmt(r.seconds) << ',' << r.points_added << ',' << fmt(r.raw_lb) << ','
     << r.inner_iterations << '\n';
}

}  // namespace ioa
