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

#include <algorithm>
#include <sstream>

#include "ioa/datagen.hpp"
#include "ioa/io.hpp"
#include "ioa/ioa.hpp"
#include "ioa/report.hpp"

namespace ioa {
namespace {

std::string data_path(const std::string& name) { return std::string(IOA_TEST_DATA) + "/" + name; }

void expect_parse_error(const std::string& text, const std::string& fragment) {
  try {
    io::parse_instance(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(InstanceIo, FlpRoundTrip) {
  GenSpec g;
  g.n = 4;
  g.m = 9;
  g.seed = 12;
  g.ftype = 2;
  g.cost = 3;
  const FlpInstance inst = generate(g);
  const std::string text = io::to_text(inst);
  const io::Instance back = io::parse_instance(text);
  ASSERT_TRUE(std::holds_alternative<FlpInstance>(back));
  const auto& f = std::get<FlpInstance>(back);
  EXPECT_EQ(io::to_text(f), text);
  EXPECT_EQ(f.meta.id, inst.meta.id);
  EXPECT_EQ(f.meta.seed, 12u);
  for (int j = 0; j < inst.n(); ++j) {
    EXPECT_EQ(f.facilities[j].capacity, inst.facilities[j].capacity);
    EXPECT_EQ(f.facilities[j].curve.a2, inst.facilities[j].curve.a2);
  }
  EXPECT_EQ(f.transport, inst.transport);
}

TEST(InstanceIo, GenericAppendixB) {
  const io::Instance inst = io::load_instance(data_path("appendix_b.json"));
  ASSERT_TRUE(std::holds_alternative<io::GenericInstance>(inst));
  const auto& g = std::get<io::GenericInstance>(inst);
  EXPECT_EQ(g.id, "cubic-example");
  ASSERT_EQ(g.problem.sterms.size(), 1u);
  EXPECT_DOUBLE_EQ(g.problem.sterms[0].curve(1.0), 61.0);
  EXPECT_EQ(g.problem.base.num_rows(), 3);
  const io::Instance again = io::parse_instance(io::to_text(inst));
  EXPECT_EQ(io::to_text(again), io::to_text(inst));
  IoaOptions opt;
  opt.epsilon = 1e-4;
  EXPECT_NEAR(ioa_solve(g.problem, opt).ub, -52.875, 1e-3);
}

TEST(InstanceIo, TinyFlpFile) {
  const io::Instance inst = io::load_instance(data_path("tiny_flp.json"));
  ASSERT_TRUE(std::holds_alternative<FlpInstance>(inst));
  EXPECT_EQ(std::get<FlpInstance>(inst).n(), 3);
}

TEST(InstanceIo, Diagnostics) {
  expect_parse_error("{\n  \"kind\": \"flp\",\n  oops\n}", "line 3");
  expect_parse_error("[1, 2]", "top level");
  expect_parse_error(R"({"kind": "mystery"})", "kind");
  expect_parse_error(R"({"kind": "generic", "version": 9})", "version");

  GenSpec g;
  g.n = 4;
  g.m = 5;
  io::Json j = io::flp_to_json(generate(g));
  j["facilities"][3]["capacity"] = "lots";
  expect_parse_error(j.dump(), "facilities[3].capacity");

  const std::string generic = io::read_file(data_path("appendix_b.json"));
  io::Json k = io::Json::parse(generic);
  k["constraints"][1]["sense"] = "<>";
  expect_parse_error(k.dump(), "constraints[1].sense");
  k = io::Json::parse(generic);
  k["sterms"][0]["var"] = "nope";
  expect_parse_error(k.dump(), "sterms[0]");
}

TEST(InstanceIo, MissingFile) {
  try {
    io::load_instance(data_path("does_not_exist.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

RunReport sample(int k) {
  RunReport r;
  r.instance = "inst-" + std::to_string(k);
  r.n = 10;
  r.m = 50;
  r.ftype = 2;
  r.cost = 1;
  r.beta = 0.5;
  r.lb = 1000.0 + k / 3.0;
  r.ub = 1010.0 + k * 0.1;
  r.gap_pct = gap_percent(r.lb, r.ub);
  r.time_s = 1.5 * k;
  r.iters = k;
  r.milp_solves = 2 * k;
  r.n_e = k;
  r.n_d = 1;
  r.n_T = k + 1;
  r.reason = "gap";
  return r;
}

TEST(Report, CsvRoundTrip) {
  const std::string header = kCsvHeader;
  EXPECT_EQ(header,
            "instance,n,m,ftype,cost,alpha,theta,beta,LB,UB,gap_pct,time_s,iters,milp_solves,"
            "n_e,n_d,n_T,reason");
  RunReport r = sample(7);
  r.ub = kInf;
  r.gap_pct = kInf;
  const RunReport back = parse_csv_row(to_csv_row(r));
  EXPECT_EQ(back.instance, r.instance);
  EXPECT_EQ(back.lb, r.lb);
  EXPECT_EQ(back.ub, kInf);
  EXPECT_EQ(back.time_s, r.time_s);
  EXPECT_EQ(back.n_T, r.n_T);
  EXPECT_EQ(back.reason, "gap");
  EXPECT_EQ(to_csv_row(back), to_csv_row(r));
  EXPECT_THROW(parse_csv_row("a,b,c"), Error);
}

TEST(Report, SummaryTriple) {
  const std::vector<RunReport> rows{sample(1), sample(2), sample(3)};
  const auto s = summarize_group(rows, "1a-t2-c1");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].instance, "Avg:1a-t2-c1");
  EXPECT_EQ(s[1].instance, "Min:1a-t2-c1");
  EXPECT_EQ(s[2].instance, "Max:1a-t2-c1");
  const double mean_lb = (rows[0].lb + rows[1].lb + rows[2].lb) / 3.0;
  const double mean_gap = (rows[0].gap_pct + rows[1].gap_pct + rows[2].gap_pct) / 3.0;
  EXPECT_NEAR(s[0].lb, mean_lb, 1e-9);
  EXPECT_NEAR(s[0].gap_pct, mean_gap, 1e-9);
  EXPECT_NEAR(s[0].time_s, 3.0, 1e-9);
  EXPECT_EQ(s[1].n_e, 1.0);
  EXPECT_EQ(s[2].n_e, 3.0);
  for (const auto& r : s) EXPECT_EQ(r.reason, "summary");
}

TEST(Report, TraceRow) {
  TraceRecord t;
  t.iteration = 2;
  t.lb = -60.5;
  t.ub = -52.875;
  t.gap_pct = gap_percent(t.lb, t.ub);
  t.points_added = 1;
  std::ostringstream os;
  write_trace_row(os, t);
  const std::string row = os.str(), header = kTraceHeader;
  EXPECT_EQ(row.rfind("2,-60.5,-52.875,", 0), 0u) << row;
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

}  // namespace
}  // namespace ioa
