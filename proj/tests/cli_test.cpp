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
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ioa/io.hpp"
#include "ioa/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Output {
  int code = -1;
  std::string out;
};

Output run(const std::string& args) {
  const std::string cmd = std::string("'") + IOA_CLI + "' " + args + " 2>&1";
  Output r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(IOA_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// Report row following the CSV header in the command output.
ioa::RunReport report_of(const std::string& out) {
  const auto ls = lines(out);
  for (size_t k = 0; k + 1 < ls.size(); ++k)
    if (ls[k] == ioa::kCsvHeader) return ioa::parse_csv_row(ls[k + 1]);
  ADD_FAILURE() << "no report in:\n" << out;
  return {};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ioa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, SolveAppendixB) {
  const Output r = run("solve '" + data("appendix_b.json") + "' --epsilon 1e-4 --quiet --trace '" +
                    tmp("trace.csv") + "'");
  ASSERT_EQ(r.code, 0) << r.out;
  const ioa::RunReport rep = report_of(r.out);
  EXPECT_NEAR(rep.ub, -52.875, 1e-3);
  EXPECT_EQ(rep.reason, "gap");
  EXPECT_EQ(lines(ioa::io::read_file(tmp("trace.csv"))).front(), ioa::kTraceHeader);
}

TEST_F(Cli, SolutionFile) {
  const Output r = run("solve '" + data("appendix_b.json") + "' --epsilon 1e-4 --solution '" +
                    tmp("sol.json") + "'");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = ioa::io::Json::parse(ioa::io::read_file(tmp("sol.json")));
  EXPECT_NEAR(j["values"]["x1"].get<double>(), 1.5, 1e-3);
  EXPECT_NEAR(j["values"]["x2"].get<double>(), 4.5, 1e-3);
}

TEST_F(Cli, OracleCheck) {
  const Output r = run("solve '" + data("tiny_flp.json") + "' --epsilon 1e-3 --oracle-check --grid 256 --quiet");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("oracle: grid=256"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(" agree"), std::string::npos) << r.out;
}

TEST_F(Cli, ExternalBackendRoundTrip) {
  const std::string backend = std::string("external:'") + IOA_CLI + "' lp-solve {lp} {sol}";
  const Output r = run("solve '" + data("appendix_b.json") + "' --epsilon 1e-4 --quiet --backend \"" +
                    backend + "\"");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(report_of(r.out).ub, -52.875, 1e-3);
}

TEST_F(Cli, MissingFileLeavesNoOutputs) {
  const Output r = run("solve '" + tmp("nope.json") + "' --trace '" + tmp("t.csv") + "' --report '" +
                    tmp("r.csv") + "'");
  EXPECT_EQ(r.code, 4) << r.out;
  EXPECT_FALSE(fs::exists(tmp("t.csv")));
  EXPECT_FALSE(fs::exists(tmp("r.csv")));
}

TEST_F(Cli, ParseErrorNamesTheLine) {
  std::ofstream(tmp("bad.json")) << "{\n  \"kind\": \"generic\",\n  ]\n}\n";
  const Output r = run("solve '" + tmp("bad.json") + "'");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST_F(Cli, InfeasibleExitCode) {
  auto j = ioa::io::Json::parse(ioa::io::read_file(data("appendix_b.json")));
  j["constraints"].push_back({{"name", "far"}, {"terms", {{"x1", 1}}}, {"sense", ">="}, {"rhs", 6.5}});
  std::ofstream(tmp("inf.json")) << j.dump(2);
  const Output r = run("solve '" + tmp("inf.json") + "' --quiet");
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST_F(Cli, GenerateIsDeterministic) {
  const std::string args = "generate --set 1a --n 10 --m 50 --seed 7 --ftype 1 --cost 1 --out ";
  ASSERT_EQ(run(args + "'" + tmp("a.json") + "'").code, 0);
  ASSERT_EQ(run(args + "'" + tmp("b.json") + "'").code, 0);
  const std::string a = ioa::io::read_file(tmp("a.json"));
  EXPECT_EQ(a, ioa::io::read_file(tmp("b.json")));
  EXPECT_NO_THROW(ioa::io::load_instance(tmp("a.json")));
}

TEST_F(Cli, BenchmarkRowsAndSummary) {
  const Output r = run("benchmark --set 1a --n 2 --m 4 --seeds 1-3 --ftype 1 --cost 1 --epsilon 1e-3 --out '" +
                    tmp("bench.csv") + "'");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto ls = lines(ioa::io::read_file(tmp("bench.csv")));
  ASSERT_EQ(ls.size(), 1u + 3u + 3u);
  EXPECT_EQ(ls[0], ioa::kCsvHeader);
  std::vector<ioa::RunReport> rows;
  for (int k = 1; k <= 3; ++k) rows.push_back(ioa::parse_csv_row(ls[k]));
  const ioa::RunReport avg = ioa::parse_csv_row(ls[4]);
  EXPECT_EQ(avg.instance.rfind("Avg:", 0), 0u);
  EXPECT_EQ(ioa::parse_csv_row(ls[5]).instance.rfind("Min:", 0), 0u);
  EXPECT_EQ(ioa::parse_csv_row(ls[6]).instance.rfind("Max:", 0), 0u);
  EXPECT_NEAR(avg.ub, (rows[0].ub + rows[1].ub + rows[2].ub) / 3.0, 1e-9 * std::fabs(avg.ub));
  for (const auto& row : rows) {
    EXPECT_EQ(row.n_T, row.n_e + row.n_d);
    EXPECT_NEAR(row.gap_pct, ioa::gap_percent(row.lb, row.ub), 1e-9);
  }
}

TEST_F(Cli, ReportsAreReproducible) {
  const std::string args = "solve '" + data("tiny_flp.json") + "' --epsilon 1e-3 --quiet";
  const ioa::RunReport a = report_of(run(args).out), b = report_of(run(args).out);
  EXPECT_EQ(a.lb, b.lb);
  EXPECT_EQ(a.ub, b.ub);
  EXPECT_EQ(a.iters, b.iters);
  EXPECT_EQ(a.milp_solves, b.milp_solves);
}

}  // namespace
