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

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <unistd.h>

#include "ioa/common.hpp"
#include "ioa/milp/branch_and_bound.hpp"
#include "ioa/milp/lp_format.hpp"
#include "ioa/milp/model.hpp"

namespace ioa::milp {

// A MILP solver behind a uniform call. The optional start vector is a
// feasible assignment the solver may use as its first incumbent.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual MilpSolution solve(const MilpModel& model, const MilpLimits& limits,
                             const std::vector<double>* start) const = 0;
};

class BuiltinBackend : public Backend {
 public:
  std::string name() const override { return "builtin"; }
  MilpSolution solve(const MilpModel& model, const MilpLimits& limits,
                     const std::vector<double>* start) const override {
    return solve_milp(model, limits, start);
  }
};

// Writes the model as a CPLEX LP file, runs a user command and reads back a
// "name value" solution file. The command template may contain {lp} and
// {sol}; they are replaced by the file paths. Variables missing from the
// solution file are taken as zero.
class ExternalBackend : public Backend {
 public:
  explicit ExternalBackend(std::string command) : command_(std::move(command)) {}
  std::string name() const override { return "external:" + command_; }

  MilpSolution solve(const MilpModel& model, const MilpLimits& limits,
                     const std::vector<double>*) const override {
    namespace fs = std::filesystem;
    Stopwatch clock;
    static std::atomic<long> counter{0};
    const fs::path dir = fs::temp_directory_path();
    const std::string stem = "ioa_" + std::to_string(::getpid()) + "_" +
                             std::to_string(counter++);
    const std::string lp = (dir / (stem + ".lp")).string();
    const std::string sol = (dir / (stem + ".sol")).string();
    export_lp_file(model, lp);
    std::string cmd = command_;
    auto replace = [&](const std::string& key, const std::string& value) {
      for (size_t p = cmd.find(key); p != std::string::npos;
           p = cmd.find(key, p + value.size()))
        cmd.replace(p, key.size(), value);
    };
    replace("{lp}", lp);
    replace("{sol}", sol);
    const int rc = std::system(cmd.c_str());
    MilpSolution out;
    out.seconds = clock.seconds();
    std::ifstream is(sol);
    if (rc != 0 || !is) {
      std::error_code ec;
      fs::remove(lp, ec);
      fs::remove(sol, ec);
      throw Error(ErrorCode::kIo, "external solver command failed: " + cmd);
    }
    SolutionFile file = read_solution(is);
    is.close();
    std::error_code ec;
    fs::remove(lp, ec);
    fs::remove(sol, ec);
    if (file.status == "infeasible") {
      out.status = SolveStatus::kInfeasible;
      return out;
    }
    std::vector<double> x(model.num_vars(), 0.0);
    for (int j = 0; j < model.num_vars(); ++j) {
      auto it = file.values.find(sanitize_name(model.vars()[j].name));
      if (it != file.values.end()) x[j] = it->second;
    }
    if (model.max_violation(x) > 10 * limits.feasibility_tolerance) {
      out.status = SolveStatus::kNumericalError;
      return out;
    }
    out.status = file.status == "timelimit" ? SolveStatus::kTimeLimit
                                            : SolveStatus::kOptimal;
    out.values = std::move(x);
    out.objective = model.evaluate_objective(out.values);
    out.best_bound = out.objective;
    auto bound = file.values.find("best_bound");
    if (bound != file.values.end() && !model.find("best_bound").valid())
      out.best_bound = bound->second;
    return out;
  }

 private:
  std::string command_;
};

// "builtin" or "external:<command>".
inline std::shared_ptr<const Backend> make_backend(const std::string& spec) {
  if (spec.empty() || spec == "builtin")
    return std::make_shared<BuiltinBackend>();
  const std::string prefix = "external:";
  if (spec.rfind(prefix, 0) == 0 && spec.size() > prefix.size())
    return std::make_shared<ExternalBackend>(spec.substr(prefix.size()));
  throw Error(ErrorCode::kInvalidArgument, "unknown backend '" + spec + "'");
}

}  // namespace ioa::milp
