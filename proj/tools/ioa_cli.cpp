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

// ioa: solve, generate, benchmark, lp-solve.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "ioa/datagen.hpp"
#include "ioa/flp.hpp"
#include "ioa/io.hpp"
#include "ioa/ioa.hpp"
#include "ioa/milp/backend.hpp"
#include "ioa/milp/lp_format.hpp"
#include "ioa/oracle.hpp"
#include "ioa/report.hpp"

namespace {

using namespace ioa;

enum Exit { kOk = 0, kCrash = 1, kLimit = 2, kInfeasibleExit = 3, kInputError = 4 };

struct SolveFlags {
  double epsilon = 0.01;
  double time_limit = 10800.0;
  std::string backend = "builtin";
  std::uint64_t seed = 0;
  int random_points = 0;
  bool two_point_start = false;
  int apriori = 5;
  std::optional<double> alpha, theta, beta;
};

IoaOptions options_of(const SolveFlags& f) {
  IoaOptions o;
  o.epsilon = f.epsilon;
  o.time_limit = f.time_limit;
  o.backend = milp::make_backend(f.backend);
  o.seed = f.seed;
  o.random_points = f.random_points;
  o.include_deflection = !f.two_point_start;
  o.apriori_cuts = f.apriori;
  return o;
}

FlpWeights weights_of(const SolveFlags& f) {
  FlpWeights w;
  if (f.alpha) w.alpha = *f.alpha;
  if (f.theta) w.theta = *f.theta;
  w.beta = f.beta;
  return w;
}

// Everything a solve produces, kept in memory until the run succeeded.
struct SolveOutcome {
  RunReport report;
  IoaResult result;
  io::Json solution;
  Problem problem;  // copy for the oracle check
  int exit_code = kOk;
};

int exit_of(Termination t) {
  switch (t) {
    case Termination::kGap:
    case Termination::kFixedPoint: return kOk;
    case Termination::kInfeasible: return kInfeasibleExit;
    default: return kLimit;
  }
}

io::Json values_json(const milp::MilpModel& model, const std::vector<double>& x) {
  io::Json v = io::Json::object();
  for (int j = 0; j < model.num_vars() && j < static_cast<int>(x.size()); ++j)
    v[model.vars()[j].name] = x[j] == 0.0 ? 0.0 : x[j];
  return v;
}

SolveOutcome solve_instance(const io::Instance& inst, const SolveFlags& flags,
                            const std::string& export_lp = {}) {
  SolveOutcome out;
  IoaOptions opt = options_of(flags);
  opt.export_lp = export_lp;
  RunReport& r = out.report;
  r.reason = "error";
  if (const auto* flp = std::get_if<FlpInstance>(&inst)) {
    const FlpWeights w = weights_of(flags);
    r.instance = flp->meta.id;
    r.n = flp->n();
    r.m = flp->m();
    r.ftype = flp->meta.ftype;
    r.cost = flp->meta.cost;
    r.alpha = w.alpha;
    r.theta = w.theta;
    r.beta = w.beta ? *w.beta : flp->meta.beta;
    FlpProblem fp = build_problem(*flp, w);
    out.problem = fp.problem;
    out.result = ioa_solve(fp.problem, opt);
    std::vector<RegimeVars> regimes;
    const milp::MilpModel original = fp.problem.original_model(&regimes);
    io::Json sol;
    if (out.result.has_incumbent()) {
      FlpSolution s = summarize(fp, *flp, w, out.result.incumbent, out.result.ub);
      r.n_e = s.n_e;
      r.n_d = s.n_d;
      r.n_T = s.n_T;
      sol["flp"] = {{"open", s.open}, {"l0", s.l0}, {"l1", s.l1}, {"z", s.z},
                    {"fixed_cost", s.fixed}, {"transport_cost", s.transport},
                    {"production_cost", s.production}, {"n_e", s.n_e}, {"n_d", s.n_d},
                    {"n_T", s.n_T}};
      sol["values"] = values_json(original, out.result.incumbent);
    }
    out.solution = sol;
  } else {
    const auto& g = std::get<io::GenericInstance>(inst);
    r.instance = g.id;
    r.n = static_cast<int>(g.problem.sterms.size());
    r.m = g.problem.base.num_rows();
    r.alpha = r.theta = 1.0;
    r.beta = 0.0;
    out.problem = g.problem;
    out.result = ioa_solve(g.problem, opt);
    const milp::MilpModel original = g.problem.original_model();
    io::Json sol;
    if (out.result.has_incumbent()) {
      const auto& x = out.result.incumbent;
      for (const auto& reg : out.result.regimes) {
        r.n_e += x[reg.l0.index] > 0.5;
        r.n_d += x[reg.l1.index] > 0.5;
      }
      r.n_T = r.n_e + r.n_d;
      sol["values"] = values_json(original, x);
    }
    out.solution = sol;
  }
  const IoaResult& res = out.result;
  r.lb = res.lb;
  r.ub = res.ub;
  r.gap_pct = res.gap_pct;
  r.time_s = res.seconds;
  r.iters = res.iterations;
  r.milp_solves = res.milp_solves;
  r.reason = to_string(res.reason);
  io::Json head;
  head["instance"] = r.instance;
  head["reason"] = r.reason;
  head["objective"] = res.has_incumbent() ? io::Json(res.ub) : io::Json(nullptr);
  head["lower_bound"] = std::isfinite(res.lb) ? io::Json(res.lb) : io::Json(nullptr);
  head["gap_pct"] = std::isfinite(res.gap_pct) ? io::Json(res.gap_pct) : io::Json(nullptr);
  head["iterations"] = res.iterations;
  head["milp_solves"] = res.milp_solves;
  head["set_sizes"] = res.set_sizes;
  for (auto it = out.solution.begin(); it != out.solution.end(); ++it) head[it.key()] = it.value();
  out.solution = head;
  out.exit_code = exit_of(res.reason);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  os << text;
  if (!os) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

int exit_for_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInfeasible: return kInfeasibleExit;
    case ErrorCode::kNumerical:
    case ErrorCode::kResource: return kCrash;
    default: return kInputError;
  }
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);
    if constexpr (std::is_integral_v<T>) {
      if (dash != std::string::npos) {
        const long long a = std::stoll(item.substr(0, dash)), b = std::stoll(item.substr(dash + 1));
        for (long long v = a; v <= b; ++v) out.push_back(static_cast<T>(v));
        continue;
      }
      out.push_back(static_cast<T>(std::stoll(item)));
    } else if constexpr (std::is_floating_point_v<T>) {
      out.push_back(static_cast<T>(std::stod(item)));
    } else {
      out.push_back(item);
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty list '" + text + "'");
  return out;
}

std::string fmt_short(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact global solver for MILPs with inverse S-shaped cost terms"};
  app.require_subcommand(1);

  // solve
  SolveFlags sf;
  std::string instance_path, trace_path, report_path, solution_path, export_lp;
  bool oracle_check = false, quiet = false;
  int grid = 512;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("instance", instance_path, "Instance file (JSON)")->required();
  solve->add_option("--epsilon", sf.epsilon, "Relative gap target")->check(CLI::PositiveNumber);
  solve->add_option("--time-limit", sf.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  solve->add_option("--backend", sf.backend, "builtin or external:<command with {lp} {sol}>");
  solve->add_option("--seed", sf.seed, "Seed for --random-points");
  solve->add_option("--random-points", sf.random_points, "Random initial points per term")
      ->check(CLI::NonNegativeNumber);
  solve->add_flag("--two-point-start", sf.two_point_start,
                  "Start from the domain ends only, without the deflection point");
  solve->add_option("--apriori-cuts", sf.apriori, "Initial tangent cuts per term")
      ->check(CLI::Range(2, 1000));
  solve->add_option("--alpha", sf.alpha, "Transport weight (FLP)");
  solve->add_option("--theta", sf.theta, "Production weight (FLP)");
  solve->add_option("--beta", sf.beta, "Deflection as a fraction of capacity (FLP)");
  solve->add_option("--trace", trace_path, "Write per-iteration records as CSV");
  solve->add_option("--report", report_path, "Append the report row to a CSV file");
  solve->add_option("--solution", solution_path, "Write the solution JSON here");
  solve->add_option("--export-lp", export_lp, "Write the first relaxation as an LP file");
  solve->add_flag("--oracle-check", oracle_check, "Cross-check with the grid oracle");
  solve->add_option("--grid", grid, "Oracle grid points")->check(CLI::Range(16, 100000));
  solve->add_flag("--quiet", quiet, "Only print the report row");

  // generate
  GenSpec gs;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Generate a facility location instance");
  gen->add_option("--set", gs.set, "1a, 1b, 2 or 3-analog");
  gen->add_option("--n", gs.n, "Facilities")->check(CLI::PositiveNumber);
  gen->add_option("--m", gs.m, "Customers")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gs.seed, "Random seed");
  gen->add_option("--ftype", gs.ftype, "Function type 1..3")->check(CLI::Range(1, 3));
  gen->add_option("--cost", gs.cost, "Cost structure 1..4")->check(CLI::Range(1, 4));
  gen->add_option("--beta", gs.beta, "Deflection fraction");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // benchmark
  std::string b_sets = "1a", b_seeds = "1", b_ftypes = "1", b_costs = "1", b_alpha = "1",
              b_theta = "1", b_beta, b_out;
  int b_n = 10, b_m = 50, b_jobs = 1;
  SolveFlags bf;
  auto* bench = app.add_subcommand("benchmark", "Run a sweep of generated instances");
  bench->add_option("--set", b_sets, "Comma list of sets");
  bench->add_option("--n", b_n, "Facilities")->check(CLI::PositiveNumber);
  bench->add_option("--m", b_m, "Customers")->check(CLI::PositiveNumber);
  bench->add_option("--seeds", b_seeds, "Seeds, e.g. 1,2,3 or 1-5");
  bench->add_option("--ftype", b_ftypes, "Comma list of function types");
  bench->add_option("--cost", b_costs, "Comma list of cost structures");
  bench->add_option("--alpha", b_alpha, "Comma list of transport weights");
  bench->add_option("--theta", b_theta, "Comma list of production weights");
  bench->add_option("--beta", b_beta, "Comma list of deflection fractions");
  bench->add_option("--epsilon", bf.epsilon, "Relative gap target")->check(CLI::PositiveNumber);
  bench->add_option("--time-limit", bf.time_limit, "Seconds per solve")->check(CLI::PositiveNumber);
  bench->add_option("--backend", bf.backend, "builtin or external:<command>");
  bench->add_option("--jobs", b_jobs, "Concurrent solves")->check(CLI::Range(1, 256));
  bench->add_option("--out", b_out, "CSV file (default stdout)");

  // lp-solve
  std::string lp_in, sol_out;
  double lp_time = kInf;
  auto* lps = app.add_subcommand("lp-solve", "Solve an LP file with the builtin MILP engine");
  lps->add_option("lp", lp_in, "LP file")->required();
  lps->add_option("solution", sol_out, "Solution file to write")->required();
  lps->add_option("--time-limit", lp_time, "Seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*solve) {
      const io::Instance inst = io::load_instance(instance_path);
      SolveOutcome out = solve_instance(inst, sf, export_lp);
      std::string oracle_line;
      if (oracle_check) {
        const OracleResult orc = oracle_solve(out.problem, grid);
        if (!orc.values.empty() && out.result.has_incumbent()) {
          const double diff = std::fabs(orc.true_objective - out.result.ub);
          const double tol =
              std::max(1e-3 * std::fabs(out.result.ub), orc.grid_slack);
          const bool agree = out.result.ub <= orc.true_objective + tol &&
                             out.result.lb <= orc.objective + orc.grid_slack + tol;
          oracle_line = "oracle: grid=" + std::to_string(grid) +
                        " objective=" + fmt_short(orc.objective) +
                        " true_objective=" + fmt_short(orc.true_objective) +
                        " grid_slack=" + fmt_short(orc.grid_slack) +
                        " diff=" + fmt_short(diff) + (agree ? " agree" : " DISAGREE");
        } else {
          oracle_line = std::string("oracle: status=") + milp::to_string(orc.status);
        }
      }
      std::ostringstream trace;
      if (!trace_path.empty()) {
        trace << kTraceHeader << '\n';
        for (const auto& rec : out.result.trace) write_trace_row(trace, rec);
      }
      if (!trace_path.empty()) write_text(trace_path, trace.str());
      if (!solution_path.empty()) write_text(solution_path, io::dump(out.solution));
      if (!report_path.empty()) {
        const bool fresh = !std::filesystem::exists(report_path) ||
                           std::filesystem::file_size(report_path) == 0;
        std::ofstream os(report_path, std::ios::app);
        if (!os) throw Error(ErrorCode::kIo, "cannot write '" + report_path + "'");
        if (fresh) os << kCsvHeader << '\n';
        os << to_csv_row(out.report) << '\n';
      }
      std::cout << kCsvHeader << '\n' << to_csv_row(out.report) << '\n';
      if (!oracle_line.empty()) std::cout << oracle_line << '\n';
      if (!quiet && solution_path.empty()) std::cout << io::dump(out.solution);
      return out.exit_code;
    }

    if (*gen) {
      const std::string text = io::to_text(generate(gs));
      if (gen_out.empty()) std::cout << text;
      else write_text(gen_out, text);
      return kOk;
    }

    if (*bench) {
      struct Job {
        GenSpec spec;
        SolveFlags flags;
        std::string group;
      };
      std::vector<Job> jobs;
      std::vector<std::string> groups;
      const auto betas = b_beta.empty() ? std::vector<double>{0.5} : parse_list<double>(b_beta);
      for (const auto& set : parse_list<std::string>(b_sets))
        for (int ft : parse_list<int>(b_ftypes))
          for (int cs : parse_list<int>(b_costs))
            for (double a : parse_list<double>(b_alpha))
              for (double t : parse_list<double>(b_theta))
                for (double be : betas) {
                  const std::string group = "set" + set + "-n" + std::to_string(b_n) + "-m" +
                                            std::to_string(b_m) + "-f" + std::to_string(ft) +
                                            "-c" + std::to_string(cs) + "-a" + fmt_short(a) +
                                            "-t" + fmt_short(t) + "-b" + fmt_short(be);
                  groups.push_back(group);
                  for (auto seed : parse_list<std::uint64_t>(b_seeds)) {
                    Job j;
                    j.spec = {set, b_n, b_m, seed, ft, cs, be};
                    j.flags = bf;
                    j.flags.alpha = a;
                    j.flags.theta = t;
                    j.group = group;
                    jobs.push_back(j);
                  }
                }
      milp::make_backend(bf.backend);

      std::ofstream file;
      if (!b_out.empty()) {
        file.open(b_out);
        if (!file) throw Error(ErrorCode::kIo, "cannot write '" + b_out + "'");
      }
      std::ostream& os = b_out.empty() ? std::cout : file;
      os << kCsvHeader << '\n' << std::flush;
      std::mutex mu;
      std::vector<std::optional<RunReport>> rows(jobs.size());
      std::atomic<size_t> next{0};
      auto worker = [&] {
        for (size_t k = next++; k < jobs.size(); k = next++) {
          const Job& job = jobs[k];
          RunReport r;
          try {
            const io::Instance inst = generate(job.spec);
            r = solve_instance(inst, job.flags).report;
          } catch (const std::exception& e) {
            r.instance = "set" + job.spec.set + "-n" + std::to_string(job.spec.n) + "-m" +
                         std::to_string(job.spec.m) + "-s" + std::to_string(job.spec.seed);
            r.n = job.spec.n;
            r.m = job.spec.m;
            r.ftype = job.spec.ftype;
            r.cost = job.spec.cost;
            r.alpha = *job.flags.alpha;
            r.theta = *job.flags.theta;
            r.beta = job.spec.beta;
            r.reason = std::string("error: ") + e.what();
          }
          std::lock_guard<std::mutex> lock(mu);
          rows[k] = r;
          os << to_csv_row(r) << '\n' << std::flush;
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < b_jobs; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      for (const auto& g : groups) {
        std::vector<RunReport> members;
        for (size_t k = 0; k < jobs.size(); ++k)
          if (jobs[k].group == g && rows[k] && rows[k]->reason.rfind("error", 0) != 0)
            members.push_back(*rows[k]);
        for (const auto& s : summarize_group(members, g)) os << to_csv_row(s) << '\n';
      }
      os << std::flush;
      return kOk;
    }

    if (*lps) {
      std::ifstream is(lp_in);
      if (!is) throw Error(ErrorCode::kIo, "cannot open '" + lp_in + "'");
      const milp::MilpModel model = milp::read_lp(is);
      milp::MilpLimits limits;
      limits.time_limit = lp_time;
      const milp::MilpSolution sol = milp::solve_milp(model, limits);
      std::ofstream os(sol_out);
      if (!os) throw Error(ErrorCode::kIo, "cannot write '" + sol_out + "'");
      if (sol.status == milp::SolveStatus::kInfeasible) os << "status infeasible\n";
      else if (sol.status == milp::SolveStatus::kTimeLimit) os << "status timelimit\n";
      if (sol.has_solution()) {
        milp::write_solution(os, model, sol.values);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", sol.best_bound);
        os << "best_bound " << buf << '\n';
      }
      return sol.status == milp::SolveStatus::kInfeasible ? kInfeasibleExit : kOk;
    }
  } catch (const Error& e) {
    std::cerr << "ioa: " << e.what() << '\n';
    return exit_for_error(e);
  } catch (const std::exception& e) {
    std::cerr << "ioa: " << e.what() << '\n';
    return kCrash;
  }
  return kOk;
}
