#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gco/bench.hpp"
#include "gco/errors.hpp"

namespace {

constexpr int kExitUsage = 64;

struct ConfigFlags {
  double beta = 0.2;
  double prox_budget = 2.0;
  double eps = 1e-8;
  int max_iter = 5000;
  double bisect_tol = 1e-3;
  std::string controller = "dual";
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--beta", f.beta, "centering threshold in (0,1)");
  cmd->add_option("--prox-budget", f.prox_budget, "proximity budget for the step-size equation");
  cmd->add_option("--eps", f.eps, "target duality gap");
  cmd->add_option("--max-iter", f.max_iter, "iteration limit");
  cmd->add_option("--bisect-tol", f.bisect_tol, "relative tolerance of the step-size search");
  cmd->add_option("--controller", f.controller, "step controller: dual, primal or omega")
      ->check(CLI::IsMember({"dual", "primal", "omega"}));
}

gco::SolverConfig to_config(const ConfigFlags& f) {
  gco::SolverConfig cfg;
  cfg.beta = f.beta;
  cfg.prox_budget = f.prox_budget;
  cfg.eps = f.eps;
  cfg.max_iterations = f.max_iter;
  cfg.bisection_tol = f.bisect_tol;
  if (f.controller == "primal")
    cfg.controller = gco::Controller::PrimalXi;
  else if (f.controller == "omega")
    cfg.controller = gco::Controller::FullOmega;
  cfg.validate();

  // The worst-case step-margin condition delta/(1+delta) > 2 beta (3+beta)/(1-beta)
  // does not hold for the default parameters; practice is far better than the
  // bound, so this is informational only.
  const double neighborhood =
      gco::omega_star_aux(2.0 * cfg.beta / ((1.0 - cfg.beta) * (1.0 - cfg.beta)));
  if (cfg.prox_budget > neighborhood) {
    const double delta = cfg.prox_budget - neighborhood;
    const double margin =
        delta / (1.0 + delta) - 2.0 * cfg.beta * (3.0 + cfg.beta) / (1.0 - cfg.beta);
    if (margin <= 0.0)
      std::cerr << "note: worst-case step margin is negative for beta=" << cfg.beta
                << ", prox-budget=" << cfg.prox_budget << " (delta=" << delta
                << "); proceeding\n";
  }
  return cfg;
}

int run_solve(const std::string& input, const ConfigFlags& flags, const std::string& trace_path) {
  const gco::ConicProblem problem = gco::read_problem_file(input);
  const gco::SolverConfig cfg = to_config(flags);
  const gco::Solution sol = gco::solve(problem, cfg);

  int correctors = 0;
  for (const auto& r : sol.trace)
    if (r.phase == gco::Phase::Corrector) ++correctors;

  std::cout << "status:           " << gco::to_string(sol.status) << "\n";
  std::cout << "primal objective: " << gco::format_double(sol.objective_primal) << "\n";
  std::cout << "dual objective:   " << gco::format_double(sol.objective_dual) << "\n";
  std::cout << "gap:              " << gco::format_double(sol.gap) << "\n";
  std::cout << "iterations:       " << sol.iterations << " (" << sol.predictor_steps
            << " predictors, " << correctors << " correctors)\n";
  std::cout << "final t:          " << gco::format_double(sol.t_final) << "\n";
  if (!sol.failure_note.empty()) std::cout << "note:             " << sol.failure_note << "\n";

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) {
      std::cerr << "cannot write trace file: " << trace_path << "\n";
      return kExitUsage;
    }
    gco::write_trace_csv(sol.trace, out);
  }
  switch (sol.status) {
    case gco::SolveStatus::Optimal: return 0;
    case gco::SolveStatus::IterLimit: return 2;
    case gco::SolveStatus::NumericalFailure: return 3;
  }
  return 3;
}

int run_gen(int m, int n, uint64_t seed, const std::string& out_path) {
  const gco::ConicProblem p = gco::generate_lrqi(m, n, seed);
  const std::string text = gco::write_problem(p);
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write problem file: " << out_path << "\n";
    return kExitUsage;
  }
  out << text;
  return 0;
}

int run_bench(const std::vector<int>& ms, const std::vector<int>& ns, int count, uint64_t seed,
              const ConfigFlags& flags, const std::string& out_path) {
  const gco::SolverConfig cfg = to_config(flags);
  std::vector<gco::BenchStats> stats;
  for (int m : ms)
    for (int n : ns) {
      if (n < 2 * m) {
        std::cerr << "skipping cell m=" << m << " n=" << n << " (needs n >= 2m)\n";
        continue;
      }
      gco::BenchStats st = gco::run_batch(m, n, count, seed, cfg);
      std::cerr << "m=" << st.m << " n=" << st.n << " predictors " << st.pred_mean << " +- "
                << st.pred_relstd_pct << "% total " << st.total_mean << " +- "
                << st.total_relstd_pct << "% failures " << st.failures << "\n";
      stats.push_back(st);
    }
  const std::string csv = gco::emit_csv(stats);
  if (out_path.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write stats file: " << out_path << "\n";
    return kExitUsage;
  }
  out << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gco - dual predictor-corrector solver for symmetric-cone programs"};
  app.require_subcommand(1);

  ConfigFlags solve_flags;
  std::string solve_input, trace_path;
  auto* solve_cmd = app.add_subcommand("solve", "solve a problem file");
  solve_cmd->add_option("input", solve_input, "problem file")->required();
  solve_cmd->add_option("--trace", trace_path, "write the iteration trace CSV here");
  add_config_flags(solve_cmd, solve_flags);

  int gen_m = 4, gen_n = 8;
  uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random rank-one interpolation instance");
  gen_cmd->add_option("--m", gen_m, "number of constraints")->required();
  gen_cmd->add_option("--n", gen_n, "matrix order (n >= 2m)")->required();
  gen_cmd->add_option("--seed", gen_seed, "instance seed");
  gen_cmd->add_option("--out", gen_out, "output path (stdout when omitted)");

  ConfigFlags bench_flags;
  std::vector<int> bench_m, bench_n;
  int bench_count = 30;
  uint64_t bench_seed = 1;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "run seeded instance batches and aggregate stats");
  bench_cmd->add_option("--m", bench_m, "constraint counts (repeatable)")->required();
  bench_cmd->add_option("--n", bench_n, "matrix orders (repeatable)")->required();
  bench_cmd->add_option("--count", bench_count, "instances per cell");
  bench_cmd->add_option("--seed", bench_seed, "base seed; instance i uses seed+i");
  bench_cmd->add_option("--out", bench_out, "stats CSV path (stdout when omitted)");
  add_config_flags(bench_cmd, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message / help
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_input, solve_flags, trace_path);
    if (gen_cmd->parsed()) return run_gen(gen_m, gen_n, gen_seed, gen_out);
    if (bench_cmd->parsed())
      return run_bench(bench_m, bench_n, bench_count, bench_seed, bench_flags, bench_out);
  } catch (const gco::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const gco::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const gco::Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return kExitUsage;
}
