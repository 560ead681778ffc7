#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "gco/bench.hpp"
#include "gco/errors.hpp"
#include "gco/solver.hpp"
#include "test_util.hpp"

using namespace gco;
using cones::BlockKind;
using testutil::close;

namespace {

void check_trace_monotone(const Solution& sol) {
  double t_prev = -1.0;
  for (size_t i = 0; i + 1 < sol.trace.size(); ++i) {
    const auto& cur = sol.trace[i];
    const auto& nxt = sol.trace[i + 1];
    if (cur.phase == Phase::Corrector) {
      CHECK(nxt.t == cur.t);  // t frozen across correctors
    } else {
      CHECK(nxt.t > cur.t);  // strict growth at predictors
    }
    CHECK(cur.t >= t_prev);
    t_prev = cur.t;
  }
}

}  // namespace

TEST_CASE("toy LP solves to its analytic optimum") {
  auto p = testutil::toy_lp();
  Solution sol = solve(p);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(std::fabs(sol.objective_dual - 1.0) <= 1e-6 * 2.0);
  CHECK(std::fabs(sol.objective_primal - 1.0) <= 1e-6 * 2.0);
  CHECK(sol.gap <= 1e-8 * (1.0 + std::fabs(sol.objective_dual)));
  CHECK(sol.gap >= -1e-9);

  auto rep = check_solution(p, sol);
  CHECK(rep.primal_residual_inf <= 1e-7 * (1.0 + linalg::norm2(p.b)));
  CHECK(rep.dual_residual_inf <= 1e-10);
  // the optimum sits on the boundary and the final step lands within double
  // resolution of it, so only nonnegativity survives in floats
  for (double v : sol.s.v) CHECK(v >= 0.0);
}

TEST_CASE("rank-one-constrained identity objective solves to its optimum") {
  for (int n : {4, 8}) {
    auto p = testutil::exlr_instance(n, 400 + n);
    Solution sol = solve(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(std::fabs(sol.objective_primal - 1.0) <= 1e-6 * 2.0);
  }
}

TEST_CASE("equality-pinned SDO instances reach |b|^2/<a,b>") {
  for (int n : {6, 10, 14}) {
    double fstar = 0.0;
    auto p = testutil::sdo1_instance(n, 500 + n, &fstar);
    Solution sol = solve(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(std::fabs(sol.objective_primal - fstar) <= 1e-6 * (1.0 + std::fabs(fstar)));
    CHECK(std::fabs(sol.objective_dual - fstar) <= 1e-6 * (1.0 + std::fabs(fstar)));
  }
}

TEST_CASE("solution invariants") {
  auto p = generate_lrqi(4, 8, 71);
  Solution sol = solve(p);
  REQUIRE(sol.status == SolveStatus::Optimal);

  // s == c - A*y
  auto rep = check_solution(p, sol);
  CHECK(rep.dual_residual_inf <= 1e-10);
  CHECK(rep.primal_residual_inf <= 1e-7 * (1.0 + linalg::norm2(p.b)));
  CHECK(rep.gap >= -1e-9);
  CHECK(rep.x_interior);
  CHECK(rep.s_interior);

  // perturbing x shows up in the primal residual
  Solution bad = sol;
  bad.x.v[0] += 0.5;
  CHECK(check_solution(p, bad).primal_residual_inf > 0.1);
}

TEST_CASE("t grows only at predictor steps") {
  for (uint64_t seed : {81ull, 82ull}) {
    auto p = generate_lrqi(4, 10, seed);
    Solution sol = solve(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    check_trace_monotone(sol);
  }
  auto lp = testutil::toy_lp();
  check_trace_monotone(solve(lp));
}

TEST_CASE("iteration 0 is a predictor when the centering condition holds") {
  for (uint64_t seed : {91ull, 92ull, 93ull}) {
    auto p = generate_lrqi(5, 11, seed);
    Solution sol = solve(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.initial_centering_met);
    REQUIRE_FALSE(sol.trace.empty());
    CHECK(sol.trace[0].phase == Phase::Predictor);
    CHECK(sol.trace[0].k == 0);
  }
}

TEST_CASE("corrector group length stays within the proximity budget bound") {
  SolverConfig cfg;
  const int bound =
      static_cast<int>(std::ceil(cfg.prox_budget / omega_aux(cfg.beta))) + 2;
  for (uint64_t seed : {95ull, 96ull}) {
    auto p = generate_lrqi(6, 13, seed);
    Solution sol = solve(p, cfg);
    REQUIRE(sol.status == SolveStatus::Optimal);
    int run = 0;
    for (const auto& r : sol.trace) {
      if (r.phase == Phase::Corrector) {
        ++run;
        CHECK(run <= bound);
      } else {
        run = 0;
      }
    }
  }
}

TEST_CASE("controllers produce matching steps") {
  // All three step functions are representations of the same proximity
  // difference, so solved on the same frame they must return the same alpha.
  std::vector<ConicProblem> ps;
  ps.push_back(testutil::random_problem({{BlockKind::Orthant, 4}}, 2, 97));
  ps.push_back(testutil::random_problem({{BlockKind::Lorentz, 4}}, 2, 98));
  ps.push_back(testutil::random_problem({{BlockKind::Psd, 3}}, 2, 99));

  for (const auto& p : ps) {
    SolverConfig cfg;
    cfg.force_generic_oracle = true;
    cfg.bisection_tol = 1e-6;
    StepController ctl{cfg.prox_budget, cfg.bisection_tol, 1.0 - 1e-9};
    SolveHooks hooks;
    hooks.on_predictor = [&](const GambitFrame& f, double a_dual, const StepResult&) {
      const double a_primal = solve_stepsize(xi_primal(f), ctl).alpha;
      const double a_omega = solve_stepsize(xi_full_omega(p, f), ctl).alpha;
      CHECK(std::fabs(a_dual - a_primal) <= 1e-4 * (1.0 + a_dual));
      CHECK(std::fabs(a_dual - a_omega) <= 1e-4 * (1.0 + a_dual));
    };
    Solution sol = solve(p, cfg, &hooks);
    REQUIRE(sol.status == SolveStatus::Optimal);
  }
}

TEST_CASE("trace CSV format") {
  auto p = generate_lrqi(3, 6, 99);
  Solution sol = solve(p);
  std::ostringstream out;
  write_trace_csv(sol.trace, out);
  const std::string text = out.str();
  CHECK(text.rfind("k,phase,lambda,t,gap,alpha,bisections\n", 0) == 0);
  // corrector rows end with two empty fields
  CHECK(text.find("Corrector") != std::string::npos);
  CHECK(text.find(",,\n") != std::string::npos);
  CHECK(text.find("Predictor") != std::string::npos);

  // deterministic output for identical solves
  std::ostringstream out2;
  write_trace_csv(solve(p).trace, out2);
  CHECK(out2.str() == text);
}

TEST_CASE("solve validates its inputs") {
  auto p = testutil::toy_lp();
  p.y_start.reset();
  CHECK_THROWS_AS(solve(p), ValidationError);

  auto q = testutil::toy_lp();
  (*q.y_start)[0] = 10.0;  // infeasible start
  CHECK_THROWS_AS(solve(q), ValidationError);

  SolverConfig bad;
  bad.beta = 1.5;
  auto r = testutil::toy_lp();
  CHECK_THROWS_AS(solve(r, bad), ValidationError);
}

TEST_CASE("iteration limit reports the last consistent iterate") {
  auto p = generate_lrqi(4, 8, 101);
  SolverConfig cfg;
  cfg.max_iterations = 3;
  Solution sol = solve(p, cfg);
  CHECK(sol.status == SolveStatus::IterLimit);
  CHECK(sol.iterations == 3);
  CHECK(cones::interior_dual(p.cone, sol.s));
  CHECK(sol.trace.size() <= 3);
}

TEST_CASE("rank-deficient constraints surface as a numerical failure") {
  // A duplicated unit row makes the dual Newton system exactly singular (the
  // factorization pivots stay in exact arithmetic for these values).
  auto p = testutil::toy_lp();
  p.m = 2;
  p.rows.assign(2, {});
  ConstraintElement e;
  e.block = 0;
  e.data = {1.0, 0.0};
  p.rows[0].push_back(e);
  p.rows[1].push_back(e);
  p.b = {1.0, 1.0};
  p.y_start = Vec{0.0, 0.0};
  p.validate();
  Solution sol = solve(p);
  CHECK(sol.status == SolveStatus::NumericalFailure);
  CHECK_FALSE(sol.failure_note.empty());
  CHECK(cones::interior_dual(p.cone, sol.s));  // last consistent iterate

  // the projection behind the restricted norm fails the same way
  ConeVec x(2);
  x.v = {1.0, 0.5};
  ConeVec s(2);
  s.v = {1.0, -1.0};
  CHECK_THROWS_AS(restricted_norm(p, x, s), SingularProjection);
}

TEST_CASE("status strings") {
  CHECK(std::string(to_string(SolveStatus::Optimal)) == "Optimal");
  CHECK(std::string(to_string(SolveStatus::IterLimit)) == "IterLimit");
  CHECK(std::string(to_string(SolveStatus::NumericalFailure)) == "NumericalFailure");
  CHECK(std::string(to_string(Phase::Corrector)) == "Corrector");
  CHECK(std::string(to_string(Phase::Predictor)) == "Predictor");
}
