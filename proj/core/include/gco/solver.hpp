#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>

#include "gco/predictor.hpp"

namespace gco {

enum class Controller { DualXi, PrimalXi, FullOmega };
enum class SolveStatus { Optimal, IterLimit, NumericalFailure };
enum class Phase { Corrector, Predictor };

struct SolverConfig {
  double beta = 0.2;
  double prox_budget = 2.0;  // A
  double eps = 1e-8;
  int max_iterations = 5000;
  double bisection_tol = 1e-3;
  Controller controller = Controller::DualXi;
  // Validation knob: solve through the generic block oracle even when the
  // problem has the rank-one interpolation shape.
  bool force_generic_oracle = false;

  void validate() const;  // throws ValidationError
};

struct IterRecord {
  int k = 0;
  Phase phase = Phase::Corrector;
  double lambda = 0.0;
  double t = 0.0;
  // predictor-only fields; NaN / -1 at correctors
  double gap = std::numeric_limits<double>::quiet_NaN();  // <s_hat, x_hat> = nu/t(z_hat)
  double alpha = std::numeric_limits<double>::quiet_NaN();
  int bisections = -1;
};

struct Solution {
  ConeVec x;
  Vec y;
  ConeVec s;
  double gap = 0.0;  // raw <c,x> - <b,y>
  double t_final = 0.0;
  SolveStatus status = SolveStatus::NumericalFailure;
  std::vector<IterRecord> trace;

  double objective_primal = 0.0;
  double objective_dual = 0.0;
  int iterations = 0;
  int predictor_steps = 0;
  bool initial_centering_met = false;  // |grad zeta(y0)|_{y0} <= beta/2 reached
  std::string failure_note;
};

/// Observation points for tests and diagnostics; forces frame materialization.
struct SolveHooks {
  std::function<void(const GambitFrame& frame, double alpha, const StepResult& step)>
      on_predictor;
};

Solution solve(const ConicProblem& problem, const SolverConfig& config = {},
               const SolveHooks* hooks = nullptr);

struct CheckReport {
  double primal_residual_inf = 0.0;  // |A x - b|_inf
  double dual_residual_inf = 0.0;    // |s - (c - A* y)|_inf
  bool x_interior = false;
  bool s_interior = false;
  double gap = 0.0;
};

CheckReport check_solution(const ConicProblem& problem, const Solution& sol);

/// CSV with header k,phase,lambda,t,gap,alpha,bisections; empty cells for the
/// fields a corrector does not have.
void write_trace_csv(const std::vector<IterRecord>& trace, std::ostream& out);

const char* to_string(SolveStatus s);
const char* to_string(Phase p);

}  // namespace gco
