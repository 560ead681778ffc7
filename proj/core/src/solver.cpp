#include "gco/solver.hpp"

#include <cmath>
#include <ostream>

#include "gco/errors.hpp"

namespace gco {

void SolverConfig::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("beta must lie in (0,1)");
  if (!(prox_budget > 0.0)) throw ValidationError("proximity budget must be positive");
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (max_iterations < 1) throw ValidationError("max_iterations must be positive");
  if (!(bisection_tol > 0.0)) throw ValidationError("bisection tolerance must be positive");
}

namespace {

// Rebuilds the cone-space data of an iterate produced without it (short-oracle path).
void ensure_cone_data(const ConicProblem& p, DualIterate& it) {
  if (it.fact) return;
  it.s = p.dual_slack(it.y);
  auto fact = cones::try_factorize(p.cone, *it.s);
  if (!fact) throw NotInterior();
  it.fact = std::move(*fact);
}

std::function<double(double)> make_xi(const ZetaOracle& oracle, const ConicProblem& p,
                                      Controller ctl, const GambitFrame* frame,
                                      const Vec& y_hat, const Vec& dy) {
  switch (ctl) {
    case Controller::PrimalXi:
      return xi_primal(*frame);
    case Controller::FullOmega:
      return xi_full_omega(p, *frame);
    case Controller::DualXi:
      break;
  }
  if (frame) return xi_dual(*frame);
  auto ev = oracle.xi(y_hat, dy);
  return [ev = std::move(ev)](double alpha) { return ev.eval(alpha); };
}

}  // namespace

Solution solve(const ConicProblem& problem, const SolverConfig& config, const SolveHooks* hooks) {
  problem.validate();
  config.validate();
  if (!problem.y_start) throw ValidationError("solve requires a strictly feasible y0");

  auto oracle = make_zeta_oracle(problem, config.force_generic_oracle);
  if (!oracle->interior(*problem.y_start))
    throw ValidationError("y0 is not strictly dual feasible");

  // Frames are needed per predictor unless the short dual-only path applies.
  const bool want_frames =
      !oracle->is_short() || config.controller != Controller::DualXi || hooks != nullptr;

  Solution out;
  const int nu = problem.cone.nu;
  const StepController step_ctl{config.prox_budget, config.bisection_tol, 1.0 - 1e-9};

  Vec y = *problem.y_start;
  double t = 1.0;
  const auto abort_early = [&](SolveStatus status, const char* note) {
    out.status = status;
    out.failure_note = note;
    out.y = y;
    out.s = problem.dual_slack(y);
    out.x = ConeVec(problem.cone.dim);
    out.objective_dual = linalg::dot(problem.b, y);
    out.gap = -out.objective_dual;
    return out;
  };
  try {
    auto center = initial_center(*oracle, y, config.beta);
    out.initial_centering_met = center.centered;
    y = center.y;
    DualIterate st0 = newton_state(*oracle, y, 0.0);
    t = initial_t(*oracle, st0, config.beta);
  } catch (const SingularHessian& e) {
    return abort_early(SolveStatus::NumericalFailure, e.what());
  } catch (const Error& e) {
    return abort_early(SolveStatus::IterLimit, e.what());
  }

  Vec last_good_y = y;
  double last_good_t = t;
  out.status = SolveStatus::IterLimit;

  int k = 0;
  for (; k < config.max_iterations; ++k) {
    try {
      DualIterate it = newton_state(*oracle, y, t, want_frames);
      last_good_y = y;
      last_good_t = t;

      if (it.lambda > config.beta) {
        out.trace.push_back({k, Phase::Corrector, it.lambda, t});
        y = damped_newton_step(it);
        if (!oracle->interior(y)) {
          out.status = SolveStatus::NumericalFailure;
          out.failure_note = "damped Newton step left the dual feasible set";
          y = last_good_y;
          break;
        }
        continue;
      }

      // Predictor step
      ++out.predictor_steps;
      Vec y_hat = it.y;
      linalg::axpy(1.0, it.d, y_hat);
      const Vec h = linalg::cholesky_solve(it.hess_chol, problem.b);
      const Vec dy = linalg::scaled(h, t);

      std::optional<GambitFrame> frame;
      double s_hat_norm2;
      if (want_frames) {
        frame = gambit_point(problem, it);
        affine_direction(problem, it, *frame);
        s_hat_norm2 = frame->s_hat_norm2_sbar;
      } else {
        // |s_hat|^2_{s_bar} = nu - lambda^2 - 2 t <b,d>, entirely in the dual space
        s_hat_norm2 =
            nu - it.lambda * it.lambda - 2.0 * t * linalg::dot(problem.b, it.d);
      }

      auto xi = make_xi(*oracle, problem, config.controller, frame ? &*frame : nullptr, y_hat, dy);
      const StepResult step = solve_stepsize(xi, step_ctl);
      const double t_next = update_t(nu, t, step.alpha, s_hat_norm2);

      IterRecord rec{k, Phase::Predictor, it.lambda, t};
      rec.gap = s_hat_norm2 / t;
      rec.alpha = step.alpha;
      rec.bisections = step.bisections;
      out.trace.push_back(rec);
      if (hooks && hooks->on_predictor && frame) hooks->on_predictor(*frame, step.alpha, step);

      y = y_hat;
      linalg::axpy(step.alpha, dy, y);

      if (nu / t_next <= config.eps) {
        if (!frame) {
          ensure_cone_data(problem, it);
          frame = gambit_point(problem, it);
          affine_direction(problem, it, *frame);
        }
        out.x = cones::combine(frame->x_hat, step.alpha, frame->dx);
        out.y = y;
        out.s = problem.dual_slack(y);
        out.t_final = t_next;
        out.status = SolveStatus::Optimal;
        ++k;
        break;
      }
      t = t_next;
    } catch (const Error& e) {
      out.status = SolveStatus::NumericalFailure;
      out.failure_note = e.what();
      y = last_good_y;
      t = last_good_t;
      break;
    }
  }

  out.iterations = k;
  if (out.status != SolveStatus::Optimal) {
    // Last consistent iterate: the dual point and the primal point the barrier
    // associates with it.
    out.y = y;
    out.s = problem.dual_slack(y);
    out.t_final = t;
    auto fact = cones::try_factorize(problem.cone, out.s);
    if (fact) {
      ConeVec g = cones::grad(*fact);
      out.x = ConeVec(problem.cone.dim);
      cones::axpy(-1.0 / t, g, out.x);
    } else {
      out.x = ConeVec(problem.cone.dim);
    }
  }
  out.objective_primal = cones::dot(problem.c, out.x);
  out.objective_dual = linalg::dot(problem.b, out.y);
  out.gap = out.objective_primal - out.objective_dual;
  return out;
}

CheckReport check_solution(const ConicProblem& problem, const Solution& sol) {
  CheckReport rep;
  const Vec ax = problem.apply_A(sol.x);
  for (int i = 0; i < problem.m; ++i)
    rep.primal_residual_inf = std::max(rep.primal_residual_inf, std::fabs(ax[i] - problem.b[i]));
  const ConeVec slack = problem.dual_slack(sol.y);
  for (int i = 0; i < problem.cone.dim; ++i)
    rep.dual_residual_inf = std::max(rep.dual_residual_inf, std::fabs(sol.s.v[i] - slack.v[i]));
  rep.x_interior = cones::interior(problem.cone, sol.x);
  rep.s_interior = cones::interior(problem.cone, sol.s);
  rep.gap = problem.duality_gap(sol.x, sol.y);
  return rep;
}

void write_trace_csv(const std::vector<IterRecord>& trace, std::ostream& out) {
  out << "k,phase,lambda,t,gap,alpha,bisections\n";
  for (const auto& r : trace) {
    out << r.k << ',' << to_string(r.phase) << ',' << format_double(r.lambda) << ','
        << format_double(r.t) << ',';
    if (r.phase == Phase::Predictor) {
      out << format_double(r.gap) << ',' << format_double(r.alpha) << ',' << r.bisections;
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::IterLimit: return "IterLimit";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

const char* to_string(Phase p) {
  return p == Phase::Corrector ? "Corrector" : "Predictor";
}

}  // namespace gco
