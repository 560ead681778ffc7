#pragma once

#include <functional>

#include "gco/centering.hpp"

namespace gco {

/// Everything one predictor step produces.  Built from a corrector state with
/// lambda <= beta: the backward Newton point y_hat, the manufactured primal
/// point x_hat = (1/t) hess F_*(s_bar) s_hat, and the affine-scaling direction.
struct GambitFrame {
  Vec y_bar;
  Vec d_bar;
  Vec y_hat;
  double t = 0.0;
  double lambda_bar = 0.0;

  ConeVec s_bar;
  ConeVec s_hat;
  ConeVec x_bar;  // -(1/t) grad F_*(s_bar)
  ConeVec x_hat;
  double s_hat_norm2_sbar = 0.0;  // <s_hat, hess F_*(s_bar) s_hat>

  Vec dy;
  ConeVec ds;
  ConeVec dx;

  cones::Factorization fact_bar;
  cones::Factorization fact_hat;
};

/// The step-size rule: find alpha with xi(alpha) = budget, searching in
/// tau = alpha^2/(1-alpha).
struct StepController {
  double budget = 2.0;        // proximity budget A
  double tol_rel = 1e-3;      // stop when |xi - A| <= tol_rel * A
  double alpha_cap = 1.0 - 1e-9;
};

struct StepResult {
  double alpha = 0.0;
  int bisections = 0;
};

/// Requires it.fact (cone-space data).  Fills everything except the direction.
GambitFrame gambit_point(const ConicProblem& p, const DualIterate& it);

/// Completes the frame with (dy, ds, dx) using the retained Hessian factorization.
void affine_direction(const ConicProblem& p, const DualIterate& it, GambitFrame& frame);

/// xi(0) = 0 and xi increasing towards the budget.  Brackets by doubling tau
/// from 1e-4, then bisects; when xi never reaches the budget before alpha_cap
/// the cap is returned (near-optimal regime where the step tends to 1).
StepResult solve_stepsize(const std::function<double(double)>& xi, const StepController& ctl);

/// Per-block short evaluator built from (s_hat, ds).
std::function<double(double)> xi_dual(const GambitFrame& frame);
/// Same machinery on the primal side, built from (x_hat, dx).
std::function<double(double)> xi_primal(const GambitFrame& frame);
/// Direct proximity difference Omega(z + alpha dz) - Omega(z); full-cost reference.
std::function<double(double)> xi_full_omega(const ConicProblem& p, const GambitFrame& frame);

/// Functional proximity measure
///   Omega(z) = nu ln <s,x> + F(x) + F_*(s) + nu - nu ln nu  (>= 0, zero on the path)
double omega_measure(const ConicProblem& p, const ConeVec& x, const ConeVec& s);

/// omega(tau) = tau - ln(1+tau)
double omega_aux(double tau);
/// omega_*(tau) = -tau - ln(1-tau), tau in [0,1)
double omega_star_aux(double tau);

/// t(z) = nu / (<c,x> - <b,y>)
double reference_t(const ConicProblem& p, const ConeVec& x, const Vec& y);

/// t_next = nu t / ((1-alpha) |s_hat|^2_{s_bar})
double update_t(int nu, double t, double alpha, double s_hat_norm2);

/// Norm of a dual-space element restricted to the null space of A:
///   max { <s,h> : A h = 0, |h|_x <= 1 }, by its closed form.
double restricted_norm(const ConicProblem& p, const ConeVec& x, const ConeVec& s);

}  // namespace gco
