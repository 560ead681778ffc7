#include "gco/predictor.hpp"

#include <cmath>
#include <limits>

#include "gco/errors.hpp"

namespace gco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double alpha_from_tau(double tau) {
  // positive root of alpha^2 + tau*alpha - tau = 0, stable for large tau
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / tau));
}

double tau_from_alpha(double alpha) { return alpha * alpha / (1.0 - alpha); }

}  // namespace

GambitFrame gambit_point(const ConicProblem& p, const DualIterate& it) {
  if (!it.fact || !it.s) throw Error("gambit_point needs an iterate with cone data");
  GambitFrame f;
  f.y_bar = it.y;
  f.d_bar = it.d;
  f.t = it.t;
  f.lambda_bar = it.lambda;
  f.s_bar = *it.s;
  f.fact_bar = *it.fact;

  f.y_hat = it.y;
  linalg::axpy(1.0, it.d, f.y_hat);
  f.s_hat = p.dual_slack(f.y_hat);

  ConeVec g = cones::grad(f.fact_bar);
  f.x_bar = ConeVec(p.cone.dim);
  cones::axpy(-1.0 / f.t, g, f.x_bar);

  ConeVec v = cones::hess_apply(f.fact_bar, f.s_hat);
  f.s_hat_norm2_sbar = cones::dot(f.s_hat, v);
  f.x_hat = ConeVec(p.cone.dim);
  cones::axpy(1.0 / f.t, v, f.x_hat);

  auto fh = cones::try_factorize(p.cone, f.s_hat);
  if (!fh) throw NotInterior("gambit point left the dual cone");
  f.fact_hat = std::move(*fh);
  return f;
}

void affine_direction(const ConicProblem& p, const DualIterate& it, GambitFrame& frame) {
  const Vec h = linalg::cholesky_solve(it.hess_chol, p.b);
  frame.dy = linalg::scaled(h, frame.t);
  frame.ds = p.apply_A_adjoint(frame.dy);
  for (double& v : frame.ds.v) v = -v;
  // dx = -(1/t) hess F_*(s_bar) ds - x_hat
  ConeVec hds = cones::hess_apply(frame.fact_bar, frame.ds);
  frame.dx = ConeVec(p.cone.dim);
  cones::axpy(-1.0 / frame.t, hds, frame.dx);
  cones::axpy(-1.0, frame.x_hat, frame.dx);
}

StepResult solve_stepsize(const std::function<double(double)>& xi, const StepController& ctl) {
  StepResult res;
  const double budget = ctl.budget;
  if (budget <= 0.0) return res;
  const double tau_cap = tau_from_alpha(ctl.alpha_cap);

  double lo = 0.0;  // xi(alpha(lo)) < budget
  double tau = 1e-4;
  double hi = -1.0;
  while (true) {
    if (tau > tau_cap) tau = tau_cap;
    const double val = xi(alpha_from_tau(tau));
    if (val >= budget || std::isinf(val)) {
      hi = tau;
      break;
    }
    if (tau >= tau_cap) {
      res.alpha = ctl.alpha_cap;  // superlinear tail: the budget is never reached
      return res;
    }
    lo = tau;
    tau *= 2.0;
  }

  const double tol = ctl.tol_rel * budget;
  double alpha_lo = lo > 0.0 ? alpha_from_tau(lo) : 0.0;
  while (hi - lo > 1e-12 * std::max(hi, 1.0)) {
    const double mid = 0.5 * (lo + hi);
    const double a = alpha_from_tau(mid);
    const double val = xi(a);
    ++res.bisections;
    if (std::isfinite(val) && std::fabs(val - budget) <= tol) {
      res.alpha = val <= budget ? a : alpha_lo;
      return res;
    }
    if (val < budget) {
      lo = mid;
      alpha_lo = a;
    } else {
      hi = mid;
    }
  }
  res.alpha = alpha_lo;
  return res;
}

std::function<double(double)> xi_dual(const GambitFrame& frame) {
  auto ev = cones::prepare_xi(frame.fact_hat, frame.ds);
  return [ev = std::move(ev)](double alpha) { return ev.eval(alpha); };
}

std::function<double(double)> xi_primal(const GambitFrame& frame) {
  // Same block machinery on the primal side.
  std::vector<std::pair<cones::BlockKind, int>> defs;
  for (const auto& b : frame.fact_hat.blocks) defs.emplace_back(b.kind, b.n);
  const auto spec = cones::ConeSpec::make(defs);
  auto fx = cones::factorize(spec, frame.x_hat);
  auto ev = cones::prepare_xi(fx, frame.dx);
  return [ev = std::move(ev)](double alpha) { return ev.eval(alpha); };
}

std::function<double(double)> xi_full_omega(const ConicProblem& p, const GambitFrame& frame) {
  const double base = omega_measure(p, frame.x_hat, frame.s_hat);
  return [&p, &frame, base](double alpha) {
    ConeVec x = cones::combine(frame.x_hat, alpha, frame.dx);
    ConeVec s = cones::combine(frame.s_hat, alpha, frame.ds);
    if (!cones::interior(p.cone, x) || !cones::interior(p.cone, s)) return kInf;
    return omega_measure(p, x, s) - base;
  };
}

double omega_measure(const ConicProblem& p, const ConeVec& x, const ConeVec& s) {
  const double sx = cones::dot(s, x);
  if (sx <= 0.0) throw NotInterior("nonpositive duality pairing");
  const double nu = p.cone.nu;
  return nu * std::log(sx) + cones::barrier_primal_value(p.cone, x) +
         cones::barrier_dual_value(p.cone, s) + nu - nu * std::log(nu);
}

double omega_aux(double tau) {
  if (tau <= -1.0) throw Error("omega_aux: tau must exceed -1");
  return tau - std::log1p(tau);
}

double omega_star_aux(double tau) {
  if (tau < 0.0 || tau >= 1.0) throw Error("omega_star_aux: tau must lie in [0,1)");
  return -tau - std::log1p(-tau);
}

double reference_t(const ConicProblem& p, const ConeVec& x, const Vec& y) {
  const double gap = p.duality_gap(x, y);
  if (gap <= 0.0) throw Error("reference_t needs a positive duality gap");
  return p.cone.nu / gap;
}

double update_t(int nu, double t, double alpha, double s_hat_norm2) {
  return nu * t / ((1.0 - alpha) * s_hat_norm2);
}

double restricted_norm(const ConicProblem& p, const ConeVec& x, const ConeVec& s) {
  auto fact = cones::try_factorize(p.cone, x);
  if (!fact) throw NotInterior();
  const ConeVec hinv_s = cones::hess_inv_apply(*fact, s);
  const double full = cones::dot(s, hinv_s);
  if (p.m == 0) return std::sqrt(std::max(full, 0.0));

  // M = A H^{-1} A^T and w = A H^{-1} s
  linalg::SymMatrix mproj(p.m);
  std::vector<ConeVec> hinv_rows(p.m);
  for (int i = 0; i < p.m; ++i) hinv_rows[i] = cones::hess_inv_apply(*fact, p.densify_row(i));
  for (int i = 0; i < p.m; ++i)
    for (int j = i; j < p.m; ++j) {
      const double v = p.apply_A_row(i, hinv_rows[j]);
      mproj(i, j) = v;
      mproj(j, i) = v;
    }
  Vec w = p.apply_A(hinv_s);
  auto chol = linalg::try_cholesky(mproj);
  if (!chol) throw SingularProjection();
  const Vec u = linalg::cholesky_solve(*chol, w);
  const double v2 = full - linalg::dot(u, w);
  return std::sqrt(std::max(v2, 0.0));
}

}  // namespace gco
