#include "gco/centering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gco/errors.hpp"

namespace gco {

using cones::BlockKind;
using cones::ConeBlock;
using linalg::LowerTriangular;
using linalg::SymMatrix;

GenericZeta::GenericZeta(const ConicProblem& p) : ZetaOracle(p) {
  by_block_.resize(p.cone.blocks.size());
  for (int i = 0; i < p.m; ++i)
    for (const auto& e : p.rows[i]) by_block_[e.block].emplace_back(i, &e);
}

bool GenericZeta::interior(const Vec& y) const {
  return cones::try_factorize(problem().cone, problem().dual_slack(y)).has_value();
}

ZetaEval GenericZeta::eval(const Vec& y) const {
  ConeVec s = problem().dual_slack(y);
  auto fact = cones::try_factorize(problem().cone, s);
  if (!fact) throw NotInterior();
  return eval_with(*fact);
}

ZetaEval GenericZeta::eval_with(const cones::Factorization& fact) const {
  const ConicProblem& p = problem();
  const int m = p.m;
  ZetaEval ev;
  ev.value = cones::barrier_bare_value(fact);

  ConeVec gradvec = cones::grad(fact);
  ev.grad.assign(m, 0.0);
  for (int i = 0; i < m; ++i) ev.grad[i] = -p.apply_A_row(i, gradvec);

  ev.hess = SymMatrix(m);
  for (size_t bi = 0; bi < p.cone.blocks.size(); ++bi) {
    const auto& touching = by_block_[bi];
    if (touching.empty()) continue;
    const ConeBlock& blk = p.cone.blocks[bi];
    const auto& bf = fact.blocks[bi];
    const size_t k = touching.size();

    if (blk.kind == BlockKind::Psd) {
      // Split rank-one entries (w = L^{-1} a) from dense ones (V = L^{-1} A L^{-T}).
      std::vector<Vec> w(k);
      std::vector<SymMatrix> v(k);
      std::vector<char> is_r1(k, 0);
      for (size_t a = 0; a < k; ++a) {
        const ConstraintElement& e = *touching[a].second;
        if (e.rank_one) {
          is_r1[a] = 1;
          w[a] = linalg::solve_triangular(bf.chol, e.data, linalg::Side::Lower);
        } else {
          SymMatrix em(blk.n);
          for (int q = 0; q < blk.size; ++q) em.a[q] = e.data[q];
          v[a] = linalg::congruence_reduce(bf.chol, em);
        }
      }
      for (size_t a = 0; a < k; ++a) {
        const int i = touching[a].first;
        const double si = touching[a].second->rank_one ? touching[a].second->sign : 1.0;
        for (size_t b2 = a; b2 < k; ++b2) {
          const int j = touching[b2].first;
          const double sj = touching[b2].second->rank_one ? touching[b2].second->sign : 1.0;
          double h;
          if (is_r1[a] && is_r1[b2]) {
            const double wij = linalg::dot(w[a], w[b2]);
            h = si * sj * wij * wij;
          } else if (is_r1[a]) {
            // a rank-one, b dense: s_a * w_a^T V_b w_a
            h = si * linalg::dot(w[a], linalg::matvec(v[b2], w[a]));
          } else if (is_r1[b2]) {
            h = sj * linalg::dot(w[b2], linalg::matvec(v[a], w[b2]));
          } else {
            h = linalg::frobenius_dot(v[a], v[b2]);
          }
          ev.hess(i, j) += h;
          if (i != j) ev.hess(j, i) += h;
        }
      }
    } else {
      // Hessian action is cheap: contract transformed entries directly.
      std::vector<Vec> tv(k);
      for (size_t a = 0; a < k; ++a) {
        const ConstraintElement& e = *touching[a].second;
        if (blk.kind == BlockKind::Orthant) {
          tv[a].resize(blk.n);
          for (int q = 0; q < blk.n; ++q) tv[a][q] = e.data[q] / bf.point[q];
        } else {
          // Lorentz: store hess * e restricted to the block
          ConeVec tmp(fact.dim);
          std::copy(e.data.begin(), e.data.end(), tmp.v.begin() + blk.offset);
          ConeVec he = cones::hess_apply(fact, tmp);
          tv[a].assign(he.v.begin() + blk.offset, he.v.begin() + blk.offset + blk.size);
        }
      }
      for (size_t a = 0; a < k; ++a) {
        const int i = touching[a].first;
        for (size_t b2 = a; b2 < k; ++b2) {
          const int j = touching[b2].first;
          double h;
          if (blk.kind == BlockKind::Orthant) {
            h = linalg::dot(tv[a], tv[b2]);
          } else {
            h = linalg::dot(touching[a].second->data, tv[b2]);
          }
          ev.hess(i, j) += h;
          if (i != j) ev.hess(j, i) += h;
        }
      }
    }
  }
  return ev;
}

cones::XiEvaluator GenericZeta::xi(const Vec& y_hat, const Vec& dy) const {
  const ConicProblem& p = problem();
  ConeVec s_hat = p.dual_slack(y_hat);
  auto fact = cones::try_factorize(p.cone, s_hat);
  if (!fact) throw NotInterior();
  ConeVec ds = p.apply_A_adjoint(dy);
  for (double& v : ds.v) v = -v;
  return cones::prepare_xi(*fact, ds);
}

LrqiShortZeta::LrqiShortZeta(const ConicProblem& p, const LrqiStructure& st) : ZetaOracle(p) {
  const int m = st.m;
  SymMatrix g(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const double v = linalg::dot(st.a[i], st.a[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  auto chol = linalg::cholesky(g);  // full row rank required
  log_det_g_ = linalg::logdet_from_cholesky(chol);
  g_inv_ = linalg::spd_inverse(chol);
}

std::optional<LowerTriangular> LrqiShortZeta::factor(const Vec& y, int which) const {
  SymMatrix mtx = g_inv_;
  const double sgn = which == 0 ? -1.0 : 1.0;
  for (int i = 0; i < mtx.n; ++i) mtx(i, i) += sgn * y[i];
  return linalg::try_cholesky(mtx);
}

bool LrqiShortZeta::interior(const Vec& y) const { return factor(y, 0) && factor(y, 1); }

ZetaEval LrqiShortZeta::eval(const Vec& y) const {
  const int m = static_cast<int>(y.size());
  auto l1 = factor(y, 0);
  auto l2 = factor(y, 1);
  if (!l1 || !l2) throw NotInterior();
  ZetaEval ev;
  ev.value = -linalg::logdet_from_cholesky(*l1) - linalg::logdet_from_cholesky(*l2) -
             2.0 * log_det_g_;
  SymMatrix inv1 = linalg::spd_inverse(*l1);
  SymMatrix inv2 = linalg::spd_inverse(*l2);
  ev.grad.assign(m, 0.0);
  for (int i = 0; i < m; ++i) ev.grad[i] = inv1(i, i) - inv2(i, i);
  ev.hess = SymMatrix(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      ev.hess(i, j) = inv1(i, j) * inv1(i, j) + inv2(i, j) * inv2(i, j);
  return ev;
}

cones::XiEvaluator LrqiShortZeta::xi(const Vec& y_hat, const Vec& dy) const {
  const int m = static_cast<int>(y_hat.size());
  cones::XiEvaluator ev;
  for (int which = 0; which < 2; ++which) {
    auto l = factor(y_hat, which);
    if (!l) throw NotInterior();
    // slack G^{-1} - D(y) moves by -D(dy); G^{-1} + D(y) moves by +D(dy)
    const double sgn = which == 0 ? -1.0 : 1.0;
    SymMatrix d(m);
    for (int i = 0; i < m; ++i) d(i, i) = sgn * dy[i];
    auto reduced = linalg::congruence_reduce(*l, d);
    cones::XiEvaluator::PsdBlock pb{linalg::householder_tridiagonalize(std::move(reduced))};
    ev.blocks.emplace_back(std::move(pb));
  }
  return ev;
}

std::unique_ptr<ZetaOracle> make_zeta_oracle(const ConicProblem& p, bool force_generic) {
  if (!force_generic) {
    if (auto st = detect_lrqi(p)) return std::make_unique<LrqiShortZeta>(p, *st);
  }
  return std::make_unique<GenericZeta>(p);
}

DualIterate newton_state(const ZetaOracle& oracle, const Vec& y, double t, bool with_cone_data) {
  DualIterate it;
  it.y = y;
  it.t = t;

  if (with_cone_data) {
    it.s = oracle.problem().dual_slack(y);
    auto fact = cones::try_factorize(oracle.problem().cone, *it.s);
    if (!fact) throw NotInterior();
    it.fact = std::move(*fact);
  }

  ZetaEval ev = oracle.eval(y);
  it.grad_zeta = std::move(ev.grad);

  int pivot = 0;
  auto chol = linalg::try_cholesky(ev.hess, &pivot);
  if (!chol) throw SingularHessian();
  it.hess_chol = std::move(*chol);

  Vec g = it.grad_zeta;
  linalg::axpy(-t, oracle.problem().b, g);
  it.d = linalg::cholesky_solve(it.hess_chol, g);
  const double lam2 = linalg::dot(g, it.d);
  it.lambda = std::sqrt(lam2 > 0.0 ? lam2 : 0.0);
  return it;
}

Vec damped_newton_step(const DualIterate& it) {
  Vec y = it.y;
  linalg::axpy(-1.0 / (1.0 + it.lambda), it.d, y);
  return y;
}

CenterResult initial_center(const ZetaOracle& oracle, Vec y_start, double beta,
                            int max_iterations) {
  CenterResult res;
  res.y = std::move(y_start);
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int k = 0; k < max_iterations; ++k) {
    DualIterate st = newton_state(oracle, res.y, 0.0);
    res.lambda_zeta = st.lambda;
    if (st.lambda <= 0.5 * beta) {
      res.centered = true;
      res.iterations = k;
      return res;
    }
    // A decrement that stops shrinking signals a feasible set without an
    // analytic center; keep the current point rather than drifting along the
    // recession direction.
    if (st.lambda < 0.995 * best) {
      best = st.lambda;
      stale = 0;
    } else if (++stale >= 8) {
      res.iterations = k;
      return res;
    }
    res.y = damped_newton_step(st);
    res.iterations = k + 1;
  }
  if (!res.centered && res.lambda_zeta > 0.5 * beta) {
    throw Error("initial centering did not reach the decrement target");
  }
  return res;
}

double initial_t(const ZetaOracle& oracle, const DualIterate& zeta_state, double beta) {
  const Vec& b = oracle.problem().b;
  const Vec bsol = linalg::cholesky_solve(zeta_state.hess_chol, b);
  const double bnorm = std::sqrt(std::max(linalg::dot(b, bsol), 0.0));
  const double lz = zeta_state.lambda;  // state at t = 0, so lambda = |grad zeta|_y
  // The tiny deflation keeps lambda_0 <= beta under roundoff, so the first
  // iteration is a predictor as intended.
  if (lz <= 0.5 * beta) return (beta - lz) / bnorm * (1.0 - 1e-12);
  // Centering could not meet the decrement condition; pick the t that
  // minimizes |grad zeta - t b|_y instead, so the run starts as close to the
  // central path as this y allows.
  const double tstar = linalg::dot(zeta_state.grad_zeta, bsol) / linalg::dot(b, bsol);
  if (tstar > 0.0 && std::isfinite(tstar)) return tstar;
  return 0.5 * beta / bnorm;
}

}  // namespace gco
