#pragma once

#include <memory>
#include <optional>

#include "gco/model.hpp"

namespace gco {

/// Value/gradient/Hessian of the dual barrier zeta(y) = F_*(c - A*y) at one point.
/// Values are "bare" (no Legendre constants), so the generic and the short
/// representation agree exactly and zeta(0) = 0 for interpolation instances.
struct ZetaEval {
  double value = 0.0;
  Vec grad;
  linalg::SymMatrix hess;
};

/// Oracle for zeta and for the predictor's xi function.  The generic
/// implementation walks the cone blocks of the problem; the short one works in
/// the m x m Gram space of rank-one instances and never touches n x n data.
class ZetaOracle {
 public:
  explicit ZetaOracle(const ConicProblem& p) : prob_(&p) {}
  virtual ~ZetaOracle() = default;

  const ConicProblem& problem() const { return *prob_; }

  virtual bool is_short() const = 0;
  virtual bool interior(const Vec& y) const = 0;
  /// Throws NotInterior when y is outside the dual feasible set.
  virtual ZetaEval eval(const Vec& y) const = 0;
  virtual double value(const Vec& y) const { return eval(y).value; }
  /// Builds the step-size function
  ///   xi(alpha) = zeta(y_hat + alpha dy) + zeta(y_hat - alpha/(1-alpha) dy) - 2 zeta(y_hat)
  virtual cones::XiEvaluator xi(const Vec& y_hat, const Vec& dy) const = 0;

 private:
  const ConicProblem* prob_;
};

class GenericZeta final : public ZetaOracle {
 public:
  explicit GenericZeta(const ConicProblem& p);
  bool is_short() const override { return false; }
  bool interior(const Vec& y) const override;
  ZetaEval eval(const Vec& y) const override;
  cones::XiEvaluator xi(const Vec& y_hat, const Vec& dy) const override;

  ZetaEval eval_with(const cones::Factorization& fact) const;

 private:
  // rows touching each block, for the Hessian assembly
  std::vector<std::vector<std::pair<int, const ConstraintElement*>>> by_block_;
};

class LrqiShortZeta final : public ZetaOracle {
 public:
  LrqiShortZeta(const ConicProblem& p, const LrqiStructure& st);
  bool is_short() const override { return true; }
  bool interior(const Vec& y) const override;
  ZetaEval eval(const Vec& y) const override;
  cones::XiEvaluator xi(const Vec& y_hat, const Vec& dy) const override;

  const linalg::SymMatrix& gram_inverse() const { return g_inv_; }
  double log_det_gram() const { return log_det_g_; }

 private:
  // G^{-1} -+ D(y); factor[0] pairs with -D(dy), factor[1] with +D(dy)
  std::optional<linalg::LowerTriangular> factor(const Vec& y, int which) const;

  linalg::SymMatrix g_inv_;
  double log_det_g_ = 0.0;
};

/// Picks the short oracle when the problem has the rank-one interpolation shape.
std::unique_ptr<ZetaOracle> make_zeta_oracle(const ConicProblem& p, bool force_generic = false);

/// Newton state of the corrector at (y, t): one Hessian factorization serving
/// both the damped step and the predictor's affine-scaling direction.
struct DualIterate {
  Vec y;
  double t = 0.0;
  double lambda = 0.0;  // <grad psi_t, d>^{1/2}
  Vec d;                // solves hess_zeta d = grad psi_t
  Vec grad_zeta;
  linalg::LowerTriangular hess_chol;
  // cone-space data, present when the caller asked for it (generic path, tests)
  std::optional<ConeVec> s;
  std::optional<cones::Factorization> fact;
};

/// Throws NotInterior / SingularHessian.
DualIterate newton_state(const ZetaOracle& oracle, const Vec& y, double t,
                         bool with_cone_data = false);

/// y - d/(1+lambda); the caller re-checks interiority.
Vec damped_newton_step(const DualIterate& it);

struct CenterResult {
  Vec y;
  bool centered = false;  // lambda_zeta <= beta/2 reached
  double lambda_zeta = 0.0;
  int iterations = 0;
};

/// Damped Newton on zeta alone until |grad zeta|_y <= beta/2.  For dual
/// feasible sets without an analytic center the decrement stalls at a positive
/// value; the loop then stops and reports centered = false.
CenterResult initial_center(const ZetaOracle& oracle, Vec y_start, double beta,
                            int max_iterations = 500);

/// t0 = (beta - |grad zeta(y0)|_{y0}) / |b|_{y0} when the centering condition
/// holds; otherwise the decrement-minimizing projection of grad zeta onto b.
double initial_t(const ZetaOracle& oracle, const DualIterate& zeta_state, double beta);

}  // namespace gco
