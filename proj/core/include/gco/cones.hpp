#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gco/linalg.hpp"

namespace gco::cones {

using linalg::Vec;

enum class BlockKind { Orthant, Lorentz, Psd };

struct ConeBlock {
  BlockKind kind;
  int n;       // orthant: length; lorentz: total dimension (tau + n-1); psd: matrix order
  int offset;  // start of the block in the flat layout
  int size;    // flat length: n for orthant/lorentz, n*n for psd
};

/// Ordered product of symmetric-cone blocks plus the flat storage layout.
/// Psd blocks are stored as full dense symmetric matrices, so the flat dot
/// product of two cone vectors is the ambient inner product.
struct ConeSpec {
  std::vector<ConeBlock> blocks;
  int dim = 0;
  int nu = 0;
  double dual_constant = 0.0;  // additive Legendre constant of F_*, summed over blocks

  static ConeSpec make(const std::vector<std::pair<BlockKind, int>>& blocks);
};

/// Block-partitioned point; the partition is defined by the ConeSpec it belongs to.
struct ConeVec {
  Vec v;

  ConeVec() = default;
  explicit ConeVec(int dim) : v(dim, 0.0) {}
};

double dot(const ConeVec& a, const ConeVec& b);
void axpy(double alpha, const ConeVec& x, ConeVec& y);
ConeVec combine(const ConeVec& a, double alpha, const ConeVec& b);  // a + alpha*b

int nu(const ConeSpec& spec);

bool interior(const ConeSpec& spec, const ConeVec& p);
inline bool interior_dual(const ConeSpec& spec, const ConeVec& s) { return interior(spec, s); }

/// -sum ln / -ln omega / -ln det, no additive constants. Throws NotInterior.
double barrier_bare_value(const ConeSpec& spec, const ConeVec& p);
inline double barrier_primal_value(const ConeSpec& spec, const ConeVec& x) {
  return barrier_bare_value(spec, x);
}
inline double barrier_dual_value(const ConeSpec& spec, const ConeVec& s) {
  return barrier_bare_value(spec, s) + spec.dual_constant;
}

/// Cached per-block work for one interior point: the point itself for the
/// orthant, (omega, point) for Lorentz, the Cholesky factor for Psd.
/// The barrier calculus of the three blocks is identical on the primal and the
/// dual side, so the same factorization type serves both.
struct BlockFact {
  BlockKind kind;
  int n;
  int offset;
  Vec point;                   // orthant / lorentz copy of the block data
  double omega = 0.0;          // lorentz: tau^2 - |u|^2
  linalg::LowerTriangular chol;  // psd
};

struct Factorization {
  std::vector<BlockFact> blocks;
  int dim = 0;
};
using DualFactorization = Factorization;

Factorization factorize(const ConeSpec& spec, const ConeVec& p);  // throws NotInterior
std::optional<Factorization> try_factorize(const ConeSpec& spec, const ConeVec& p);

double barrier_bare_value(const Factorization& f);

/// grad F at the factored point: -1/s, -(2/omega) J s, -S^{-1}.
ConeVec grad(const Factorization& f);
inline ConeVec grad_dual(const Factorization& f) { return grad(f); }

/// Hessian action: g/s^2; rank-one-corrected J form; S^{-1} G S^{-1}.
ConeVec hess_apply(const Factorization& f, const ConeVec& g);
inline ConeVec hess_dual_apply(const Factorization& f, const ConeVec& g) {
  return hess_apply(f, g);
}

/// Inverse Hessian action: s^2 h; <s,h>s - (omega/2) J h; S H S.
ConeVec hess_inv_apply(const Factorization& f, const ConeVec& h);

/// <g, hess(f) g>^{1/2}
double local_norm(const Factorization& f, const ConeVec& g);
inline double local_norm_dual(const Factorization& f, const ConeVec& g) {
  return local_norm(f, g);
}

/// Per-block data for O(block size) evaluation of
///   xi(alpha) = Phi(p + alpha dp) + Phi(p - alpha/(1-alpha) dp) - 2 Phi(p)
/// where Phi is the bare block barrier.
struct XiEvaluator {
  struct OrthantBlock {
    Vec r;  // dp_i / p_i
  };
  struct LorentzBlock {
    double d1, d2;  // delta_1, delta_2
    double a1, a2;  // single-log coefficients
    double rt;      // dtau / tau, for the sheet check
  };
  struct PsdBlock {
    linalg::Tridiag t;  // of L^{-1} dP L^{-T}
  };
  using Block = std::variant<OrthantBlock, LorentzBlock, PsdBlock>;

  std::vector<Block> blocks;

  /// +infinity when either evaluation point leaves the barrier domain.
  double eval(double alpha) const;
  double operator()(double alpha) const { return eval(alpha); }
};

XiEvaluator prepare_xi(const Factorization& f, const ConeVec& dp);

/// Single-log Lorentz form; equals the two-factor form on the interior.
double xi_lorentz_single_log(const XiEvaluator::LorentzBlock& b, double alpha);

}  // namespace gco::cones
