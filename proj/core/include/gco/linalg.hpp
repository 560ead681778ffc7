#pragma once

#include <optional>
#include <vector>

namespace gco::linalg {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
// y += alpha * x
void axpy(double alpha, const Vec& x, Vec& y);
Vec scaled(const Vec& x, double alpha);

/// Dense symmetric matrix, row-major full storage.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;

  SymMatrix() = default;
  explicit SymMatrix(int order) : n(order), a(static_cast<size_t>(order) * order, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static SymMatrix identity(int order);
  void symmetrize();
};

// y = M x
Vec matvec(const SymMatrix& m, const Vec& x);
// <A, B> Frobenius
double frobenius_dot(const SymMatrix& a, const SymMatrix& b);

/// Cholesky factor, row-major full storage with zeros above the diagonal.
struct LowerTriangular {
  int n = 0;
  std::vector<double> a;

  LowerTriangular() = default;
  explicit LowerTriangular(int order) : n(order), a(static_cast<size_t>(order) * order, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

/// Symmetric tridiagonal matrix: diagonal d (length n), off-diagonal e (length n-1).
struct Tridiag {
  Vec d;
  Vec e;
};

/// L with L L^T == m. Throws NotPositiveDefinite (1-based pivot) if m is not PD.
LowerTriangular cholesky(const SymMatrix& m);
/// Non-throwing variant; on failure returns nullopt and sets *pivot (1-based) if given.
std::optional<LowerTriangular> try_cholesky(const SymMatrix& m, int* pivot = nullptr);

enum class Side { Lower, Upper };

/// Solves L x = rhs (Lower) or L^T x = rhs (Upper).
Vec solve_triangular(const LowerTriangular& l, const Vec& rhs, Side side);
/// x = L^{-T} L^{-1} rhs, i.e. solves (L L^T) x = rhs.
Vec cholesky_solve(const LowerTriangular& l, const Vec& rhs);

/// L^{-1} H L^{-T}
SymMatrix congruence_reduce(const LowerTriangular& l, const SymMatrix& h);
/// L W L^T
SymMatrix congruence_expand(const LowerTriangular& l, const SymMatrix& w);
/// L^{-T} W L^{-1}
SymMatrix congruence_expand_inv(const LowerTriangular& l, const SymMatrix& w);

/// Reduces B to a similar tridiagonal matrix by Householder reflections.
/// The orthogonal factor is not accumulated.
Tridiag householder_tridiagonalize(SymMatrix b);

struct TridiagLogDet {
  double value = 0.0;
  bool positive_definite = false;
};

/// log det(shift*I + scale*T) via the LDL^T three-term recurrence.
/// positive_definite is false when a pivot is <= 0; value is then meaningless.
TridiagLogDet tridiag_logdet(const Tridiag& t, double shift, double scale);

/// 2 * sum_i ln L_ii
double logdet_from_cholesky(const LowerTriangular& l);

/// Inverse of an SPD matrix from its Cholesky factor.
SymMatrix spd_inverse(const LowerTriangular& l);

}  // namespace gco::linalg
