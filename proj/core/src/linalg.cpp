#include "gco/linalg.hpp"

#include <cmath>
#include <cstddef>

#include "gco/errors.hpp"

namespace gco::linalg {

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const Vec& x, Vec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: length mismatch");
  for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vec scaled(const Vec& x, double alpha) {
  Vec y(x);
  for (double& v : y) v *= alpha;
  return y;
}

SymMatrix SymMatrix::identity(int order) {
  SymMatrix m(order);
  for (int i = 0; i < order; ++i) m(i, i) = 1.0;
  return m;
}

void SymMatrix::symmetrize() {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = v;
      (*this)(j, i) = v;
    }
}

Vec matvec(const SymMatrix& m, const Vec& x) {
  if (static_cast<int>(x.size()) != m.n) throw DimensionMismatch("matvec: length mismatch");
  Vec y(m.n, 0.0);
  for (int i = 0; i < m.n; ++i) {
    double s = 0.0;
    const double* row = m.a.data() + static_cast<size_t>(i) * m.n;
    for (int j = 0; j < m.n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

double frobenius_dot(const SymMatrix& a, const SymMatrix& b) {
  if (a.n != b.n) throw DimensionMismatch("frobenius_dot: order mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.a.size(); ++i) s += a.a[i] * b.a[i];
  return s;
}

std::optional<LowerTriangular> try_cholesky(const SymMatrix& m, int* pivot) {
  const int n = m.n;
  LowerTriangular l(n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0 || !std::isfinite(d)) {
      if (pivot) *pivot = j + 1;
      return std::nullopt;
    }
    l(j, j) = std::sqrt(d);
    const double inv = 1.0 / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s * inv;
    }
  }
  return l;
}

LowerTriangular cholesky(const SymMatrix& m) {
  int pivot = 0;
  auto l = try_cholesky(m, &pivot);
  if (!l) throw NotPositiveDefinite(pivot);
  return *l;
}

Vec solve_triangular(const LowerTriangular& l, const Vec& rhs, Side side) {
  const int n = l.n;
  if (static_cast<int>(rhs.size()) != n) throw DimensionMismatch("solve_triangular: length mismatch");
  Vec x(n);
  if (side == Side::Lower) {
    for (int i = 0; i < n; ++i) {
      double s = rhs[i];
      for (int k = 0; k < i; ++k) s -= l(i, k) * x[k];
      x[i] = s / l(i, i);
    }
  } else {
    for (int i = n - 1; i >= 0; --i) {
      double s = rhs[i];
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
      x[i] = s / l(i, i);
    }
  }
  return x;
}

Vec cholesky_solve(const LowerTriangular& l, const Vec& rhs) {
  return solve_triangular(l, solve_triangular(l, rhs, Side::Lower), Side::Upper);
}

namespace {

// In-place forward substitution on every column of a row-major square matrix.
void forward_columns(const LowerTriangular& l, SymMatrix& m) {
  const int n = l.n;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) {
      const double lik = l(i, k);
      if (lik == 0.0) continue;
      for (int c = 0; c < n; ++c) m(i, c) -= lik * m(k, c);
    }
    const double inv = 1.0 / l(i, i);
    for (int c = 0; c < n; ++c) m(i, c) *= inv;
  }
}

// In-place back substitution (L^T x = rhs) on every column.
void backward_columns(const LowerTriangular& l, SymMatrix& m) {
  const int n = l.n;
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) {
      const double lki = l(k, i);
      if (lki == 0.0) continue;
      for (int c = 0; c < n; ++c) m(i, c) -= lki * m(k, c);
    }
    const double inv = 1.0 / l(i, i);
    for (int c = 0; c < n; ++c) m(i, c) *= inv;
  }
}

SymMatrix transpose(const SymMatrix& m) {
  SymMatrix t(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) t(j, i) = m(i, j);
  return t;
}

}  // namespace

SymMatrix congruence_reduce(const LowerTriangular& l, const SymMatrix& h) {
  if (l.n != h.n) throw DimensionMismatch("congruence_reduce: order mismatch");
  SymMatrix z = h;
  forward_columns(l, z);        // z = L^{-1} H
  z = transpose(z);             // z = H L^{-T}  (H symmetric)
  forward_columns(l, z);        // z = L^{-1} H L^{-T}
  z.symmetrize();
  return z;
}

SymMatrix congruence_expand(const LowerTriangular& l, const SymMatrix& w) {
  if (l.n != w.n) throw DimensionMismatch("congruence_expand: order mismatch");
  const int n = l.n;
  // t = L w
  SymMatrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k <= i; ++k) s += l(i, k) * w(k, j);
      t(i, j) = s;
    }
  // r = t L^T
  SymMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k <= j; ++k) s += t(i, k) * l(j, k);
      r(i, j) = s;
    }
  r.symmetrize();
  return r;
}

SymMatrix congruence_expand_inv(const LowerTriangular& l, const SymMatrix& w) {
  if (l.n != w.n) throw DimensionMismatch("congruence_expand_inv: order mismatch");
  SymMatrix z = w;
  backward_columns(l, z);       // z = L^{-T} W
  z = transpose(z);             // z = W L^{-1}
  backward_columns(l, z);       // z = L^{-T} W L^{-1}
  z.symmetrize();
  return z;
}

Tridiag householder_tridiagonalize(SymMatrix b) {
  const int n = b.n;
  Tridiag t;
  t.d.assign(n, 0.0);
  t.e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return t;

  Vec v(n), p(n), w(n);
  for (int k = 0; k < n - 2; ++k) {
    // Householder vector for column k below the diagonal.
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += b(i, k) * b(i, k);
    const double alpha = std::sqrt(scale);
    if (alpha == 0.0) {
      t.e[k] = 0.0;
      continue;
    }
    const double sigma = (b(k + 1, k) >= 0.0) ? alpha : -alpha;
    for (int i = 0; i <= k; ++i) v[i] = 0.0;
    v[k + 1] = b(k + 1, k) + sigma;
    for (int i = k + 2; i < n; ++i) v[i] = b(i, k);
    const double pi = sigma * v[k + 1];  // = v^T v / 2
    if (pi == 0.0) {
      t.e[k] = 0.0;
      continue;
    }
    const double tau = 1.0 / pi;

    // p = tau * B v over the trailing block
    for (int i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += b(i, j) * v[j];
      p[i] = tau * s;
    }
    double vtp = 0.0;
    for (int i = k + 1; i < n; ++i) vtp += v[i] * p[i];
    for (int i = k + 1; i < n; ++i) w[i] = p[i] - 0.5 * tau * vtp * v[i];

    // B <- B - v w^T - w v^T on the trailing block
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) b(i, j) -= v[i] * w[j] + w[i] * v[j];

    t.e[k] = -sigma;
    b(k + 1, k) = -sigma;
    b(k, k + 1) = -sigma;
  }
  for (int i = 0; i < n; ++i) t.d[i] = b(i, i);
  if (n >= 2) t.e[n - 2] = b(n - 1, n - 2);
  return t;
}

TridiagLogDet tridiag_logdet(const Tridiag& t, double shift, double scale) {
  TridiagLogDet r;
  const size_t n = t.d.size();
  double logdet = 0.0;
  double prev = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double piv = shift + scale * t.d[i];
    if (i > 0) {
      const double off = scale * t.e[i - 1];
      piv -= off * off / prev;
    }
    if (piv <= 0.0 || !std::isfinite(piv)) return r;  // positive_definite stays false
    logdet += std::log(piv);
    prev = piv;
  }
  r.value = logdet;
  r.positive_definite = true;
  return r;
}

double logdet_from_cholesky(const LowerTriangular& l) {
  double s = 0.0;
  for (int i = 0; i < l.n; ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

SymMatrix spd_inverse(const LowerTriangular& l) {
  SymMatrix inv = SymMatrix::identity(l.n);
  forward_columns(l, inv);
  backward_columns(l, inv);
  inv.symmetrize();
  return inv;
}

}  // namespace gco::linalg
