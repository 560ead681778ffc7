#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "gco/bench.hpp"

namespace testutil {

using gco::ConeVec;
using gco::ConicProblem;
using gco::Vec;
using gco::cones::BlockKind;
using gco::cones::ConeSpec;
using gco::linalg::SymMatrix;

inline bool close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Independent determinant oracle: Gaussian elimination with partial pivoting.
inline double dense_determinant(SymMatrix m) {
  const int n = m.n;
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(m(i, k)) > std::fabs(m(piv, k))) piv = i;
    if (m(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

// Determinant by cofactor expansion along the first row (n <= 4 in tests).
inline double cofactor_determinant(const SymMatrix& m) {
  const int n = m.n;
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (int c = 0; c < n; ++c) {
    SymMatrix minor(n - 1);
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    }
    det += (c % 2 == 0 ? 1.0 : -1.0) * m(0, c) * cofactor_determinant(minor);
  }
  return det;
}

inline SymMatrix random_spd(int n, gco::SplitMix64& rng, double diag_boost = 0.0) {
  SymMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
  // M = R R^T + (n + boost) I is comfortably positive definite
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r(i, k) * r(j, k);
      m(i, j) = s;
    }
  for (int i = 0; i < n; ++i) m(i, i) += 0.5 + diag_boost;
  return m;
}

inline SymMatrix random_symmetric(int n, gco::SplitMix64& rng) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = rng.uniform(-1.0, 1.0);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

// Random strictly interior point of a cone.
inline ConeVec random_interior(const ConeSpec& spec, gco::SplitMix64& rng) {
  ConeVec p(spec.dim);
  for (const auto& b : spec.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant:
        for (int i = 0; i < b.n; ++i) p.v[b.offset + i] = rng.uniform(0.3, 2.0);
        break;
      case BlockKind::Lorentz: {
        double norm2 = 0.0;
        for (int i = 1; i < b.n; ++i) {
          p.v[b.offset + i] = rng.uniform(-1.0, 1.0);
          norm2 += p.v[b.offset + i] * p.v[b.offset + i];
        }
        p.v[b.offset] = std::sqrt(norm2) + rng.uniform(0.3, 1.5);
        break;
      }
      case BlockKind::Psd: {
        SymMatrix m = random_spd(b.n, rng);
        for (int q = 0; q < b.size; ++q) p.v[b.offset + q] = m.a[q];
        break;
      }
    }
  }
  return p;
}

// Random direction of matching shape (symmetric on Psd blocks).
inline ConeVec random_direction(const ConeSpec& spec, gco::SplitMix64& rng) {
  ConeVec d(spec.dim);
  for (const auto& b : spec.blocks) {
    if (b.kind == BlockKind::Psd) {
      SymMatrix m = random_symmetric(b.n, rng);
      for (int q = 0; q < b.size; ++q) d.v[b.offset + q] = m.a[q];
    } else {
      for (int i = 0; i < b.size; ++i) d.v[b.offset + i] = rng.uniform(-1.0, 1.0);
    }
  }
  return d;
}

// Strictly feasible random instance over the given blocks: picks interior
// x0, s0 and y0, sets b = A x0 and c = s0 + A* y0.
inline ConicProblem random_problem(const std::vector<std::pair<BlockKind, int>>& blocks, int m,
                                   uint64_t seed, bool rank_one_rows = false) {
  gco::SplitMix64 rng(seed);
  ConicProblem p;
  p.cone = ConeSpec::make(blocks);
  p.m = m;
  p.rows.resize(m);
  for (int i = 0; i < m; ++i) {
    for (size_t bi = 0; bi < p.cone.blocks.size(); ++bi) {
      const auto& blk = p.cone.blocks[bi];
      gco::ConstraintElement e;
      e.block = static_cast<int>(bi);
      if (rank_one_rows && blk.kind == BlockKind::Psd) {
        e.rank_one = true;
        e.sign = rng.uniform01() < 0.5 ? 1.0 : -1.0;
        e.data.resize(blk.n);
        for (int q = 0; q < blk.n; ++q) e.data[q] = rng.uniform(-1.0, 1.0);
      } else if (blk.kind == BlockKind::Psd) {
        SymMatrix mm = random_symmetric(blk.n, rng);
        e.data.assign(mm.a.begin(), mm.a.end());
      } else {
        e.data.resize(blk.size);
        for (int q = 0; q < blk.size; ++q) e.data[q] = rng.uniform(-1.0, 1.0);
      }
      p.rows[i].push_back(std::move(e));
    }
  }
  ConeVec x0 = random_interior(p.cone, rng);
  ConeVec s0 = random_interior(p.cone, rng);
  Vec y0(m);
  for (int i = 0; i < m; ++i) y0[i] = rng.uniform(-0.5, 0.5);
  p.b = p.apply_A(x0);
  p.c = s0;
  gco::cones::axpy(1.0, p.apply_A_adjoint(y0), p.c);
  p.y_start = y0;
  p.validate();
  return p;
}

// min x1 + x2  s.t.  x1 + x2 = 1, x >= 0;  f* = 1.
inline ConicProblem toy_lp() {
  ConicProblem p;
  p.cone = ConeSpec::make({{BlockKind::Orthant, 2}});
  p.m = 1;
  p.rows.resize(1);
  gco::ConstraintElement e;
  e.block = 0;
  e.data = {1.0, 1.0};
  p.rows[0].push_back(e);
  p.b = {1.0};
  p.c = ConeVec(2);
  p.c.v = {1.0, 1.0};
  p.y_start = Vec{0.0};
  p.validate();
  return p;
}

// min <I,X>  s.t.  X a = b, X psd; optimum |b|^2/<a,b>.
inline ConicProblem sdo1_instance(int n, uint64_t seed, double* fstar) {
  gco::SplitMix64 rng(seed);
  Vec a(n), b(n);
  double ab = 0.0;
  do {
    for (int i = 0; i < n; ++i) a[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i) b[i] = rng.uniform(-1.0, 1.0);
    ab = gco::linalg::dot(a, b);
  } while (ab <= 0.2);
  ConicProblem p;
  p.cone = ConeSpec::make({{BlockKind::Psd, n}});
  p.m = n;
  p.rows.resize(n);
  for (int i = 0; i < n; ++i) {
    gco::ConstraintElement e;
    e.block = 0;
    e.data.assign(static_cast<size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
      e.data[static_cast<size_t>(i) * n + j] += 0.5 * a[j];
      e.data[static_cast<size_t>(j) * n + i] += 0.5 * a[j];
    }
    p.rows[i].push_back(std::move(e));
  }
  p.b = b;
  p.c = ConeVec(p.cone.dim);
  for (int i = 0; i < n; ++i) p.c.v[static_cast<size_t>(i) * n + i] = 1.0;
  p.y_start = Vec(n, 0.0);
  p.validate();
  if (fstar) *fstar = gco::linalg::dot(b, b) / ab;
  return p;
}

// min <I,X>  s.t.  <X a, a> = 1, |a| = 1; optimum 1.
inline ConicProblem exlr_instance(int n, uint64_t seed) {
  gco::SplitMix64 rng(seed);
  Vec a(n);
  double nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    a[i] = rng.uniform(-1.0, 1.0);
    nrm += a[i] * a[i];
  }
  nrm = std::sqrt(nrm);
  for (int i = 0; i < n; ++i) a[i] /= nrm;
  ConicProblem p;
  p.cone = ConeSpec::make({{BlockKind::Psd, n}});
  p.m = 1;
  p.rows.resize(1);
  gco::ConstraintElement e;
  e.block = 0;
  e.rank_one = true;
  e.sign = 1.0;
  e.data = a;
  p.rows[0].push_back(std::move(e));
  p.b = {1.0};
  p.c = ConeVec(p.cone.dim);
  for (int i = 0; i < n; ++i) p.c.v[static_cast<size_t>(i) * n + i] = 1.0;
  p.y_start = Vec{0.0};
  p.validate();
  return p;
}

}  // namespace testutil
