#include "gco/cones.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gco/errors.hpp"

namespace gco::cones {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoLn2 = 2.0 * std::numbers::ln2;

linalg::SymMatrix block_matrix(const Vec& flat, int offset, int n) {
  linalg::SymMatrix m(n);
  for (int i = 0; i < n * n; ++i) m.a[i] = flat[offset + i];
  return m;
}

void store_block(Vec& flat, int offset, const linalg::SymMatrix& m) {
  for (size_t i = 0; i < m.a.size(); ++i) flat[offset + i] = m.a[i];
}

double lorentz_omega(const Vec& p, int off, int n) {
  double w = p[off] * p[off];
  for (int i = 1; i < n; ++i) w -= p[off + i] * p[off + i];
  return w;
}

}  // namespace

ConeSpec ConeSpec::make(const std::vector<std::pair<BlockKind, int>>& defs) {
  ConeSpec spec;
  int off = 0;
  for (auto [kind, n] : defs) {
    if (n < 1) throw ValidationError("cone block must have positive dimension");
    ConeBlock b{kind, n, off, 0};
    switch (kind) {
      case BlockKind::Orthant:
        b.size = n;
        spec.nu += n;
        spec.dual_constant += -n;
        break;
      case BlockKind::Lorentz:
        b.size = n;
        spec.nu += 2;
        spec.dual_constant += -2.0 + kTwoLn2;
        break;
      case BlockKind::Psd:
        b.size = n * n;
        spec.nu += n;
        spec.dual_constant += -n;
        break;
    }
    off += b.size;
    spec.blocks.push_back(b);
  }
  spec.dim = off;
  return spec;
}

double dot(const ConeVec& a, const ConeVec& b) { return linalg::dot(a.v, b.v); }

void axpy(double alpha, const ConeVec& x, ConeVec& y) { linalg::axpy(alpha, x.v, y.v); }

ConeVec combine(const ConeVec& a, double alpha, const ConeVec& b) {
  ConeVec r = a;
  linalg::axpy(alpha, b.v, r.v);
  return r;
}

int nu(const ConeSpec& spec) { return spec.nu; }

bool interior(const ConeSpec& spec, const ConeVec& p) {
  if (static_cast<int>(p.v.size()) != spec.dim) throw DimensionMismatch("interior: bad partition");
  for (const auto& b : spec.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant:
        for (int i = 0; i < b.n; ++i)
          if (p.v[b.offset + i] <= 0.0) return false;
        break;
      case BlockKind::Lorentz: {
        if (p.v[b.offset] <= 0.0) return false;
        if (lorentz_omega(p.v, b.offset, b.n) <= 0.0) return false;
        break;
      }
      case BlockKind::Psd: {
        auto m = block_matrix(p.v, b.offset, b.n);
        if (!linalg::try_cholesky(m)) return false;
        break;
      }
    }
  }
  return true;
}

std::optional<Factorization> try_factorize(const ConeSpec& spec, const ConeVec& p) {
  if (static_cast<int>(p.v.size()) != spec.dim)
    throw DimensionMismatch("factorize: bad partition");
  Factorization f;
  f.dim = spec.dim;
  for (const auto& b : spec.blocks) {
    BlockFact bf{b.kind, b.n, b.offset, {}, 0.0, {}};
    switch (b.kind) {
      case BlockKind::Orthant:
        bf.point.assign(p.v.begin() + b.offset, p.v.begin() + b.offset + b.n);
        for (double x : bf.point)
          if (x <= 0.0) return std::nullopt;
        break;
      case BlockKind::Lorentz:
        bf.point.assign(p.v.begin() + b.offset, p.v.begin() + b.offset + b.n);
        if (bf.point[0] <= 0.0) return std::nullopt;
        bf.omega = lorentz_omega(p.v, b.offset, b.n);
        if (bf.omega <= 0.0) return std::nullopt;
        break;
      case BlockKind::Psd: {
        auto m = block_matrix(p.v, b.offset, b.n);
        auto chol = linalg::try_cholesky(m);
        if (!chol) return std::nullopt;
        bf.chol = std::move(*chol);
        break;
      }
    }
    f.blocks.push_back(std::move(bf));
  }
  return f;
}

Factorization factorize(const ConeSpec& spec, const ConeVec& p) {
  auto f = try_factorize(spec, p);
  if (!f) throw NotInterior();
  return std::move(*f);
}

double barrier_bare_value(const ConeSpec& spec, const ConeVec& p) {
  return barrier_bare_value(factorize(spec, p));
}

double barrier_bare_value(const Factorization& f) {
  double val = 0.0;
  for (const auto& b : f.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant:
        for (double x : b.point) val -= std::log(x);
        break;
      case BlockKind::Lorentz:
        val -= std::log(b.omega);
        break;
      case BlockKind::Psd:
        val -= linalg::logdet_from_cholesky(b.chol);
        break;
    }
  }
  return val;
}

ConeVec grad(const Factorization& f) {
  ConeVec g(f.dim);
  for (const auto& b : f.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant:
        for (int i = 0; i < b.n; ++i) g.v[b.offset + i] = -1.0 / b.point[i];
        break;
      case BlockKind::Lorentz: {
        const double c = 2.0 / b.omega;
        g.v[b.offset] = -c * b.point[0];
        for (int i = 1; i < b.n; ++i) g.v[b.offset + i] = c * b.point[i];
        break;
      }
      case BlockKind::Psd: {
        auto inv = linalg::spd_inverse(b.chol);
        for (auto& x : inv.a) x = -x;
        store_block(g.v, b.offset, inv);
        break;
      }
    }
  }
  return g;
}

ConeVec hess_apply(const Factorization& f, const ConeVec& g) {
  if (static_cast<int>(g.v.size()) != f.dim) throw DimensionMismatch("hess_apply: bad partition");
  ConeVec out(f.dim);
  for (const auto& b : f.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant:
        for (int i = 0; i < b.n; ++i)
          out.v[b.offset + i] = g.v[b.offset + i] / (b.point[i] * b.point[i]);
        break;
      case BlockKind::Lorentz: {
        // hess = -(2/w) J + (4/w^2) (J s)(J s)^T,  J = diag(1, -I)
        const double w = b.omega;
        double jsg = b.point[0] * g.v[b.offset];  // <J s, g>
        for (int i = 1; i < b.n; ++i) jsg -= b.point[i] * g.v[b.offset + i];
        const double c1 = 4.0 * jsg / (w * w);
        const double c2 = 2.0 / w;
        out.v[b.offset] = c1 * b.point[0] - c2 * g.v[b.offset];
        for (int i = 1; i < b.n; ++i)
          out.v[b.offset + i] = -c1 * b.point[i] + c2 * g.v[b.offset + i];
        break;
      }
      case BlockKind::Psd: {
        auto gm = block_matrix(g.v, b.offset, b.n);
        auto w = linalg::congruence_reduce(b.chol, gm);
        auto r = linalg::congruence_expand_inv(b.chol, w);  // S^{-1} G S^{-1}
        store_block(out.v, b.offset, r);
        break;
      }
    }
  }
  return out;
}

ConeVec hess_inv_apply(const Factorization& f, const ConeVec& h) {
  if (static_cast<int>(h.v.size()) != f.dim)
    throw DimensionMismatch("hess_inv_apply: bad partition");
  ConeVec out(f.dim);
  for (const auto& b : f.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant:
        for (int i = 0; i < b.n; ++i)
          out.v[b.offset + i] = h.v[b.offset + i] * b.point[i] * b.point[i];
        break;
      case BlockKind::Lorentz: {
        // hess^{-1} = s s^T - (omega/2) J
        double sh = 0.0;
        for (int i = 0; i < b.n; ++i) sh += b.point[i] * h.v[b.offset + i];
        const double c = 0.5 * b.omega;
        out.v[b.offset] = sh * b.point[0] - c * h.v[b.offset];
        for (int i = 1; i < b.n; ++i)
          out.v[b.offset + i] = sh * b.point[i] + c * h.v[b.offset + i];
        break;
      }
      case BlockKind::Psd: {
        // S H S = L (L^T H L) L^T
        auto hm = block_matrix(h.v, b.offset, b.n);
        const int n = b.n;
        linalg::SymMatrix t(n);  // L^T H
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = i; k < n; ++k) s += b.chol(k, i) * hm(k, j);
            t(i, j) = s;
          }
        linalg::SymMatrix lthl(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = j; k < n; ++k) s += t(i, k) * b.chol(k, j);
            lthl(i, j) = s;
          }
        auto r = linalg::congruence_expand(b.chol, lthl);
        store_block(out.v, b.offset, r);
        break;
      }
    }
  }
  return out;
}

double local_norm(const Factorization& f, const ConeVec& g) {
  const double v = dot(g, hess_apply(f, g));
  return std::sqrt(v > 0.0 ? v : 0.0);
}

XiEvaluator prepare_xi(const Factorization& f, const ConeVec& dp) {
  if (static_cast<int>(dp.v.size()) != f.dim) throw DimensionMismatch("prepare_xi: bad partition");
  XiEvaluator ev;
  for (const auto& b : f.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant: {
        XiEvaluator::OrthantBlock ob;
        ob.r.resize(b.n);
        for (int i = 0; i < b.n; ++i) ob.r[i] = dp.v[b.offset + i] / b.point[i];
        ev.blocks.emplace_back(std::move(ob));
        break;
      }
      case BlockKind::Lorentz: {
        XiEvaluator::LorentzBlock lb;
        double delta1 = b.point[0] * dp.v[b.offset];
        double delta2 = dp.v[b.offset] * dp.v[b.offset];
        for (int i = 1; i < b.n; ++i) {
          delta1 -= b.point[i] * dp.v[b.offset + i];
          delta2 -= dp.v[b.offset + i] * dp.v[b.offset + i];
        }
        lb.d1 = delta1 / b.omega;
        lb.d2 = delta2 / b.omega;
        lb.a1 = lb.d1 + 2.0 * lb.d1 * lb.d1 - lb.d2;
        lb.a2 = lb.d2 * lb.d2 + 2.0 * lb.d1 * lb.d2 + lb.d2;
        lb.rt = dp.v[b.offset] / b.point[0];
        ev.blocks.emplace_back(lb);
        break;
      }
      case BlockKind::Psd: {
        auto dm = block_matrix(dp.v, b.offset, b.n);
        auto reduced = linalg::congruence_reduce(b.chol, dm);
        XiEvaluator::PsdBlock pb{linalg::householder_tridiagonalize(std::move(reduced))};
        ev.blocks.emplace_back(std::move(pb));
        break;
      }
    }
  }
  return ev;
}

double XiEvaluator::eval(double alpha) const {
  if (alpha == 0.0) return 0.0;
  const double gamma = alpha / (1.0 - alpha);
  double xi = 0.0;
  for (const auto& blk : blocks) {
    if (const auto* ob = std::get_if<OrthantBlock>(&blk)) {
      for (double r : ob->r) {
        const double f1 = 1.0 + alpha * r;
        const double f2 = 1.0 - gamma * r;
        if (f1 <= 0.0 || f2 <= 0.0) return kInf;
        xi -= std::log(f1) + std::log(f2);
      }
    } else if (const auto* lb = std::get_if<LorentzBlock>(&blk)) {
      const double t1 = 1.0 + alpha * lb->rt;
      const double t2 = 1.0 - gamma * lb->rt;
      const double q1 = 1.0 + 2.0 * alpha * lb->d1 + alpha * alpha * lb->d2;
      const double q2 = 1.0 - 2.0 * gamma * lb->d1 + gamma * gamma * lb->d2;
      if (t1 <= 0.0 || t2 <= 0.0 || q1 <= 0.0 || q2 <= 0.0) return kInf;
      xi -= std::log(q1) + std::log(q2);
    } else {
      const auto& pb = std::get<PsdBlock>(blk);
      auto f1 = linalg::tridiag_logdet(pb.t, 1.0, alpha);
      if (!f1.positive_definite) return kInf;
      auto f2 = linalg::tridiag_logdet(pb.t, 1.0, -gamma);
      if (!f2.positive_definite) return kInf;
      xi -= f1.value + f2.value;
    }
  }
  return xi;
}

double xi_lorentz_single_log(const XiEvaluator::LorentzBlock& b, double alpha) {
  const double tau = alpha * alpha / (1.0 - alpha);
  const double q = 1.0 - 2.0 * tau * b.a1 + tau * tau * b.a2;
  if (q <= 0.0) return kInf;
  return -std::log(q);
}

}  // namespace gco::cones
