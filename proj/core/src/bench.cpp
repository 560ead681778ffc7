#include "gco/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gco/errors.hpp"

namespace gco {

ConicProblem generate_lrqi(int m, int n, uint64_t seed) {
  if (m < 1 || n < 2 * m)
    throw ValidationError("instance generator needs m >= 1 and n >= 2m");
  SplitMix64 rng(seed);

  ConicProblem p;
  p.cone = ConeSpec::make({{cones::BlockKind::Psd, n}, {cones::BlockKind::Psd, n}});
  p.m = m;
  p.c = ConeVec(p.cone.dim);
  for (const auto& blk : p.cone.blocks)
    for (int i = 0; i < n; ++i) p.c.v[blk.offset + static_cast<size_t>(i) * n + i] = 1.0;

  p.rows.resize(m);
  for (int i = 0; i < m; ++i) {
    Vec a(n);
    for (int j = 0; j < n; ++j) a[j] = rng.uniform(-1.0, 2.0);
    ConstraintElement plus;
    plus.block = 0;
    plus.rank_one = true;
    plus.sign = 1.0;
    plus.data = a;
    ConstraintElement minus;
    minus.block = 1;
    minus.rank_one = true;
    minus.sign = -1.0;
    minus.data = std::move(a);
    p.rows[i].push_back(std::move(plus));
    p.rows[i].push_back(std::move(minus));
  }
  p.b.resize(m);
  for (int i = 0; i < m; ++i) p.b[i] = rng.uniform(-1.0, 2.0);
  p.y_start = Vec(m, 0.0);
  p.validate();
  return p;
}

BenchStats run_batch(int m, int n, int count, uint64_t seed, const SolverConfig& config) {
  BenchStats st;
  st.m = m;
  st.n = n;
  st.count = count;

  double pred_sum = 0.0, pred_sq = 0.0;
  double tot_sum = 0.0, tot_sq = 0.0;
  double time_sum = 0.0;
  int ok = 0;
  for (int i = 0; i < count; ++i) {
    ConicProblem p = generate_lrqi(m, n, seed + static_cast<uint64_t>(i));
    const auto t0 = std::chrono::steady_clock::now();
    Solution sol = solve(p, config);
    const auto t1 = std::chrono::steady_clock::now();
    if (sol.status != SolveStatus::Optimal) {
      ++st.failures;
      continue;
    }
    ++ok;
    pred_sum += sol.predictor_steps;
    pred_sq += static_cast<double>(sol.predictor_steps) * sol.predictor_steps;
    tot_sum += sol.iterations;
    tot_sq += static_cast<double>(sol.iterations) * sol.iterations;
    time_sum += std::chrono::duration<double>(t1 - t0).count();
  }
  if (ok > 0) {
    st.pred_mean = pred_sum / ok;
    st.total_mean = tot_sum / ok;
    st.time_mean_s = time_sum / ok;
    const double pred_var = std::max(pred_sq / ok - st.pred_mean * st.pred_mean, 0.0);
    const double tot_var = std::max(tot_sq / ok - st.total_mean * st.total_mean, 0.0);
    if (st.pred_mean > 0.0) st.pred_relstd_pct = 100.0 * std::sqrt(pred_var) / st.pred_mean;
    if (st.total_mean > 0.0) st.total_relstd_pct = 100.0 * std::sqrt(tot_var) / st.total_mean;
  }
  return st;
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string emit_csv(const std::vector<BenchStats>& stats) {
  std::ostringstream out;
  out << "m,n,count,pred_mean,pred_relstd,total_mean,total_relstd,time_mean_s,failures\n";
  for (const auto& s : stats) {
    out << s.m << ',' << s.n << ',' << s.count << ',' << fixed(s.pred_mean, 1) << ','
        << fixed(s.pred_relstd_pct, 1) << ',' << fixed(s.total_mean, 1) << ','
        << fixed(s.total_relstd_pct, 1) << ',' << fixed(s.time_mean_s, 3) << ',' << s.failures
        << '\n';
  }
  return out.str();
}

}  // namespace gco
