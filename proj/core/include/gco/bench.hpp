#pragma once

#include <cstdint>
#include <string>

#include "gco/solver.hpp"

namespace gco {

/// Counter-based 64-bit generator (splitmix64 mixing); one independent stream
/// per instance seed, uniform doubles from the top 53 bits.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

/// Random rank-one interpolation instance: cone Psd(n) x Psd(n), c = (I, I),
/// row i = (+a_i a_i^T, -a_i a_i^T), entries of a_i and b uniform on [-1, 2],
/// y0 = 0.  Drawing order: a_1 ... a_m, then b.
ConicProblem generate_lrqi(int m, int n, uint64_t seed);

struct BenchStats {
  int m = 0;
  int n = 0;
  int count = 0;
  double pred_mean = 0.0;
  double pred_relstd_pct = 0.0;  // std/mean as percent
  double total_mean = 0.0;
  double total_relstd_pct = 0.0;
  double time_mean_s = 0.0;
  int failures = 0;
};

/// Solves `count` instances with seeds seed .. seed+count-1 and aggregates
/// predictor / total iteration counts.  Failed solves are counted and excluded
/// from the means.
BenchStats run_batch(int m, int n, int count, uint64_t seed, const SolverConfig& config = {});

/// Header m,n,count,pred_mean,pred_relstd,total_mean,total_relstd,time_mean_s,failures;
/// relative standard deviations as percent with one decimal.
std::string emit_csv(const std::vector<BenchStats>& stats);

}  // namespace gco
