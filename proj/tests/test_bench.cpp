#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "gco/bench.hpp"
#include "gco/centering.hpp"
#include "gco/errors.hpp"
#include "test_util.hpp"

using namespace gco;
using testutil::close;

TEST_CASE("generator determinism and shape") {
  auto p1 = generate_lrqi(5, 12, 1234);
  auto p2 = generate_lrqi(5, 12, 1234);
  CHECK(write_problem(p1) == write_problem(p2));

  auto p3 = generate_lrqi(5, 12, 1235);
  CHECK(write_problem(p1) != write_problem(p3));

  CHECK(p1.cone.nu == 24);  // two psd blocks of order 12
  REQUIRE(p1.y_start.has_value());
  for (double v : *p1.y_start) CHECK(v == 0.0);

  // all generated entries stay in [-1, 2)
  for (const auto& row : p1.rows)
    for (const auto& e : row)
      for (double v : e.data) {
        CHECK(v >= -1.0);
        CHECK(v < 2.0);
      }
  for (double v : p1.b) {
    CHECK(v >= -1.0);
    CHECK(v < 2.0);
  }

  CHECK_THROWS_AS(generate_lrqi(5, 9, 1), ValidationError);  // needs n >= 2m
}

TEST_CASE("generated instances have the short-oracle structure") {
  auto p = generate_lrqi(4, 8, 77);
  auto oracle = make_zeta_oracle(p);
  CHECK(oracle->is_short());
  Vec y0(4, 0.0);
  auto ev = oracle->eval(y0);
  CHECK(std::fabs(ev.value) <= 1e-10);
  for (double g : ev.grad) CHECK(std::fabs(g) <= 1e-10);
}

TEST_CASE("weak duality margin on solved instances") {
  for (uint64_t seed : {11ull, 12ull, 13ull}) {
    auto p = generate_lrqi(4, 9, seed);
    Solution sol = solve(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective_dual <= sol.objective_primal + 1e-8);
  }
}

TEST_CASE("batch aggregation") {
  SolverConfig cfg;
  auto st = run_batch(3, 6, 5, 42, cfg);
  CHECK(st.m == 3);
  CHECK(st.n == 6);
  CHECK(st.count == 5);
  CHECK(st.failures == 0);
  CHECK(st.pred_mean > 0.0);
  CHECK(st.total_mean >= st.pred_mean);

  // identical configuration reproduces everything except wall time
  auto st2 = run_batch(3, 6, 5, 42, cfg);
  CHECK(st2.pred_mean == st.pred_mean);
  CHECK(st2.pred_relstd_pct == st.pred_relstd_pct);
  CHECK(st2.total_mean == st.total_mean);
  CHECK(st2.total_relstd_pct == st.total_relstd_pct);
  CHECK(st2.failures == st.failures);

  // a single instance has zero spread
  auto st1 = run_batch(3, 6, 1, 42, cfg);
  CHECK(st1.pred_relstd_pct == 0.0);
  CHECK(st1.total_relstd_pct == 0.0);
}

TEST_CASE("csv emission") {
  CHECK(emit_csv({}) ==
        "m,n,count,pred_mean,pred_relstd,total_mean,total_relstd,time_mean_s,failures\n");

  BenchStats st;
  st.m = 32;
  st.n = 64;
  st.count = 100;
  st.pred_mean = 9.04;
  st.pred_relstd_pct = 9.64;
  st.total_mean = 40.9;
  st.total_relstd_pct = 13.62;
  st.time_mean_s = 0.0123;
  st.failures = 0;
  const std::string csv = emit_csv({st});
  CHECK(csv.find("32,64,100,9.0,9.6,40.9,13.6,0.012,0\n") != std::string::npos);

  // round trip: parse the numbers back
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::replace(row.begin(), row.end(), ',', ' ');
  std::istringstream fields(row);
  double m, n, count, pm, ps, tm, ts, sec, fail;
  fields >> m >> n >> count >> pm >> ps >> tm >> ts >> sec >> fail;
  CHECK(pm == doctest::Approx(9.0));
  CHECK(tm == doctest::Approx(40.9));
}

TEST_CASE("rng stream") {
  SplitMix64 a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  SplitMix64 c(8);
  bool differs = false;
  SplitMix64 a2(7);
  for (int i = 0; i < 10; ++i) differs = differs || (a2.next() != c.next());
  CHECK(differs);
  SplitMix64 u(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform(-1.0, 2.0);
    CHECK(v >= -1.0);
    CHECK(v < 2.0);
  }
}
