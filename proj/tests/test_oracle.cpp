#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "synth/beam_operator.hpp"
#include "synth/gamp.hpp"
#include "synth/oracle.hpp"

using namespace synth;
using namespace synth::oracle;

namespace {

RadarConfig tiny_cfg(std::size_t n, std::size_t t, std::vector<double> dirs, long lo,
                     long hi) {
  RadarConfig cfg;
  cfg.num_antennas = n;
  cfg.num_samples = t;
  cfg.directions = std::move(dirs);
  cfg.passband_lo = lo;
  cfg.passband_hi = hi;
  cfg.dac_bits = 2;
  return cfg;
}

}  // namespace

TEST_CASE("grid oracle: frozen spot values against the closed form") {
  SUBCASE("u=2, d=1, theta=1") {
    const auto r = grid_maximize_output(cplx(2, 0), 1.0, 1.0);
    CHECK(std::abs(r.w_star - cplx(1.5, 0.0)) < 1e-3);
    CHECK(std::abs(r.g_value - cplx(-0.5, 0.0)) < 1e-3);
  }
  SUBCASE("d=0 shrinks toward the origin") {
    const cplx u(0.8, -1.1);
    const double theta = 0.7;
    const auto r = grid_maximize_output(u, 0.0, theta);
    CHECK(std::abs(r.w_star - u / (1.0 + theta)) < 1e-3);
    CHECK(std::abs(r.g_value - (-u / (1.0 + theta))) < 1e-3);
    CHECK(std::abs(r.g_value - output_function(u, 0.0, theta)) < 1e-3);
  }
  SUBCASE("u on the target circle is a fixed point") {
    const cplx u = std::polar(std::sqrt(2.5), 1.2);
    const auto r = grid_maximize_output(u, 2.5, 3.0);
    CHECK(std::abs(r.w_star - u) < 1e-3);
    CHECK(std::abs(r.g_value) < 1e-3);
  }
}

TEST_CASE("grid oracle: 1000 random draws match the closed form within 1e-3") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> mag(0.1, 3.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> dd(0.0, 4.0);
  std::uniform_real_distribution<double> th(0.1, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const cplx u = std::polar(mag(rng), ph(rng));
    const double d = dd(rng);
    const double theta = th(rng);
    const auto r = grid_maximize_output(u, d, theta);
    worst = std::max(worst, std::abs(r.g_value - output_function(u, d, theta)));
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("dense operator: agrees with the fast operator's dense materialization") {
  auto cfg = tiny_cfg(2, 4, {0.9, 2.2}, -1, 1);
  BeamOperator op = make_beam_operator(cfg);
  const auto fast_dense = op.materialize_dense();
  const auto ref = build_dense_operator(cfg);
  REQUIRE(ref.b.size() == fast_dense.size());
  for (std::size_t i = 0; i < ref.b.size(); ++i) {
    CHECK(std::abs(ref.b[i] - fast_dense[i]) < 1e-13);
  }
}

TEST_CASE("brute force: symmetric single-cell instance returns the first of a tie") {
  auto cfg = tiny_cfg(1, 1, {1.3}, 0, 1);
  const Constellation c = build_constellation(2);
  DesiredPattern d;
  d.num_directions = 1;
  d.num_samples = 1;
  d.d = {2.0};
  const auto res = brute_force_solve(cfg, d, c);
  CHECK(res.candidates_evaluated == 4);
  CHECK(res.indices.size() == 1);
  // all four phases give identical cost by symmetry
  CHECK(res.indices[0] == 0);
}

TEST_CASE("brute force: candidate count and cap") {
  auto cfg = tiny_cfg(2, 2, {1.3}, -1, 1);
  const Constellation c = build_constellation(2);
  const auto d = build_flat_pattern(cfg, 1.0);
  const auto res = brute_force_solve(cfg, d, c);
  CHECK(res.candidates_evaluated == 256);

  auto big = tiny_cfg(4, 4, {1.3}, -1, 1);
  CHECK_THROWS_AS(brute_force_solve(big, build_flat_pattern(big, 1.0), c),
                  std::length_error);
}

TEST_CASE("brute force: no enumerated candidate beats the reported optimum") {
  auto cfg = tiny_cfg(2, 2, {0.8}, -1, 1);
  cfg.alpha = 2.0;
  const Constellation c = build_constellation(2);
  const auto d = build_flat_pattern(cfg, 1.5);
  const auto res = brute_force_solve(cfg, d, c);

  BeamOperator op = make_beam_operator(cfg);
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<cplx> x(op.cols());
  for (int trial = 0; trial < 200; ++trial) {
    for (auto& v : x) v = c.point(pick(rng));
    CHECK(res.cost_opt <= cost(x, op, d, cfg.resolved_alpha()) + 1e-12);
  }
  // and the solver's cost at the reported optimum matches the oracle value
  CHECK(cost(res.x_opt, op, d, cfg.resolved_alpha()) ==
        doctest::Approx(res.cost_opt).epsilon(1e-12));
}

TEST_CASE("dense transcription: one step matches the structured step") {
  auto cfg = tiny_cfg(2, 4, {0.9, 2.2}, -1, 1);
  cfg.damping = 0.4;
  const Constellation c = build_constellation(2);
  const auto d = build_flat_pattern(cfg, 1.0);
  const auto dense = build_dense_operator(cfg);
  BeamOperator op = make_beam_operator(cfg);

  GampState fast = init_gamp_state(op.cols(), op.rows());
  GampState ref = init_gamp_state(op.cols(), op.rows());
  gamp_step(fast, op, d, c, cfg.damping);
  dense_gamp_step(dense, ref, d, c, cfg.damping, cfg.resolved_alpha());

  REQUIRE(fast.iter == ref.iter);
  for (std::size_t i = 0; i < fast.x_hat.size(); ++i) {
    CHECK(std::abs(fast.x_hat[i] - ref.x_hat[i]) < 1e-9);
    CHECK(std::abs(fast.xi[i] - ref.xi[i]) < 1e-9 * std::abs(ref.xi[i]));
  }
  for (std::size_t j = 0; j < fast.z.size(); ++j) {
    CHECK(std::abs(fast.z[j] - ref.z[j]) < 1e-9);
    CHECK(std::abs(fast.theta[j] - ref.theta[j]) <=
          1e-9 * std::max(1.0, std::abs(ref.theta[j])));
  }
  CHECK(std::abs(fast.beta - ref.beta) < 1e-9);
  CHECK(fast.cost_trace.size() == 1);
  CHECK(std::abs(fast.cost_trace[0] - ref.cost_trace[0]) <
        1e-9 * std::max(1.0, ref.cost_trace[0]));
}

TEST_CASE("dense transcription: 30-step trajectories stay together") {
  auto cfg = tiny_cfg(2, 4, {0.7, 1.9}, -1, 1);
  cfg.damping = 0.3;
  const Constellation c = build_constellation(2);
  const auto d = build_flat_pattern(cfg, 1.0);
  const auto dense = build_dense_operator(cfg);
  BeamOperator op = make_beam_operator(cfg);

  GampState fast = init_gamp_state(op.cols(), op.rows());
  GampState ref = init_gamp_state(op.cols(), op.rows());
  for (int step = 0; step < 30; ++step) {
    gamp_step(fast, op, d, c, cfg.damping);
    dense_gamp_step(dense, ref, d, c, cfg.damping, cfg.resolved_alpha());
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < fast.x_hat.size(); ++i) {
    worst = std::max(worst, std::abs(fast.x_hat[i] - ref.x_hat[i]));
  }
  CHECK(worst < 1e-6);
  for (int step = 0; step < 30; ++step) {
    CHECK(std::abs(fast.cost_trace[step] - ref.cost_trace[step]) <=
          1e-6 * std::max(1.0, ref.cost_trace[step]));
  }
}

TEST_CASE("dense transcription: zero damping freezes the estimate") {
  auto cfg = tiny_cfg(2, 2, {1.0}, -1, 1);
  const Constellation c = build_constellation(2);
  const auto d = build_flat_pattern(cfg, 1.0);
  const auto dense = build_dense_operator(cfg);
  GampState st = init_gamp_state(dense.cols, dense.rows);
  dense_gamp_step(dense, st, d, c, 0.0, cfg.resolved_alpha());
  for (const auto& v : st.x_hat) CHECK(v == cplx(0.0, 0.0));
  for (double t : st.theta) CHECK(t == 0.0);
}
