#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include <doctest.h>

#include "synth/beam_operator.hpp"
#include "synth/gamp.hpp"
#include "synth/oracle.hpp"

using namespace synth;

namespace {

RadarConfig desk_cfg() {
  RadarConfig cfg;
  cfg.num_antennas = 16;
  cfg.num_samples = 256;
  cfg.dac_bits = 2;
  cfg.damping = 0.3;
  cfg.directions = {0.2 * std::numbers::pi, 0.4 * std::numbers::pi,
                    0.6 * std::numbers::pi, 0.8 * std::numbers::pi};
  cfg.passband_lo = -64;
  cfg.passband_hi = 64;
  cfg.max_iters = 60;
  cfg.rel_tol = 1e-4;
  return cfg;
}

RadarConfig tiny_cfg(double phi) {
  RadarConfig cfg;
  cfg.num_antennas = 2;
  cfg.num_samples = 2;
  cfg.dac_bits = 2;
  cfg.damping = 0.5;
  cfg.directions = {phi};
  cfg.passband_lo = -1;
  cfg.passband_hi = 1;
  cfg.max_iters = 80;
  cfg.rel_tol = 1e-6;
  return cfg;
}

}  // namespace

TEST_CASE("gamp_step: first step from the zero state gives z = sqrt(d)/(1+theta0)") {
  auto cfg = desk_cfg();
  cfg.num_antennas = 4;
  cfg.num_samples = 16;
  cfg.passband_lo = -4;
  cfg.passband_hi = 4;
  cfg.directions = {0.9, 2.0};
  const Constellation c = build_constellation(cfg.dac_bits);
  const auto d = build_flat_pattern(cfg, 2.0);
  BeamOperator op = make_beam_operator(cfg);
  GampState st = init_gamp_state(op.cols(), op.rows());
  gamp_step(st, op, d, c, cfg.damping);
  for (std::size_t j = 0; j < st.z.size(); ++j) {
    const cplx want(std::sqrt(d.d[j]) / (1.0 + GampConstants::kTheta0), 0.0);
    CHECK(std::abs(st.z[j] - want) < 1e-14);
  }
}

TEST_CASE("gamp_step: zero damping freezes x and zeroes theta") {
  auto cfg = tiny_cfg(1.1);
  const Constellation c = build_constellation(2);
  const auto d = build_flat_pattern(cfg, 1.0);
  BeamOperator op = make_beam_operator(cfg);
  GampState st = init_gamp_state(op.cols(), op.rows());
  gamp_step(st, op, d, c, 0.0);
  for (const auto& v : st.x_hat) CHECK(v == cplx(0.0, 0.0));
  for (double t : st.theta) CHECK(t == 0.0);
  gamp_step(st, op, d, c, 0.0);
  for (const auto& v : st.x_hat) CHECK(v == cplx(0.0, 0.0));
}

TEST_CASE("gamp_step: non-finite state raises a divergence error naming the iteration") {
  auto cfg = tiny_cfg(1.1);
  const Constellation c = build_constellation(2);
  const auto d = build_flat_pattern(cfg, 1.0);
  BeamOperator op = make_beam_operator(cfg);
  GampState st = init_gamp_state(op.cols(), op.rows());
  st.iter = 6;
  st.x_hat[1] = cplx(std::numeric_limits<double>::infinity(), 0.0);
  try {
    gamp_step(st, op, d, c, 0.5);
    FAIL("expected GampDivergence");
  } catch (const GampDivergence& e) {
    CHECK(e.iteration() == 7);
    CHECK(std::string(e.what()).find("iteration 7") != std::string::npos);
  }
}

TEST_CASE("gamp curvatures: theta and xi are positive after the early iterations") {
  auto cfg = desk_cfg();
  const Constellation c = build_constellation(cfg.dac_bits);
  const auto d = build_flat_pattern(cfg, 1.0);
  BeamOperator op = make_beam_operator(cfg);
  GampState st = init_gamp_state(op.cols(), op.rows());
  for (int step = 0; step < 10; ++step) gamp_step(st, op, d, c, cfg.damping);
  for (double t : st.theta) CHECK(t > 0.0);
  for (double x : st.xi) CHECK(x > 0.0);
  for (double cst : st.cost_trace) CHECK(std::isfinite(cst));
}

TEST_CASE("solve: desk-scale run converges and beats random baselines") {
  auto cfg = desk_cfg();
  BeamOperator op = make_beam_operator(cfg);
  const auto d = build_flat_pattern(cfg, 1.0);
  const auto res = solve(cfg, op, d);

  CHECK(res.converged);
  CHECK(res.iterations <= 60);
  CHECK(res.final_cost == doctest::Approx(res.cost_trace.back()).epsilon(1e-9));

  // every solution entry is an exact alphabet point
  const Constellation c = build_constellation(cfg.dac_bits);
  for (std::size_t i = 0; i < res.x_sol.size(); ++i) {
    CHECK(res.x_sol[i] == c.point(static_cast<std::size_t>(res.x_indices[i])));
  }

  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<cplx> x(op.cols());
  for (int trial = 0; trial < 20; ++trial) {
    for (auto& v : x) v = c.point(pick(rng));
    CHECK(res.final_cost < cost(x, op, d, cfg.resolved_alpha()));
  }
}

TEST_CASE("solve: deterministic across repeated runs") {
  auto cfg = desk_cfg();
  cfg.num_samples = 64;
  cfg.passband_lo = -16;
  cfg.passband_hi = 16;
  const auto d = build_flat_pattern(cfg, 1.0);
  BeamOperator op1 = make_beam_operator(cfg);
  BeamOperator op2 = make_beam_operator(cfg);
  const auto r1 = solve(cfg, op1, d);
  const auto r2 = solve(cfg, op2, d);
  REQUIRE(r1.x_sol.size() == r2.x_sol.size());
  CHECK(std::memcmp(r1.x_sol.data(), r2.x_sol.data(),
                    r1.x_sol.size() * sizeof(cplx)) == 0);
  CHECK(r1.final_cost == r2.final_cost);
  CHECK(r1.iterations == r2.iterations);
  REQUIRE(r1.cost_trace.size() == r2.cost_trace.size());
  for (std::size_t i = 0; i < r1.cost_trace.size(); ++i) {
    CHECK(r1.cost_trace[i] == r2.cost_trace[i]);
  }
}

TEST_CASE("solve: tiny instances land near the exhaustive optimum") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> phi(0.15 * std::numbers::pi,
                                             0.85 * std::numbers::pi);
  std::uniform_real_distribution<double> intensity(0.25, 4.0);
  int ok = 0;
  const int trials = 10;
  for (int trial = 0; trial < trials; ++trial) {
    auto cfg = tiny_cfg(phi(rng));
    const Constellation c = build_constellation(cfg.dac_bits);
    DesiredPattern d = build_flat_pattern(cfg, 1.0);
    for (auto& v : d.d) v = intensity(rng);
    BeamOperator op = make_beam_operator(cfg);
    const auto res = solve(cfg, op, d);
    const auto opt = oracle::brute_force_solve(cfg, d, c);
    CHECK(opt.cost_opt <= res.final_cost + 1e-12);
    if (res.final_cost <= 2.0 * opt.cost_opt) ++ok;
  }
  CHECK(ok >= trials * 8 / 10);
}
