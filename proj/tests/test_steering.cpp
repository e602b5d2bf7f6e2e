#include <cmath>
#include <numbers>

#include <doctest.h>

#include "synth/steering.hpp"

using namespace synth;

namespace {

RadarConfig small_cfg(std::size_t n, std::size_t t, std::vector<double> dirs) {
  RadarConfig cfg;
  cfg.num_antennas = n;
  cfg.num_samples = t;
  cfg.directions = std::move(dirs);
  cfg.passband_lo = -static_cast<long>(t / 4);
  cfg.passband_hi = static_cast<long>(t / 4);
  return cfg;
}

}  // namespace

TEST_CASE("steering: broadside gives the all-ones vector") {
  auto cfg = small_cfg(4, 8, {std::numbers::pi / 2});
  for (long m : {-4L, 0L, 3L}) {
    auto a = steering_vector(m, std::numbers::pi / 2, cfg);
    for (const auto& v : a) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("steering: endfire limit at m=0 alternates sign") {
  auto cfg = small_cfg(2, 8, {1.0});
  // cos(1e-9) rounds to 1.0, the phi -> 0+ limit
  auto a = steering_vector(0, 1e-9, cfg);
  CHECK(std::abs(a[0] - cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(a[1] - cplx(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("steering: entry phases match an independent evaluation") {
  RadarConfig cfg;
  cfg.num_antennas = 128;
  cfg.num_samples = 1024;
  cfg.center_freq_hz = 77e9;
  cfg.sample_interval_s = 0.5e-9;
  cfg.directions = {std::numbers::pi / 3};
  const long m = 256;
  auto a = steering_vector(m, std::numbers::pi / 3, cfg);
  REQUIRE(a.size() == 128);
  CHECK(a[0] == cplx(1.0, 0.0));
  for (std::size_t n = 0; n < a.size(); n += 17) {
    // independent long-double evaluation of the phase
    const long double rel = 256.0L / (1024.0L * 0.5e-9L * 77e9L);
    const long double phase = -std::numbers::pi_v<long double> *
                              std::cos((long double)std::numbers::pi / 3) *
                              (long double)n * (rel + 1.0L);
    const cplx want(static_cast<double>(std::cos(phase)),
                    static_cast<double>(std::sin(phase)));
    CHECK(std::abs(a[n] - want) < 1e-10);
  }
}

TEST_CASE("steering: out-of-range frequency index") {
  auto cfg = small_cfg(2, 8, {1.0});
  CHECK_THROWS_AS(steering_vector(4, 1.0, cfg), std::out_of_range);
  CHECK_THROWS_AS(steering_vector(-5, 1.0, cfg), std::out_of_range);
}

TEST_CASE("steering set: single broadside direction is all ones") {
  auto cfg = small_cfg(4, 8, {std::numbers::pi / 2});
  auto set = build_steering_set(cfg);
  for (long m = freq_lo(8); m < freq_hi(8); ++m) {
    for (const auto& v : set.matrix(m)) {
      CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("steering set: mirrored directions conjugate each other") {
  const double phi = 1.1;
  auto cfg = small_cfg(4, 8, {phi, std::numbers::pi - phi});
  auto set = build_steering_set(cfg);
  for (long m = freq_lo(8); m < freq_hi(8); ++m) {
    auto r0 = set.row(m, 0);
    auto r1 = set.row(m, 1);
    for (std::size_t n = 0; n < r0.size(); ++n) {
      CHECK(std::abs(r1[n] - std::conj(r0[n])) < 1e-12);
    }
  }
}

TEST_CASE("steering set: paper shape and unit modulus") {
  RadarConfig cfg;
  cfg.num_antennas = 128;
  cfg.num_samples = 1024;
  for (int k = 1; k <= 10; ++k) cfg.directions.push_back(std::numbers::pi * k / 11.0);
  auto set = build_steering_set(cfg);
  CHECK(set.num_samples() == 1024);
  CHECK(set.num_directions() == 10);
  CHECK(set.num_antennas() == 128);
  double worst = 0.0;
  for (long m : {-512L, -100L, 0L, 511L}) {
    for (std::size_t k = 0; k < 10; ++k) {
      auto row = set.row(m, k);
      CHECK(row[0] == cplx(1.0, 0.0));
      for (const auto& v : row) {
        worst = std::max(worst, std::abs(std::abs(v) - 1.0));
      }
    }
  }
  CHECK(worst <= 1e-12);
}
