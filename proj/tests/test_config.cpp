#include <cmath>
#include <numbers>

#include <doctest.h>

#include "synth/config.hpp"

using namespace synth;

namespace {

RadarConfig paper_defaults() {
  RadarConfig cfg;
  cfg.num_antennas = 128;
  cfg.num_samples = 1024;
  cfg.center_freq_hz = 77e9;
  cfg.sample_interval_s = 0.5e-9;
  cfg.dac_bits = 2;
  cfg.damping = 0.3;
  for (int k = 1; k <= 10; ++k) {
    cfg.directions.push_back(std::numbers::pi * k / 11.0);
  }
  cfg.passband_lo = -256;
  cfg.passband_hi = 256;
  return cfg;
}

}  // namespace

TEST_CASE("constellation: b=2 is QPSK rotated by pi/4") {
  const Constellation c = build_constellation(2);
  REQUIRE(c.size() == 4);
  for (int l = 0; l < 4; ++l) {
    const double phase = std::numbers::pi / 4.0 * (2 * l + 1);
    CHECK(std::abs(c.point(l) - std::polar(1.0, phase)) < 1e-15);
  }
}

TEST_CASE("constellation: b=1 is {+j, -j}") {
  const Constellation c = build_constellation(1);
  REQUIRE(c.size() == 2);
  CHECK(c.point(0) == cplx(0.0, 1.0));
  CHECK(c.point(1) == cplx(0.0, -1.0));
}

TEST_CASE("constellation: b=3 phases are pi/8 + l*pi/4 with uniform gaps") {
  const Constellation c = build_constellation(3);
  REQUIRE(c.size() == 8);
  for (int l = 0; l < 8; ++l) {
    const double expect = std::numbers::pi / 8.0 + l * std::numbers::pi / 4.0;
    CHECK(std::abs(c.point(l) - std::polar(1.0, expect)) < 1e-15);
  }
  for (int l = 0; l < 8; ++l) {
    const cplx a = c.point(l);
    const cplx b = c.point((l + 1) % 8);
    // adjacent gap: arg(b * conj(a)) == 2pi/8
    const double gap = std::arg(b * std::conj(a));
    const double want = 2.0 * std::numbers::pi / 8.0;
    CHECK(std::abs(std::remainder(gap - want, 2.0 * std::numbers::pi)) < 1e-12);
  }
}

TEST_CASE("constellation: invariants across b") {
  for (unsigned b = 1; b <= 10; ++b) {
    CAPTURE(b);
    const Constellation c = build_constellation(b);
    REQUIRE(c.size() == (std::size_t{1} << b));
    cplx sum = 0.0;
    double prev_phase = -std::numbers::pi;
    for (std::size_t l = 0; l < c.size(); ++l) {
      CHECK(std::abs(std::abs(c.point(l)) - 1.0) <= 1e-15);
      sum += c.point(l);
      // sorted by phase in [0, 2pi): unwrap against previous
      const double ph = std::arg(c.point(l));
      const double ph_pos = ph < 0 ? ph + 2.0 * std::numbers::pi : ph;
      CHECK(ph_pos > prev_phase);
      prev_phase = ph_pos;
      // never on the real axis; off the imaginary axis for b >= 2
      CHECK(c.point(l).imag() != 0.0);
      if (b >= 2) CHECK(c.point(l).real() != 0.0);
    }
    CHECK(std::abs(sum) <= 1e-13 * static_cast<double>(c.size()));
    // antipodal pairs cancel bit-for-bit
    for (std::size_t l = 0; l < c.size() / 2; ++l) {
      CHECK(c.point(l) + c.point(l + c.size() / 2) == cplx(0.0, 0.0));
    }
  }
}

TEST_CASE("constellation: bits out of range") {
  CHECK_THROWS_AS(build_constellation(0), ConfigError);
  CHECK_THROWS_AS(build_constellation(17), ConfigError);
  CHECK(build_constellation(16).size() == 65536);
}

TEST_CASE("flat pattern: blocks per frequency") {
  RadarConfig cfg;
  cfg.num_antennas = 2;
  cfg.num_samples = 8;
  cfg.directions = {1.0, 2.0};
  cfg.passband_lo = -2;
  cfg.passband_hi = 2;
  validate_config(cfg);
  const DesiredPattern p = build_flat_pattern(cfg, 1.0);
  REQUIRE(p.size() == 16);
  for (long m = -4; m < 4; ++m) {
    for (std::size_t k = 0; k < 2; ++k) {
      const double want = (m >= -2 && m < 2) ? 1.0 : 0.0;
      CHECK(p.at(m, k) == want);
    }
  }
}

TEST_CASE("flat pattern: full band is all ones") {
  RadarConfig cfg;
  cfg.num_antennas = 1;
  cfg.num_samples = 4;
  cfg.directions = {1.0};
  cfg.passband_lo = -2;
  cfg.passband_hi = 2;
  const DesiredPattern p = build_flat_pattern(cfg, 1.0);
  REQUIRE(p.size() == 4);
  for (double v : p.d) CHECK(v == 1.0);
}

TEST_CASE("flat pattern: paper-scale nonzero count is 512*K of K*T") {
  RadarConfig cfg = paper_defaults();
  const DesiredPattern p = build_flat_pattern(cfg, 1.0);
  CHECK(p.size() == 10240);
  CHECK(p.nonzero_count() == 5120);
}

TEST_CASE("flat pattern: nonzero count property") {
  for (std::size_t t : {4, 16, 64}) {
    RadarConfig cfg;
    cfg.num_antennas = 4;
    cfg.num_samples = t;
    cfg.directions = {0.7, 1.1, 2.0};
    cfg.passband_lo = -static_cast<long>(t / 4);
    cfg.passband_hi = static_cast<long>(t / 8) + 1;
    const DesiredPattern p = build_flat_pattern(cfg, 2.5);
    CHECK(p.nonzero_count() ==
          cfg.directions.size() *
              static_cast<std::size_t>(cfg.passband_hi - cfg.passband_lo));
  }
}

TEST_CASE("validate: paper defaults pass and validation is idempotent") {
  RadarConfig cfg = paper_defaults();
  CHECK_NOTHROW(validate_config(cfg));
  CHECK_NOTHROW(validate_config(validate_config(cfg)));
}

TEST_CASE("validate: named rejections") {
  RadarConfig good = paper_defaults();

  SUBCASE("damping at 1.0 is out of the half-open interval") {
    good.damping = 1.0;
    CHECK_THROWS_WITH_AS(validate_config(good),
                         doctest::Contains("damping"), ConfigError);
  }
  SUBCASE("non-power-of-two sample count") {
    good.num_samples = 1000;
    CHECK_THROWS_WITH_AS(validate_config(good),
                         doctest::Contains("power of two"), ConfigError);
  }
  SUBCASE("empty passband") {
    good.passband_lo = 5;
    good.passband_hi = 5;
    CHECK_THROWS_WITH_AS(validate_config(good), doctest::Contains("passband"),
                         ConfigError);
  }
  SUBCASE("passband outside range") {
    good.passband_hi = 513;
    CHECK_THROWS_WITH_AS(validate_config(good), doctest::Contains("passband"),
                         ConfigError);
  }
  SUBCASE("duplicate angles") {
    good.directions[3] = good.directions[7];
    CHECK_THROWS_WITH_AS(validate_config(good), doctest::Contains("duplicate"),
                         ConfigError);
  }
  SUBCASE("more directions than antennas") {
    good.num_antennas = 4;
    CHECK_THROWS_WITH_AS(validate_config(good), doctest::Contains("antennas"),
                         ConfigError);
  }
  SUBCASE("angle outside (0, pi)") {
    good.directions[0] = 0.0;
    CHECK_THROWS_AS(validate_config(good), ConfigError);
  }
}

TEST_CASE("frequency indexing: centered storage round-trip") {
  for (std::size_t t : {1, 2, 4, 1024}) {
    for (long m = freq_lo(t); m < freq_hi(t); ++m) {
      CHECK(freq_index(freq_pos(m, t), t) == m);
    }
    CHECK(freq_hi(t) - freq_lo(t) == static_cast<long>(t));
  }
}
