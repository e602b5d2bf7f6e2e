#include "synth/config.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "kernels/kernels_detail.hpp"

namespace synth {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

const RadarConfig& validate_config(const RadarConfig& cfg) {
  if (cfg.num_antennas == 0) {
    throw ConfigError("num_antennas: must be a positive integer");
  }
  if (!is_power_of_two(cfg.num_samples)) {
    throw ConfigError("num_samples: not a power of two (" +
                      std::to_string(cfg.num_samples) + ")");
  }
  if (!(cfg.center_freq_hz > 0.0) || !std::isfinite(cfg.center_freq_hz)) {
    throw ConfigError("center_freq_hz: must be positive and finite");
  }
  if (!(cfg.sample_interval_s > 0.0) || !std::isfinite(cfg.sample_interval_s)) {
    throw ConfigError("sample_interval_s: must be positive and finite");
  }
  if (cfg.dac_bits < 1 || cfg.dac_bits > 16) {
    throw ConfigError("dac_bits: must be in [1, 16] (" + std::to_string(cfg.dac_bits) +
                      ")");
  }
  const std::size_t k = cfg.num_directions();
  if (k == 0) {
    throw ConfigError("directions: at least one probing direction required");
  }
  if (k > cfg.num_antennas) {
    throw ConfigError("directions: more directions than antennas (K=" +
                      std::to_string(k) + " > N=" + std::to_string(cfg.num_antennas) +
                      ")");
  }
  for (double phi : cfg.directions) {
    if (!(phi > 0.0) || !(phi < std::numbers::pi)) {
      throw ConfigError("directions: angle " + fmt_double(phi) +
                        " outside open interval (0, pi)");
    }
  }
  std::set<double> uniq(cfg.directions.begin(), cfg.directions.end());
  if (uniq.size() != k) {
    throw ConfigError("directions: duplicate angles");
  }
  if (!(cfg.damping >= 0.0) || !(cfg.damping < 1.0)) {
    throw ConfigError("damping: must lie in [0, 1) (" + fmt_double(cfg.damping) + ")");
  }
  if (cfg.alpha >= 0.0 && !std::isfinite(cfg.alpha)) {
    throw ConfigError("alpha: must be finite");
  }
  if (cfg.max_iters == 0) {
    throw ConfigError("max_iters: must be a positive integer");
  }
  if (!(cfg.rel_tol > 0.0) || !std::isfinite(cfg.rel_tol)) {
    throw ConfigError("rel_tol: must be positive and finite");
  }
  if (cfg.passband_lo >= cfg.passband_hi) {
    throw ConfigError("passband: empty interval [" + std::to_string(cfg.passband_lo) +
                      ", " + std::to_string(cfg.passband_hi) + ")");
  }
  if (cfg.passband_lo < freq_lo(cfg.num_samples) ||
      cfg.passband_hi > freq_hi(cfg.num_samples)) {
    throw ConfigError("passband: outside frequency range [" +
                      std::to_string(freq_lo(cfg.num_samples)) + ", " +
                      std::to_string(freq_hi(cfg.num_samples)) + ")");
  }
  return cfg;
}

Constellation::Constellation(unsigned bits) : bits_(bits) {
  if (bits < 1 || bits > 16) {
    throw ConfigError("dac_bits: must be in [1, 16] (" + std::to_string(bits) + ")");
  }
  const std::size_t np = std::size_t{1} << bits;
  points_.resize(np);
  if (bits == 1) {
    points_[0] = cplx(0.0, 1.0);
    points_[1] = cplx(0.0, -1.0);
  } else {
    // First quadrant from polar, second by exact reflection, lower half by
    // exact negation: keeps the alphabet bit-symmetric.
    const std::size_t quarter = np / 4;
    for (std::size_t l = 0; l < quarter; ++l) {
      double phase = (2.0 * std::numbers::pi / static_cast<double>(np)) *
                     (static_cast<double>(l) + 0.5);
      points_[l] = std::polar(1.0, phase);
    }
    for (std::size_t l = 0; l < quarter; ++l) {
      const cplx p = points_[l];
      points_[np / 2 - 1 - l] = cplx(-p.real(), p.imag());
    }
    for (std::size_t l = 0; l < np / 2; ++l) {
      points_[l + np / 2] = -points_[l];
    }
  }
  re_.resize(np);
  im_.resize(np);
  for (std::size_t l = 0; l < np; ++l) {
    re_[l] = points_[l].real();
    im_[l] = points_[l].imag();
  }
}

std::size_t Constellation::nearest_index(cplx v) const {
  return kernels::detail::prox_index_elem(v.real(), v.imag(), re_.data(), im_.data(),
                                          static_cast<std::uint32_t>(points_.size()));
}

Constellation build_constellation(unsigned bits) { return Constellation(bits); }

double DesiredPattern::total() const {
  double acc = 0.0;
  for (double v : d) acc += v;
  return acc;
}

std::size_t DesiredPattern::nonzero_count() const {
  std::size_t c = 0;
  for (double v : d) c += v != 0.0 ? 1 : 0;
  return c;
}

DesiredPattern build_flat_pattern(const RadarConfig& cfg, double intensity) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw ConfigError("intensity: must be positive and finite");
  }
  DesiredPattern p;
  p.num_directions = cfg.num_directions();
  p.num_samples = cfg.num_samples;
  p.d.assign(p.num_directions * p.num_samples, 0.0);
  for (long m = cfg.passband_lo; m < cfg.passband_hi; ++m) {
    for (std::size_t k = 0; k < p.num_directions; ++k) {
      p.at(m, k) = intensity;
    }
  }
  return p;
}

}
