#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace synth {

using cplx = std::complex<double>;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Physical and algorithmic parameters of one synthesis problem. Immutable
// after validation; validation is explicit so that reference/test paths can
// build degenerate shapes the fast path rejects.
struct RadarConfig {
  std::size_t num_antennas = 0;        // N
  std::size_t num_samples = 0;         // T, power of two for the fast path
  double center_freq_hz = 77e9;        // f_c
  double sample_interval_s = 0.5e-9;   // T_s
  unsigned dac_bits = 2;               // b
  std::vector<double> directions;      // phi_k in radians, each in (0, pi)
  double damping = 0.3;                // mu in [0, 1)
  double alpha = -1.0;                 // regularization; < 0 means "use K*T"
  std::size_t max_iters = 200;
  double rel_tol = 1e-4;
  long passband_lo = 0;                // half-open [lo, hi) in centered bin index
  long passband_hi = 0;
  std::int64_t seed = 1;

  std::size_t num_directions() const { return directions.size(); }
  double resolved_alpha() const {
    return alpha < 0.0 ? static_cast<double>(num_directions() * num_samples) : alpha;
  }
};

// Centered frequency indexing: m runs over [-floor(T/2), T - floor(T/2)),
// stored at position m + floor(T/2). For even T this is [-T/2, T/2).
inline long freq_lo(std::size_t T) { return -static_cast<long>(T / 2); }
inline long freq_hi(std::size_t T) { return static_cast<long>(T - T / 2); }
inline std::size_t freq_pos(long m, std::size_t T) {
  return static_cast<std::size_t>(m + static_cast<long>(T / 2));
}
inline long freq_index(std::size_t pos, std::size_t T) {
  return static_cast<long>(pos) - static_cast<long>(T / 2);
}

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Throws ConfigError naming the violated invariant; returns cfg unchanged.
const RadarConfig& validate_config(const RadarConfig& cfg);

// The b-bit phase-only DAC alphabet: 2^b unit-modulus points at phases
// (2l+1)*pi/2^b, l ascending. Built with exact quadrant reflection so
// antipodal pairs cancel bit-for-bit and phase ties resolve consistently.
class Constellation {
 public:
  explicit Constellation(unsigned bits);

  unsigned bits() const { return bits_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<cplx>& points() const { return points_; }
  cplx point(std::size_t l) const { return points_[l]; }
  const double* re_table() const { return re_.data(); }
  const double* im_table() const { return im_.data(); }

  // Nearest point by squared distance, lowest-index tie break.
  std::size_t nearest_index(cplx v) const;
  cplx nearest(cplx v) const { return points_[nearest_index(v)]; }

 private:
  unsigned bits_;
  std::vector<cplx> points_;
  std::vector<double> re_, im_;
};

// 1 <= b <= 16; throws ConfigError otherwise.
Constellation build_constellation(unsigned bits);

// Desired beampattern intensities, frequency-major: entry j = p*K + k is
// the target for direction k at centered bin position p.
struct DesiredPattern {
  std::size_t num_directions = 0;  // K
  std::size_t num_samples = 0;     // T
  std::vector<double> d;           // length K*T, all entries >= 0

  std::size_t size() const { return d.size(); }
  double& at(long m, std::size_t k) {
    return d[freq_pos(m, num_samples) * num_directions + k];
  }
  double at(long m, std::size_t k) const {
    return d[freq_pos(m, num_samples) * num_directions + k];
  }
  double total() const;
  std::size_t nonzero_count() const;
};

// intensity on every direction for passband bins, zero elsewhere.
DesiredPattern build_flat_pattern(const RadarConfig& cfg, double intensity);

}
