#include "synth/steering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "synth/parallel.hpp"

namespace synth {

std::vector<cplx> steering_vector(long m, double phi, const RadarConfig& cfg) {
  const std::size_t T = cfg.num_samples;
  if (m < freq_lo(T) || m >= freq_hi(T)) {
    throw std::out_of_range("frequency index " + std::to_string(m) +
                            " outside [" + std::to_string(freq_lo(T)) + ", " +
                            std::to_string(freq_hi(T)) + ")");
  }
  const double rel = static_cast<double>(m) /
                     (static_cast<double>(T) * cfg.sample_interval_s * cfg.center_freq_hz);
  const double slope = -std::numbers::pi * std::cos(phi) * (rel + 1.0);
  std::vector<cplx> a(cfg.num_antennas);
  for (std::size_t n = 0; n < cfg.num_antennas; ++n) {
    a[n] = std::polar(1.0, slope * static_cast<double>(n));
  }
  return a;
}

SteeringMatrixSet build_steering_set(const RadarConfig& cfg) {
  const std::size_t T = cfg.num_samples;
  const std::size_t K = cfg.num_directions();
  const std::size_t N = cfg.num_antennas;
  SteeringMatrixSet set(T, K, N);
  parallel_for(T, [&](std::size_t p) {
    const long m = freq_index(p, T);
    cplx* block = set.mutable_matrix(m);
    for (std::size_t k = 0; k < K; ++k) {
      auto a = steering_vector(m, cfg.directions[k], cfg);
      for (std::size_t n = 0; n < N; ++n) block[k * N + n] = a[n];
    }
  });
  return set;
}

}
