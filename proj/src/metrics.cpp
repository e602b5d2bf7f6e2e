#include "synth/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "synth/fft.hpp"
#include "synth/kernels.hpp"
#include "synth/parallel.hpp"

namespace synth {

namespace {

constexpr double kFloorMag = 1e-6;  // 20 log10 -> -120 dB

double to_db_mag(double mag) { return 20.0 * std::log10(std::max(mag, kFloorMag)); }

std::vector<cplx> spectrum_rows(std::span<const cplx> x, const RadarConfig& cfg) {
  std::vector<cplx> work(x.begin(), x.end());
  fft_rows_centered_forward(work.data(), cfg.num_samples, cfg.num_antennas);
  return work;
}

}  // namespace

double to_db_power(double linear_ratio) {
  return std::max(10.0 * std::log10(std::max(linear_ratio, 0.0)), kDbFloor);
}

std::vector<double> psd_linear(std::span<const cplx> x, const RadarConfig& cfg) {
  const std::size_t T = cfg.num_samples;
  const std::size_t N = cfg.num_antennas;
  if (x.size() != T * N) throw std::invalid_argument("psd: length mismatch");
  auto spec = spectrum_rows(x, cfg);
  const auto& k = kernels::active_kernels();
  std::vector<double> psd(T);
  for (std::size_t p = 0; p < T; ++p) {
    psd[p] = k.sumsq(spec.data() + p * N, N) / static_cast<double>(N);
  }
  return psd;
}

std::vector<double> psd_db(std::span<const cplx> x, const RadarConfig& cfg) {
  auto lin = psd_linear(x, cfg);
  std::vector<double> db(lin.size());
  for (std::size_t i = 0; i < lin.size(); ++i) db[i] = to_db_power(lin[i]);
  return db;
}

double oob_suppression_db(std::span<const double> psd, const RadarConfig& cfg) {
  const std::size_t T = cfg.num_samples;
  double pass = 0.0, stop = 0.0;
  std::size_t npass = 0, nstop = 0;
  for (std::size_t p = 0; p < T; ++p) {
    const long m = freq_index(p, T);
    if (m >= cfg.passband_lo && m < cfg.passband_hi) {
      pass += psd[p];
      ++npass;
    } else {
      stop += psd[p];
      ++nstop;
    }
  }
  if (npass == 0 || nstop == 0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10((pass / npass) / (stop / nstop));
}

DirectionalWaveforms directional_waveforms(std::span<const cplx> x,
                                           const RadarConfig& cfg,
                                           const SteeringMatrixSet& steering) {
  const std::size_t T = cfg.num_samples;
  const std::size_t N = cfg.num_antennas;
  const std::size_t K = cfg.num_directions();
  if (x.size() != T * N) {
    throw std::invalid_argument("directional_waveforms: length mismatch");
  }
  auto spec = spectrum_rows(x, cfg);
  const auto& ker = kernels::active_kernels();

  DirectionalWaveforms w;
  w.num_directions = K;
  w.num_samples = T;
  w.freq.resize(K * T);
  w.time.resize(K * T);
  std::vector<cplx> yk(K);
  for (std::size_t p = 0; p < T; ++p) {
    ker.cgemv(steering.matrix(freq_index(p, T)).data(), spec.data() + p * N, yk.data(),
              K, N);
    for (std::size_t k = 0; k < K; ++k) w.freq[k * T + p] = yk[k];
  }
  w.time = w.freq;
  for (std::size_t k = 0; k < K; ++k) {
    fft_rows_centered_inverse(w.time.data() + k * T, T, 1);
  }
  return w;
}

std::vector<cplx> circular_correlation(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t T = a.size();
  if (b.size() != T) throw std::invalid_argument("circular_correlation: length mismatch");
  if (!is_power_of_two(T)) {
    throw std::invalid_argument("circular_correlation: length must be a power of two");
  }
  std::vector<cplx> fa(a.begin(), a.end());
  std::vector<cplx> fb(b.begin(), b.end());
  fft_rows_centered_forward(fa.data(), T, 1);
  fft_rows_centered_forward(fb.data(), T, 1);
  std::vector<cplx> prod(T);
  for (std::size_t p = 0; p < T; ++p) prod[p] = fa[p] * std::conj(fb[p]);
  fft_rows_centered_inverse(prod.data(), T, 1);
  const double rt = std::sqrt(static_cast<double>(T));
  for (auto& v : prod) v *= rt;
  return prod;
}

CorrelationSet correlations(const DirectionalWaveforms& w) {
  const std::size_t K = w.num_directions;
  const std::size_t T = w.num_samples;

  CorrelationSet out;
  out.num_directions = K;
  out.num_samples = T;
  out.auto_db.resize(K * T);
  out.cross_db.resize(K * K * T);

  std::vector<std::vector<cplx>> autos(K);
  std::vector<double> r0(K);
  for (std::size_t k = 0; k < K; ++k) {
    autos[k] = circular_correlation(w.time_row(k), w.time_row(k));
    r0[k] = std::abs(autos[k][0]);
    if (r0[k] == 0.0) {
      throw std::domain_error("correlations: zero-energy waveform for direction " +
                              std::to_string(k + 1));
    }
  }

  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t l = 0; l < K; ++l) {
      const auto r = k == l ? autos[k] : circular_correlation(w.time_row(k), w.time_row(l));
      const double denom = k == l ? r0[k] : std::sqrt(r0[k] * r0[l]);
      for (std::size_t tau = 0; tau < T; ++tau) {
        out.cross_db[(k * K + l) * T + tau] = to_db_mag(std::abs(r[tau]) / denom);
      }
    }
    for (std::size_t tau = 0; tau < T; ++tau) {
      out.auto_db[k * T + tau] = out.cross_db[(k * K + k) * T + tau];
    }
  }
  return out;
}

double peak_crosscorr_db(const CorrelationSet& c) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.num_directions; ++k) {
    for (std::size_t l = 0; l < c.num_directions; ++l) {
      if (k == l) continue;
      for (std::size_t tau = 0; tau < c.num_samples; ++tau) {
        peak = std::max(peak, c.cross_at(k, l, tau));
      }
    }
  }
  return peak;
}

double peak_autocorr_sidelobe_db(const CorrelationSet& c) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.num_directions; ++k) {
    for (std::size_t tau = 1; tau < c.num_samples; ++tau) {
      peak = std::max(peak, c.auto_at(k, tau));
    }
  }
  return peak;
}

std::vector<double> radiation_pattern_db(std::span<const cplx> x, const RadarConfig& cfg,
                                         std::span<const double> angle_grid) {
  const std::size_t T = cfg.num_samples;
  const std::size_t N = cfg.num_antennas;
  if (angle_grid.empty()) {
    throw std::invalid_argument("radiation_pattern: empty angle grid");
  }
  auto spec = spectrum_rows(x, cfg);

  std::vector<double> power(angle_grid.size());
  parallel_for_blocks(angle_grid.size(), 8, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t g = lo; g < hi; ++g) {
      const double cphi = std::cos(angle_grid[g]);
      double acc = 0.0;
      for (std::size_t p = 0; p < T; ++p) {
        const long m = freq_index(p, T);
        const double rel =
            static_cast<double>(m) /
            (static_cast<double>(T) * cfg.sample_interval_s * cfg.center_freq_hz);
        const cplx step = std::polar(1.0, -std::numbers::pi * cphi * (rel + 1.0));
        cplx phase(1.0, 0.0);
        cplx dot(0.0, 0.0);
        const cplx* row = spec.data() + p * N;
        for (std::size_t n = 0; n < N; ++n) {
          dot += phase * row[n];
          phase *= step;
        }
        acc += std::norm(dot);
      }
      power[g] = acc;
    }
  });

  double peak = 0.0;
  for (double v : power) peak = std::max(peak, v);
  std::vector<double> db(power.size());
  for (std::size_t g = 0; g < power.size(); ++g) {
    db[g] = peak > 0.0 ? to_db_power(power[g] / peak) : kDbFloor;
  }
  return db;
}

std::vector<double> default_angle_grid(std::size_t size) {
  std::vector<double> grid(size);
  for (std::size_t i = 0; i < size; ++i) {
    grid[i] = std::numbers::pi * (static_cast<double>(i) + 0.5) /
              static_cast<double>(size);
  }
  return grid;
}

MetricsReport compute_metrics(std::span<const cplx> x, const RadarConfig& cfg,
                              const SteeringMatrixSet& steering,
                              std::size_t pattern_grid_size) {
  MetricsReport r;
  auto lin = psd_linear(x, cfg);
  r.psd_db_values.resize(lin.size());
  for (std::size_t i = 0; i < lin.size(); ++i) r.psd_db_values[i] = to_db_power(lin[i]);
  r.oob_db = oob_suppression_db(lin, cfg);
  auto w = directional_waveforms(x, cfg, steering);
  r.corr = correlations(w);
  r.peak_cross_db = peak_crosscorr_db(r.corr);
  r.peak_auto_sidelobe_db = peak_autocorr_sidelobe_db(r.corr);
  r.angle_grid = default_angle_grid(pattern_grid_size);
  r.pattern_db_values = radiation_pattern_db(x, cfg, r.angle_grid);
  return r;
}

}
