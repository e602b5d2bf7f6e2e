#pragma once

#include <span>
#include <vector>

#include "synth/config.hpp"
#include "synth/steering.hpp"

namespace synth {

inline constexpr double kDbFloor = -120.0;

// 10 log10 with the floor applied to the ratio argument.
double to_db_power(double linear_ratio);

// Per-bin transmit power averaged over antennas, centered bin order,
// linear scale: psd[p] = (1/N) sum_n |X_n[m_p]|^2.
std::vector<double> psd_linear(std::span<const cplx> x, const RadarConfig& cfg);
std::vector<double> psd_db(std::span<const cplx> x, const RadarConfig& cfg);

// 10 log10(mean passband / mean stopband) of the linear psd.
double oob_suppression_db(std::span<const double> psd, const RadarConfig& cfg);

// Frequency- and time-domain fields radiated toward each configured
// direction; time rows are the inverse centered DFT of the frequency rows.
struct DirectionalWaveforms {
  std::size_t num_directions = 0;  // K
  std::size_t num_samples = 0;     // T
  std::vector<cplx> freq;          // K x T row-major, row k = Y_k over bins
  std::vector<cplx> time;          // K x T row-major, row k = y_k over samples

  std::span<const cplx> freq_row(std::size_t k) const {
    return {freq.data() + k * num_samples, num_samples};
  }
  std::span<const cplx> time_row(std::size_t k) const {
    return {time.data() + k * num_samples, num_samples};
  }
};

DirectionalWaveforms directional_waveforms(std::span<const cplx> x,
                                           const RadarConfig& cfg,
                                           const SteeringMatrixSet& steering);

// r[tau] = sum_t a[t] conj(b[(t - tau) mod T]), computed in the DFT domain;
// length must be a power of two.
std::vector<cplx> circular_correlation(std::span<const cplx> a, std::span<const cplx> b);

// Circular correlations r_kl[tau] = sum_t y_k[t] conj(y_l[(t - tau) mod T]),
// normalized and expressed as 20 log10 of magnitude with the dB floor.
// Autocorrelations normalize by their own r_kk[0], so lag 0 is exactly 0 dB;
// cross pairs normalize by sqrt(r_kk[0] r_ll[0]). cross_db holds all ordered
// pairs (k, l), k*K + l, including the diagonal.
struct CorrelationSet {
  std::size_t num_directions = 0;
  std::size_t num_samples = 0;
  std::vector<double> auto_db;   // K x T
  std::vector<double> cross_db;  // K x K x T

  double auto_at(std::size_t k, std::size_t tau) const {
    return auto_db[k * num_samples + tau];
  }
  double cross_at(std::size_t k, std::size_t l, std::size_t tau) const {
    return cross_db[(k * num_directions + l) * num_samples + tau];
  }
};

// Throws std::domain_error when a waveform has zero energy.
CorrelationSet correlations(const DirectionalWaveforms& w);

// max over k != l and all lags
double peak_crosscorr_db(const CorrelationSet& c);
// max over k and lags tau != 0
double peak_autocorr_sidelobe_db(const CorrelationSet& c);

// Radiated power versus angle, P(phi) = sum_m |a(m,phi)^T X_F[m]|^2,
// max-normalized, in dB. This pattern definition is this library's
// reconstruction; it is recorded in run manifests.
std::vector<double> radiation_pattern_db(std::span<const cplx> x, const RadarConfig& cfg,
                                         std::span<const double> angle_grid);

std::vector<double> default_angle_grid(std::size_t size = 1024);

struct MetricsReport {
  std::vector<double> psd_db_values;      // length T
  CorrelationSet corr;
  std::vector<double> pattern_db_values;  // over the angle grid
  std::vector<double> angle_grid;
  double oob_db = 0.0;
  double peak_cross_db = 0.0;
  double peak_auto_sidelobe_db = 0.0;
};

MetricsReport compute_metrics(std::span<const cplx> x, const RadarConfig& cfg,
                              const SteeringMatrixSet& steering,
                              std::size_t pattern_grid_size = 1024);

}
