#pragma once

#include <span>
#include <vector>

#include "synth/config.hpp"
#include "synth/steering.hpp"

namespace synth {

// The structured radiated-field map: block-diagonal per-frequency steering
// matrices composed with the centered unitary DFT applied per antenna.
// Input vectors are time-major (x[t*N + n]), outputs frequency-major
// (y[p*K + k]). A mutable complex scale factor multiplies the forward map;
// its conjugate multiplies the adjoint; its squared magnitude enters the
// uniform magnitude-squared reductions. Every entry of the unscaled map
// has squared modulus exactly 1/T.
class BeamOperator {
 public:
  BeamOperator(const RadarConfig& cfg, SteeringMatrixSet steering);

  std::size_t rows() const { return cfg_.num_directions() * cfg_.num_samples; }
  std::size_t cols() const { return cfg_.num_antennas * cfg_.num_samples; }
  const RadarConfig& config() const { return cfg_; }
  const SteeringMatrixSet& steering() const { return steering_; }

  cplx beta() const { return beta_; }
  void set_beta(cplx b) { beta_ = b; }

  // y = beta * B * x
  void forward(std::span<const cplx> x, std::span<cplx> y) const;
  // y = B * x
  void forward_unscaled(std::span<const cplx> x, std::span<cplx> y) const;
  // out = conj(beta) * B^H * z
  void adjoint(std::span<const cplx> z, std::span<cplx> out) const;

  // out_j = (|beta|^2 / T) * sum_i f_prime_i for every j (length K*T);
  // exact because |B_ji|^2 == 1/T for all entries.
  void magsq_forward_sum(std::span<const double> f_prime, std::span<double> out) const;
  // symmetric sibling, K*T -> N*T
  void magsq_adjoint_sum(std::span<const double> g_prime, std::span<double> out) const;

  // Explicit unscaled matrix, row-major rows() x cols(). Throws
  // std::length_error when cols() exceeds col_cap.
  std::vector<cplx> materialize_dense(std::size_t col_cap = 4096) const;

  // Test hook: flips the DFT sign in the forward path only, breaking
  // forward/adjoint consistency on purpose.
  void corrupt_forward_dft_sign(bool enable) { corrupt_forward_ = enable; }

 private:
  void apply_forward(std::span<const cplx> x, std::span<cplx> y, cplx scale_by) const;

  RadarConfig cfg_;
  SteeringMatrixSet steering_;
  cplx beta_{1.0, 0.0};
  bool corrupt_forward_ = false;
};

// Convenience: steering set built from cfg.
BeamOperator make_beam_operator(const RadarConfig& cfg);

}
