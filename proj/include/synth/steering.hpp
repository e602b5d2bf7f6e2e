#pragma once

#include <span>
#include <vector>

#include "synth/config.hpp"

namespace synth {

// Broadband ULA response toward phi at centered bin m: entry n is
// e^{-j pi cos(phi) n (m/(T Ts fc) + 1)}. Throws std::out_of_range for m
// outside the bin range.
std::vector<cplx> steering_vector(long m, double phi, const RadarConfig& cfg);

// All T per-frequency K x N response matrices; row k of A[m] is the
// steering vector toward direction k, transposed.
class SteeringMatrixSet {
 public:
  SteeringMatrixSet(std::size_t num_samples, std::size_t num_directions,
                    std::size_t num_antennas)
      : T_(num_samples),
        K_(num_directions),
        N_(num_antennas),
        data_(T_ * K_ * N_) {}

  std::size_t num_samples() const { return T_; }
  std::size_t num_directions() const { return K_; }
  std::size_t num_antennas() const { return N_; }

  // K x N row-major block for centered bin m
  std::span<const cplx> matrix(long m) const {
    return {data_.data() + freq_pos(m, T_) * K_ * N_, K_ * N_};
  }
  std::span<const cplx> row(long m, std::size_t k) const {
    return {data_.data() + (freq_pos(m, T_) * K_ + k) * N_, N_};
  }
  cplx* mutable_matrix(long m) { return data_.data() + freq_pos(m, T_) * K_ * N_; }

 private:
  std::size_t T_, K_, N_;
  std::vector<cplx> data_;
};

SteeringMatrixSet build_steering_set(const RadarConfig& cfg);

}
