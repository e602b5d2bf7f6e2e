#include "synth/beam_operator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "synth/fft.hpp"
#include "synth/kernels.hpp"
#include "synth/parallel.hpp"

namespace synth {

namespace {

void check_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(got) +
                                ", expected " + std::to_string(want));
  }
}

}  // namespace

BeamOperator::BeamOperator(const RadarConfig& cfg, SteeringMatrixSet steering)
    : cfg_(cfg), steering_(std::move(steering)) {
  if (!is_power_of_two(cfg_.num_samples)) {
    throw ConfigError("num_samples: fast operator requires a power of two");
  }
  if (steering_.num_samples() != cfg_.num_samples ||
      steering_.num_directions() != cfg_.num_directions() ||
      steering_.num_antennas() != cfg_.num_antennas) {
    throw std::invalid_argument("steering set shape does not match config");
  }
}

void BeamOperator::apply_forward(std::span<const cplx> x, std::span<cplx> y,
                                 cplx scale_by) const {
  check_len(x.size(), cols(), "forward input");
  check_len(y.size(), rows(), "forward output");
  const std::size_t T = cfg_.num_samples;
  const std::size_t N = cfg_.num_antennas;
  const std::size_t K = cfg_.num_directions();
  const auto& k = kernels::active_kernels();

  std::vector<cplx> work(x.begin(), x.end());
  if (corrupt_forward_) {
    fft_rows_centered_inverse(work.data(), T, N);
  } else {
    fft_rows_centered_forward(work.data(), T, N);
  }
  parallel_for_blocks(T, 16, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      k.cgemv(steering_.matrix(freq_index(p, T)).data(), work.data() + p * N,
              y.data() + p * K, K, N);
    }
  });
  if (scale_by != cplx(1.0, 0.0)) {
    k.scale(y.data(), scale_by, y.size());
  }
}

void BeamOperator::forward(std::span<const cplx> x, std::span<cplx> y) const {
  apply_forward(x, y, beta_);
}

void BeamOperator::forward_unscaled(std::span<const cplx> x, std::span<cplx> y) const {
  apply_forward(x, y, cplx(1.0, 0.0));
}

void BeamOperator::adjoint(std::span<const cplx> z, std::span<cplx> out) const {
  check_len(z.size(), rows(), "adjoint input");
  check_len(out.size(), cols(), "adjoint output");
  const std::size_t T = cfg_.num_samples;
  const std::size_t N = cfg_.num_antennas;
  const std::size_t K = cfg_.num_directions();
  const auto& k = kernels::active_kernels();

  parallel_for_blocks(T, 16, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      k.cgemv_adj(steering_.matrix(freq_index(p, T)).data(), z.data() + p * K,
                  out.data() + p * N, K, N);
    }
  });
  fft_rows_centered_inverse(out.data(), T, N);
  const cplx bc = std::conj(beta_);
  if (bc != cplx(1.0, 0.0)) {
    k.scale(out.data(), bc, out.size());
  }
}

void BeamOperator::magsq_forward_sum(std::span<const double> f_prime,
                                     std::span<double> out) const {
  check_len(f_prime.size(), cols(), "magsq_forward_sum input");
  check_len(out.size(), rows(), "magsq_forward_sum output");
  double acc = 0.0;
  for (double v : f_prime) acc += v;
  const double val = std::norm(beta_) / static_cast<double>(cfg_.num_samples) * acc;
  for (double& o : out) o = val;
}

void BeamOperator::magsq_adjoint_sum(std::span<const double> g_prime,
                                     std::span<double> out) const {
  check_len(g_prime.size(), rows(), "magsq_adjoint_sum input");
  check_len(out.size(), cols(), "magsq_adjoint_sum output");
  double acc = 0.0;
  for (double v : g_prime) acc += v;
  const double val = std::norm(beta_) / static_cast<double>(cfg_.num_samples) * acc;
  for (double& o : out) o = val;
}

std::vector<cplx> BeamOperator::materialize_dense(std::size_t col_cap) const {
  if (cols() > col_cap) {
    throw std::length_error("dense materialization: " + std::to_string(cols()) +
                            " columns exceeds cap " + std::to_string(col_cap));
  }
  const std::size_t T = cfg_.num_samples;
  const std::size_t N = cfg_.num_antennas;
  const std::size_t K = cfg_.num_directions();
  const double scale = 1.0 / std::sqrt(static_cast<double>(T));
  std::vector<cplx> dense(rows() * cols());
  for (std::size_t p = 0; p < T; ++p) {
    const long m = freq_index(p, T);
    auto block = steering_.matrix(m);
    for (std::size_t t = 0; t < T; ++t) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(m) *
                         static_cast<double>(t) / static_cast<double>(T);
      const cplx f = std::polar(scale, ang);
      for (std::size_t kk = 0; kk < K; ++kk) {
        for (std::size_t n = 0; n < N; ++n) {
          dense[(p * K + kk) * cols() + t * N + n] = block[kk * N + n] * f;
        }
      }
    }
  }
  return dense;
}

BeamOperator make_beam_operator(const RadarConfig& cfg) {
  return BeamOperator(cfg, build_steering_set(cfg));
}

}
