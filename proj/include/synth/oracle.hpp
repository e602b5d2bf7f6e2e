#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "synth/config.hpp"
#include "synth/gamp.hpp"

namespace synth {

// Dense, formula-level counterparts of the structured operator. These are
// deliberately independent of the fast path (no shared FFT or kernels) and
// accept any T, power of two or not.
namespace oracle {

// Centered unitary DFT matrix, row-major T x T; row p is bin p - floor(T/2).
std::vector<cplx> dense_dft_matrix(std::size_t T);

struct DenseOperator {
  std::size_t rows = 0;       // K*T
  std::size_t cols = 0;       // N*T
  std::vector<cplx> b;        // row-major, unscaled
  std::vector<double> b_sq;   // elementwise |b|^2

  std::vector<cplx> apply(std::span<const cplx> x, cplx scale) const;
  std::vector<cplx> apply_adjoint(std::span<const cplx> z, cplx scale) const;
};

DenseOperator build_dense_operator(const RadarConfig& cfg);

struct OracleResult {
  std::vector<cplx> x_opt;
  std::vector<std::int32_t> indices;
  double cost_opt = 0.0;
  std::uint64_t candidates_evaluated = 0;
};

// Exhaustive minimization of the objective over the full alphabet space,
// inner s and beta at their closed forms. Deterministic lowest-enumeration
// tie break (index digits, first entry most significant). Throws
// std::length_error above 2^20 candidates.
OracleResult brute_force_solve(const RadarConfig& cfg, const DesiredPattern& d,
                               const Constellation& c);

struct GridMaxResult {
  cplx w_star;
  cplx g_value;  // (w_star - u) / theta
};

// Polar-grid maximization of rho(w, d) - |w - u|^2 / theta with
// rho(w, d) = -(|w| - sqrt(d))^2; 400 x 400 coarse grid plus zoom passes
// at 10x resolution each around the running maximizer.
GridMaxResult grid_maximize_output(cplx u, double d, double theta, int zoom_passes = 4);

// Literal dense transcription of one damped min-sum iteration, using
// explicit matrix products and per-entry curvature vectors. Must track
// gamp_step on matching shapes.
void dense_gamp_step(const DenseOperator& dense, GampState& state,
                     const DesiredPattern& d, const Constellation& c, double mu,
                     double alpha);

}

}
