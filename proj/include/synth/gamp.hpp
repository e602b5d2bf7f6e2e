#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "synth/beam_operator.hpp"
#include "synth/config.hpp"

namespace synth {

// Constants the iteration depends on beyond the config; recorded in run
// manifests.
struct GampConstants {
  static constexpr double kTheta0 = 1.0;    // initial output curvature
  static constexpr double kClampEps = 1e-12;  // |.| clamp inside derivatives
};

class GampDivergence : public std::runtime_error {
 public:
  GampDivergence(const std::string& what, std::size_t iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

// -- scalar input/output functions ----------------------------------------

// 1 / (2 max(|v|, eps))
double input_derivative(cplx v);

// (sqrt(d) e^{j arg u} - u) / (1 + theta), arg(0) := 0
cplx output_function(cplx u, double d, double theta);

// (1 - sqrt(d) / (2 max(|u|, eps))) / (1 + theta)
double output_derivative(cplx u, double d, double theta);

// Nearest alphabet point; positive real scalings of v give identical output.
cplx prox_constellation(cplx v, const Constellation& c);

// -- closed-form inner minimizers ------------------------------------------

// s_j = sqrt(d_j) e^{j arg y_j}; minimizes ||y - s|| over |s_j|^2 = d_j.
void optimal_s(std::span<const cplx> y, std::span<const double> d, std::span<cplx> s_out);

// y^H s / (||y||^2 + alpha), the minimizer of ||beta y - s||^2 + alpha
// |beta|^2 over complex beta; zero when the denominator vanishes.
cplx optimal_beta(std::span<const cplx> s, std::span<const cplx> y_unscaled, double alpha);

// Objective at x with s and beta at their closed-form optima given y = Bx.
double cost_from_y(std::span<const cplx> y, std::span<const double> d, double alpha,
                   cplx* beta_out = nullptr);
double cost(std::span<const cplx> x, const BeamOperator& op, const DesiredPattern& d,
            double alpha, cplx* beta_out = nullptr);

// -- iteration state ---------------------------------------------------------

struct GampState {
  std::vector<cplx> x_hat;       // length N*T, soft estimate
  std::vector<cplx> z;           // length K*T, output-step message
  std::vector<double> theta;     // length K*T, output curvature (uniform)
  std::vector<double> xi;        // length N*T, input curvature (uniform)
  cplx beta{1.0, 0.0};
  std::size_t iter = 0;
  std::vector<double> cost_trace;  // objective of the projected iterate
  std::vector<cplx> beta_trace;
};

GampState init_gamp_state(std::size_t n_in, std::size_t n_out);

// One damped min-sum iteration; mutates state and the operator scale.
// Throws GampDivergence when any message goes non-finite.
void gamp_step(GampState& state, BeamOperator& op, const DesiredPattern& d,
               const Constellation& c, double mu);

struct SynthesisResult {
  std::vector<cplx> x_sol;           // alphabet-valued, length N*T
  std::vector<std::int32_t> x_indices;
  double final_cost = 0.0;           // recomputed from the projected solution
  cplx beta_final{0.0, 0.0};
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> cost_trace;
  std::vector<cplx> beta_trace;
};

// Runs gamp_step until the cost change over a 5-iteration window drops
// below rel_tol or max_iters is hit, then projects onto the alphabet.
SynthesisResult solve(const RadarConfig& cfg, BeamOperator& op, const DesiredPattern& d);

}
