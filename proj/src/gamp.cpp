#include "synth/gamp.hpp"

#include <cmath>
#include <string>

#include "kernels/kernels_detail.hpp"
#include "synth/kernels.hpp"

namespace synth {

namespace {

namespace kd = kernels::detail;

void check_finite(std::span<const cplx> v, const char* what, std::size_t iter) {
  for (const cplx& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw GampDivergence(std::string("non-finite value in ") + what +
                               " at iteration " + std::to_string(iter),
                           iter);
    }
  }
}

void check_finite_scalar(double v, const char* what, std::size_t iter) {
  if (!std::isfinite(v)) {
    throw GampDivergence(std::string("non-finite ") + what + " at iteration " +
                             std::to_string(iter),
                         iter);
  }
}

std::vector<double> sqrt_of(std::span<const double> d) {
  std::vector<double> s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = std::sqrt(d[i]);
  return s;
}

}  // namespace

double input_derivative(cplx v) { return kd::inv_two_abs_elem(v.real(), v.imag()); }

cplx output_function(cplx u, double d, double theta) {
  double zr, zi;
  kd::output_func_elem(u.real(), u.imag(), std::sqrt(d), theta, zr, zi);
  return {zr, zi};
}

double output_derivative(cplx u, double d, double theta) {
  return kd::output_deriv_elem(u.real(), u.imag(), std::sqrt(d), theta);
}

cplx prox_constellation(cplx v, const Constellation& c) { return c.nearest(v); }

void optimal_s(std::span<const cplx> y, std::span<const double> d, std::span<cplx> s_out) {
  if (y.size() != d.size() || s_out.size() != y.size()) {
    throw std::invalid_argument("optimal_s: length mismatch");
  }
  auto sd = sqrt_of(d);
  kernels::active_kernels().dir_scale(s_out.data(), y.data(), sd.data(), y.size());
}

cplx optimal_beta(std::span<const cplx> s, std::span<const cplx> y_unscaled,
                  double alpha) {
  if (s.size() != y_unscaled.size()) {
    throw std::invalid_argument("optimal_beta: length mismatch");
  }
  const auto& k = kernels::active_kernels();
  const double den = k.sumsq(y_unscaled.data(), y_unscaled.size()) + alpha;
  if (den == 0.0) return {0.0, 0.0};
  // y^H s: the global minimizer over complex beta; for s with the phases
  // of y (the solver's case) the ratio is real nonnegative either way
  return k.dotc(y_unscaled.data(), s.data(), s.size()) / den;
}

double cost_from_y(std::span<const cplx> y, std::span<const double> d, double alpha,
                   cplx* beta_out) {
  std::vector<cplx> s(y.size());
  optimal_s(y, d, s);
  const cplx beta = optimal_beta(s, y, alpha);
  // re-evaluate s at the scaled field, as the objective is defined
  std::vector<cplx> ys(y.begin(), y.end());
  kernels::active_kernels().scale(ys.data(), beta, ys.size());
  optimal_s(ys, d, s);
  double acc = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    acc += std::norm(ys[j] - s[j]);
  }
  if (beta_out != nullptr) *beta_out = beta;
  return acc + alpha * std::norm(beta);
}

double cost(std::span<const cplx> x, const BeamOperator& op, const DesiredPattern& d,
            double alpha, cplx* beta_out) {
  std::vector<cplx> y(op.rows());
  op.forward_unscaled(x, y);
  return cost_from_y(y, d.d, alpha, beta_out);
}

GampState init_gamp_state(std::size_t n_in, std::size_t n_out) {
  GampState st;
  st.x_hat.assign(n_in, cplx(0.0, 0.0));
  st.z.assign(n_out, cplx(0.0, 0.0));
  st.theta.assign(n_out, GampConstants::kTheta0);
  st.xi.assign(n_in, 0.0);
  st.beta = cplx(1.0, 0.0);
  return st;
}

void gamp_step(GampState& state, BeamOperator& op, const DesiredPattern& d,
               const Constellation& c, double mu) {
  const std::size_t n_in = op.cols();
  const std::size_t n_out = op.rows();
  if (state.x_hat.size() != n_in || state.z.size() != n_out) {
    throw std::invalid_argument("gamp_step: state shape does not match operator");
  }
  const double alpha = op.config().resolved_alpha();
  const double T = static_cast<double>(op.config().num_samples);
  const auto& k = kernels::active_kernels();
  const auto sd = sqrt_of(d.d);

  op.set_beta(state.beta);
  state.iter += 1;
  const std::size_t it = state.iter;

  // output step: u = A x - theta.z, z = g(u), xi = |A|^2-weighted sum of g'
  std::vector<cplx> u(n_out);
  op.forward(state.x_hat, u);
  k.cmulsub(u.data(), u.data(), state.theta.data(), state.z.data(), n_out);
  check_finite(u, "output argument", it);
  k.output_func(state.z.data(), u.data(), sd.data(), state.theta.data(), n_out);
  check_finite(state.z, "output message z", it);
  const double gsum = k.output_deriv_sum(u.data(), sd.data(), state.theta.data(), n_out);
  const double xi_val = std::norm(state.beta) / T * gsum;
  check_finite_scalar(xi_val, "input curvature xi", it);
  if (xi_val == 0.0) {
    throw GampDivergence("vanishing input curvature xi at iteration " +
                             std::to_string(it),
                         it);
  }
  std::fill(state.xi.begin(), state.xi.end(), xi_val);

  // input step with damping; prox of v/xi == prox of sign(xi) v
  std::vector<cplx> v(n_in);
  op.adjoint(state.z, v);
  k.caxpy_real(v.data(), v.data(), state.xi.data(), state.x_hat.data(), n_in);
  check_finite(v, "input argument", it);
  std::vector<cplx> raw(n_in);
  k.prox(v.data(), xi_val < 0.0, c.re_table(), c.im_table(),
         static_cast<std::uint32_t>(c.size()), c.points().data(), raw.data(), nullptr,
         n_in);
  k.mix(state.x_hat.data(), raw.data(), mu, n_in);
  const double fsum = k.inv_two_abs_sum(v.data(), n_in);
  const double theta_val = mu * std::norm(state.beta) / T * fsum;
  check_finite_scalar(theta_val, "output curvature theta", it);
  std::fill(state.theta.begin(), state.theta.end(), theta_val);

  // scale update from the unscaled field at the new estimate
  std::vector<cplx> y(n_out);
  op.forward_unscaled(state.x_hat, y);
  std::vector<cplx> s(n_out);
  optimal_s(y, d.d, s);
  state.beta = optimal_beta(s, y, alpha);
  check_finite_scalar(state.beta.real(), "beta", it);
  check_finite_scalar(state.beta.imag(), "beta", it);

  // objective of the projected iterate
  std::vector<cplx> xp(n_in);
  k.prox(state.x_hat.data(), false, c.re_table(), c.im_table(),
         static_cast<std::uint32_t>(c.size()), c.points().data(), xp.data(), nullptr,
         n_in);
  op.forward_unscaled(xp, y);
  const double cst = cost_from_y(y, d.d, alpha);
  check_finite_scalar(cst, "cost", it);
  state.cost_trace.push_back(cst);
  state.beta_trace.push_back(state.beta);
}

SynthesisResult solve(const RadarConfig& cfg, BeamOperator& op, const DesiredPattern& d) {
  const Constellation c = build_constellation(cfg.dac_bits);
  GampState st = init_gamp_state(op.cols(), op.rows());
  bool converged = false;

  for (std::size_t l = 0; l < cfg.max_iters; ++l) {
    gamp_step(st, op, d, c, cfg.damping);
    const std::size_t n = st.cost_trace.size();
    if (n >= 6) {
      const double now = st.cost_trace[n - 1];
      const double old = st.cost_trace[n - 6];
      if (std::abs(now - old) <= cfg.rel_tol * old) {
        converged = true;
        break;
      }
    }
  }

  SynthesisResult res;
  res.converged = converged;
  res.iterations = st.iter;
  res.cost_trace = st.cost_trace;
  res.beta_trace = st.beta_trace;
  res.x_sol.resize(op.cols());
  res.x_indices.resize(op.cols());
  kernels::active_kernels().prox(st.x_hat.data(), false, c.re_table(), c.im_table(),
                                 static_cast<std::uint32_t>(c.size()),
                                 c.points().data(), res.x_sol.data(),
                                 res.x_indices.data(), op.cols());
  res.final_cost = cost(res.x_sol, op, d, cfg.resolved_alpha(), &res.beta_final);
  return res;
}

}
