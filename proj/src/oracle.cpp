#include "synth/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "synth/parallel.hpp"
#include "synth/steering.hpp"

namespace synth::oracle {

namespace {

constexpr std::uint64_t kBruteCap = std::uint64_t{1} << 20;

double sqr(double v) { return v * v; }

// objective value at x given precomputed field y = B x (unscaled):
// closed-form s and beta, then ||beta y - s||^2 + alpha |beta|^2
double dense_cost_from_y(std::span<const cplx> y, std::span<const double> d,
                         double alpha) {
  double num_r = 0.0, num_i = 0.0, den = alpha;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double mag = std::abs(y[j]);
    num_r += std::sqrt(d[j]) * mag;
    den += std::norm(y[j]);
  }
  cplx beta = den == 0.0 ? cplx(0.0, 0.0) : cplx(num_r / den, num_i / den);
  double acc = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const cplx yb = beta * y[j];
    const cplx s = yb == cplx(0.0, 0.0)
                       ? cplx(std::sqrt(d[j]), 0.0)
                       : std::polar(std::sqrt(d[j]), std::arg(yb));
    acc += std::norm(yb - s);
  }
  return acc + alpha * std::norm(beta);
}

}  // namespace

std::vector<cplx> dense_dft_matrix(std::size_t T) {
  std::vector<cplx> f(T * T);
  const double scale = 1.0 / std::sqrt(static_cast<double>(T));
  for (std::size_t p = 0; p < T; ++p) {
    const long m = freq_index(p, T);
    for (std::size_t t = 0; t < T; ++t) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(m) *
                         static_cast<double>(t) / static_cast<double>(T);
      f[p * T + t] = std::polar(scale, ang);
    }
  }
  return f;
}

std::vector<cplx> DenseOperator::apply(std::span<const cplx> x, cplx scale) const {
  if (x.size() != cols) throw std::invalid_argument("dense apply: length mismatch");
  std::vector<cplx> y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += b[r * cols + c] * x[c];
    y[r] = scale * acc;
  }
  return y;
}

std::vector<cplx> DenseOperator::apply_adjoint(std::span<const cplx> z,
                                               cplx scale) const {
  if (z.size() != rows) throw std::invalid_argument("dense adjoint: length mismatch");
  std::vector<cplx> out(cols, cplx(0.0, 0.0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out[c] += std::conj(b[r * cols + c]) * z[r];
    }
  }
  for (auto& v : out) v *= scale;
  return out;
}

DenseOperator build_dense_operator(const RadarConfig& cfg) {
  const std::size_t T = cfg.num_samples;
  const std::size_t K = cfg.num_directions();
  const std::size_t N = cfg.num_antennas;
  DenseOperator op;
  op.rows = K * T;
  op.cols = N * T;
  op.b.resize(op.rows * op.cols);
  const auto f = dense_dft_matrix(T);
  for (std::size_t p = 0; p < T; ++p) {
    const long m = freq_index(p, T);
    for (std::size_t k = 0; k < K; ++k) {
      const auto a = steering_vector(m, cfg.directions[k], cfg);
      for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t n = 0; n < N; ++n) {
          op.b[(p * K + k) * op.cols + t * N + n] = a[n] * f[p * T + t];
        }
      }
    }
  }
  op.b_sq.resize(op.b.size());
  for (std::size_t i = 0; i < op.b.size(); ++i) op.b_sq[i] = std::norm(op.b[i]);
  return op;
}

OracleResult brute_force_solve(const RadarConfig& cfg, const DesiredPattern& d,
                               const Constellation& c) {
  const std::size_t nvars = cfg.num_antennas * cfg.num_samples;
  const std::uint64_t np = c.size();
  double count_check = std::pow(static_cast<double>(np), static_cast<double>(nvars));
  if (count_check > static_cast<double>(kBruteCap)) {
    throw std::length_error("brute force: candidate space exceeds 2^20");
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < nvars; ++i) total *= np;

  const DenseOperator dense = build_dense_operator(cfg);
  const double alpha = cfg.resolved_alpha();

  struct Best {
    double cost = std::numeric_limits<double>::infinity();
    std::uint64_t cand = 0;
    bool any = false;
  };

  const std::size_t block = 4096;
  const std::size_t nblocks = (total + block - 1) / block;
  std::vector<Best> best_per_block(nblocks);

  parallel_for_blocks(total, block, [&](std::size_t lo, std::size_t hi) {
    Best local;
    std::vector<cplx> x(nvars);
    std::vector<cplx> y(dense.rows);
    for (std::uint64_t cand = lo; cand < hi; ++cand) {
      // decode digits, first variable most significant
      std::uint64_t rem = cand;
      for (std::size_t i = nvars; i-- > 0;) {
        x[i] = c.point(rem % np);
        rem /= np;
      }
      for (std::size_t r = 0; r < dense.rows; ++r) {
        cplx acc = 0.0;
        for (std::size_t cc = 0; cc < nvars; ++cc) acc += dense.b[r * nvars + cc] * x[cc];
        y[r] = acc;
      }
      const double cost = dense_cost_from_y(y, d.d, alpha);
      if (!local.any || cost < local.cost) {
        local = {cost, cand, true};
      }
    }
    best_per_block[lo / block] = local;
  });

  Best best;
  for (const Best& b : best_per_block) {
    if (!b.any) continue;
    if (!best.any || b.cost < best.cost || (b.cost == best.cost && b.cand < best.cand)) {
      best = b;
    }
  }

  OracleResult res;
  res.candidates_evaluated = total;
  res.cost_opt = best.cost;
  res.x_opt.resize(nvars);
  res.indices.resize(nvars);
  std::uint64_t rem = best.cand;
  for (std::size_t i = nvars; i-- > 0;) {
    res.indices[i] = static_cast<std::int32_t>(rem % np);
    res.x_opt[i] = c.point(static_cast<std::size_t>(res.indices[i]));
    rem /= np;
  }
  return res;
}

GridMaxResult grid_maximize_output(cplx u, double d, double theta, int zoom_passes) {
  const double sd = std::sqrt(d);
  auto objective = [&](double r, double psi) {
    const cplx w = std::polar(r, psi);
    return -sqr(r - sd) - std::norm(w - u) / theta;
  };

  const double rmax = 2.0 * (std::abs(u) + sd);
  const int nr = 400, npsi = 400;
  double dr = rmax / (nr - 1);
  double dpsi = 2.0 * std::numbers::pi / npsi;

  double best_r = 0.0, best_psi = 0.0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < nr; ++i) {
    const double r = dr * i;
    for (int j = 0; j < npsi; ++j) {
      const double psi = dpsi * j;
      const double val = objective(r, psi);
      if (val > best_val) {
        best_val = val;
        best_r = r;
        best_psi = psi;
      }
    }
  }

  for (int pass = 0; pass < zoom_passes; ++pass) {
    const double r0 = best_r, psi0 = best_psi;
    const double fine_dr = dr / 10.0, fine_dpsi = dpsi / 10.0;
    for (int i = -20; i <= 20; ++i) {
      const double r = r0 + fine_dr * i;
      if (r < 0.0) continue;
      for (int j = -20; j <= 20; ++j) {
        const double psi = psi0 + fine_dpsi * j;
        const double val = objective(r, psi);
        if (val > best_val) {
          best_val = val;
          best_r = r;
          best_psi = psi;
        }
      }
    }
    dr = fine_dr;
    dpsi = fine_dpsi;
  }

  GridMaxResult res;
  res.w_star = std::polar(best_r, best_psi);
  res.g_value = (res.w_star - u) / theta;
  return res;
}

void dense_gamp_step(const DenseOperator& dense, GampState& state,
                     const DesiredPattern& d, const Constellation& c, double mu,
                     double alpha) {
  const std::size_t n_in = dense.cols;
  const std::size_t n_out = dense.rows;
  if (state.x_hat.size() != n_in || state.z.size() != n_out) {
    throw std::invalid_argument("dense_gamp_step: shape mismatch");
  }
  const cplx beta = state.beta;
  const double beta_sq = std::norm(beta);
  state.iter += 1;

  // output step
  std::vector<cplx> u = dense.apply(state.x_hat, beta);
  for (std::size_t j = 0; j < n_out; ++j) u[j] -= state.theta[j] * state.z[j];
  std::vector<cplx> znew(n_out);
  std::vector<double> gp(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    znew[j] = output_function(u[j], d.d[j], state.theta[j]);
    gp[j] = output_derivative(u[j], d.d[j], state.theta[j]);
  }
  state.z = znew;
  std::vector<double> xi(n_in, 0.0);
  for (std::size_t j = 0; j < n_out; ++j) {
    for (std::size_t i = 0; i < n_in; ++i) {
      xi[i] += beta_sq * dense.b_sq[j * n_in + i] * gp[j];
    }
  }
  state.xi = xi;

  // input step with damping
  std::vector<cplx> v = dense.apply_adjoint(state.z, std::conj(beta));
  for (std::size_t i = 0; i < n_in; ++i) v[i] += xi[i] * state.x_hat[i];
  std::vector<double> fp(n_in);
  for (std::size_t i = 0; i < n_in; ++i) {
    const cplx raw = c.nearest(v[i] / xi[i]);
    state.x_hat[i] = (1.0 - mu) * state.x_hat[i] + mu * raw;
    fp[i] = input_derivative(v[i]);
  }
  std::vector<double> theta(n_out, 0.0);
  for (std::size_t j = 0; j < n_out; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_in; ++i) {
      acc += beta_sq * dense.b_sq[j * n_in + i] * fp[i];
    }
    theta[j] = mu * acc;
  }
  state.theta = theta;

  // scale update
  std::vector<cplx> y = dense.apply(state.x_hat, cplx(1.0, 0.0));
  double num = 0.0, den = alpha;
  for (std::size_t j = 0; j < n_out; ++j) {
    num += std::sqrt(d.d[j]) * std::abs(y[j]);
    den += std::norm(y[j]);
  }
  state.beta = den == 0.0 ? cplx(0.0, 0.0) : cplx(num / den, 0.0);

  // trace on the projected iterate
  std::vector<cplx> xp(n_in);
  for (std::size_t i = 0; i < n_in; ++i) xp[i] = c.nearest(state.x_hat[i]);
  std::vector<cplx> yp = dense.apply(xp, cplx(1.0, 0.0));
  state.cost_trace.push_back(dense_cost_from_y(yp, d.d, alpha));
  state.beta_trace.push_back(state.beta);
}

}
