#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "synth/beam_operator.hpp"
#include "synth/fft.hpp"
#include "synth/gamp.hpp"
#include "synth/oracle.hpp"
#include "synth/pipeline.hpp"

namespace synth {

namespace {

struct Reporter {
  std::ostringstream out;
  bool all_ok = true;

  void check(const std::string& name, bool ok, double measured, const char* unit) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << measured << unit << ")\n";
    all_ok = all_ok && ok;
  }
};

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& c : v) c = cplx(g(rng), g(rng));
  return v;
}

double norm2(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& c : v) acc += std::norm(c);
  return std::sqrt(acc);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

RadarConfig reduced_shape(const RadarConfig& cfg) {
  RadarConfig r = cfg;
  r.num_antennas = std::min<std::size_t>(cfg.num_antennas, 4);
  r.num_samples = std::min<std::size_t>(cfg.num_samples, 8);
  const std::size_t k = std::min<std::size_t>(cfg.num_directions(), 2);
  r.directions.assign(cfg.directions.begin(), cfg.directions.begin() + k);
  const long quarter = std::max<long>(1, static_cast<long>(r.num_samples / 4));
  r.passband_lo = -quarter;
  r.passband_hi = quarter;
  return r;
}

}  // namespace

bool verify_command(const RunSpec& spec, bool corrupt_dft_sign, std::string* report) {
  Reporter rep;
  std::mt19937_64 rng(static_cast<std::uint64_t>(spec.cfg.seed));
  const RadarConfig& cfg = spec.cfg;

  // constellation invariants
  {
    const Constellation c = build_constellation(cfg.dac_bits);
    double worst_mod = 0.0;
    cplx sum = 0.0;
    bool fixed_points = true;
    for (std::size_t l = 0; l < c.size(); ++l) {
      worst_mod = std::max(worst_mod, std::abs(std::abs(c.point(l)) - 1.0));
      sum += c.point(l);
      fixed_points = fixed_points && c.nearest_index(c.point(l)) == l;
    }
    rep.check("constellation modulus == 1", worst_mod <= 1e-12, worst_mod, " max dev");
    rep.check("constellation phase symmetry (sum == 0)", std::abs(sum) == 0.0,
              std::abs(sum), "");
    rep.check("prox fixed points on alphabet", fixed_points, fixed_points ? 1.0 : 0.0,
              "");
  }

  // operator properties at the configured shape
  {
    BeamOperator op = make_beam_operator(cfg);
    op.corrupt_forward_dft_sign(corrupt_dft_sign);
    op.set_beta(cplx(0.8, -0.3));
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_vector(rng, op.cols());
      auto z = random_vector(rng, op.rows());
      std::vector<cplx> bx(op.rows()), bhz(op.cols());
      op.forward(x, bx);
      op.adjoint(z, bhz);
      const double err = std::abs(inner(bx, z) - inner(x, bhz)) /
                         (norm2(x) * norm2(z));
      worst = std::max(worst, err);
    }
    rep.check("adjoint identity", worst <= 1e-10, worst, " rel");

    auto x = random_vector(rng, op.cols());
    std::vector<cplx> work(x);
    fft_rows_centered_forward(work.data(), cfg.num_samples, cfg.num_antennas);
    const double parseval = std::abs(norm2(work) - norm2(x)) / norm2(x);
    rep.check("DFT factor Parseval", parseval <= 1e-12, parseval, " rel");
  }

  // dense agreement at a reduced shape
  {
    const RadarConfig small = reduced_shape(cfg);
    BeamOperator op = make_beam_operator(small);
    op.corrupt_forward_dft_sign(corrupt_dft_sign);
    op.set_beta(cplx(1.1, 0.4));
    const auto dense = op.materialize_dense();
    auto x = random_vector(rng, op.cols());
    std::vector<cplx> fast(op.rows());
    op.forward(x, fast);
    double worst = 0.0;
    double ref_norm = 0.0;
    for (std::size_t r = 0; r < op.rows(); ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < op.cols(); ++c) acc += dense[r * op.cols() + c] * x[c];
      acc *= op.beta();
      worst = std::max(worst, std::abs(acc - fast[r]));
      ref_norm += std::norm(acc);
    }
    const double rel = worst / std::sqrt(ref_norm);
    rep.check("dense vs fast forward", rel <= 1e-10, rel, " rel");
  }

  // scalar output function against the grid oracle (reduced count)
  {
    std::uniform_real_distribution<double> dmag(0.1, 3.0);
    std::uniform_real_distribution<double> dphase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> dd(0.0, 4.0);
    std::uniform_real_distribution<double> dth(0.1, 10.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const cplx u = std::polar(dmag(rng), dphase(rng));
      const double d = dd(rng);
      const double th = dth(rng);
      const auto grid = oracle::grid_maximize_output(u, d, th);
      worst = std::max(worst, std::abs(grid.g_value - output_function(u, d, th)));
    }
    rep.check("closed-form output function vs grid", worst <= 1e-3, worst, " abs");
  }

  // closed-form s and beta never lose to random perturbations (reduced count)
  {
    const std::size_t n = 64;
    auto y = random_vector(rng, n);
    std::vector<double> d(n);
    std::uniform_real_distribution<double> dd(0.0, 4.0);
    for (auto& v : d) v = dd(rng);
    std::vector<cplx> s(n);
    optimal_s(y, d, s);
    auto resid = [&](const std::vector<cplx>& ss) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += std::norm(y[i] - ss[i]);
      return acc;
    };
    const double best = resid(s);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      auto alt = s;
      for (std::size_t i = 0; i < n; ++i) alt[i] = std::polar(std::sqrt(d[i]), ph(rng));
      ok = ok && best <= resid(alt) + 1e-12;
    }
    rep.check("optimal s beats feasible perturbations", ok, best, " residual");

    const double alpha = 3.0;
    const cplx beta = optimal_beta(s, y, alpha);
    auto cost_at = [&](cplx b) {
      double acc = alpha * std::norm(b);
      for (std::size_t i = 0; i < n; ++i) acc += std::norm(b * y[i] - s[i]);
      return acc;
    };
    std::normal_distribution<double> g(0.0, 1e-3);
    bool bok = true;
    for (int trial = 0; trial < 100; ++trial) {
      bok = bok && cost_at(beta) <= cost_at(beta + cplx(g(rng), g(rng))) + 1e-12;
    }
    rep.check("optimal beta beats perturbations", bok, std::abs(beta), " |beta|");
  }

  if (report != nullptr) *report = rep.out.str();
  return rep.all_ok;
}

}
