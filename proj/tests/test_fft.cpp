#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "synth/config.hpp"
#include "synth/fft.hpp"
#include "synth/oracle.hpp"

using namespace synth;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& c : v) c = cplx(g(rng), g(rng));
  return v;
}

// direct evaluation of the centered unitary DFT through the dense matrix
std::vector<cplx> dense_centered(const std::vector<cplx>& x, std::size_t T,
                                 std::size_t N) {
  const auto f = oracle::dense_dft_matrix(T);
  std::vector<cplx> out(T * N, cplx(0.0, 0.0));
  for (std::size_t p = 0; p < T; ++p) {
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t n = 0; n < N; ++n) {
        out[p * N + n] += f[p * T + t] * x[t * N + n];
      }
    }
  }
  return out;
}

double max_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("fft: matches the dense centered DFT on batched columns") {
  std::mt19937_64 rng(7);
  for (std::size_t T : {1, 2, 4, 8, 16}) {
    for (std::size_t N : {1, 2, 3, 4}) {
      CAPTURE(T);
      CAPTURE(N);
      auto x = random_vec(rng, T * N);
      auto want = dense_centered(x, T, N);
      auto got = x;
      fft_rows_centered_forward(got.data(), T, N);
      CHECK(max_err(got, want) < 1e-12);
    }
  }
}

TEST_CASE("fft: forward/inverse round trip and Parseval") {
  std::mt19937_64 rng(11);
  for (std::size_t T : {2, 8, 256}) {
    const std::size_t N = 3;
    auto x = random_vec(rng, T * N);
    auto work = x;
    fft_rows_centered_forward(work.data(), T, N);

    double nx = 0.0, nw = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      nx += std::norm(x[i]);
      nw += std::norm(work[i]);
    }
    CHECK(std::abs(std::sqrt(nw) - std::sqrt(nx)) <= 1e-12 * std::sqrt(nx));

    fft_rows_centered_inverse(work.data(), T, N);
    CHECK(max_err(work, x) < 1e-12);
  }
}

TEST_CASE("fft: dense centered DFT is unitary for any T") {
  for (std::size_t T : {3, 5, 6}) {
    const auto f = oracle::dense_dft_matrix(T);
    for (std::size_t r1 = 0; r1 < T; ++r1) {
      for (std::size_t r2 = 0; r2 < T; ++r2) {
        cplx acc = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
          acc += f[r1 * T + t] * std::conj(f[r2 * T + t]);
        }
        CHECK(std::abs(acc - (r1 == r2 ? 1.0 : 0.0)) < 1e-13);
      }
    }
  }
}

TEST_CASE("fft: constant input concentrates at the centered zero bin") {
  const std::size_t T = 16, N = 2;
  std::vector<cplx> x(T * N);
  for (std::size_t t = 0; t < T; ++t) {
    x[t * N + 0] = cplx(0.5, -0.25);
    x[t * N + 1] = cplx(-1.0, 2.0);
  }
  fft_rows_centered_forward(x.data(), T, N);
  const std::size_t zero_pos = freq_pos(0, T);
  for (std::size_t p = 0; p < T; ++p) {
    for (std::size_t n = 0; n < N; ++n) {
      if (p == zero_pos) {
        CHECK(std::abs(x[p * N + n]) > 1.0);
      } else {
        CHECK(std::abs(x[p * N + n]) < 1e-14);
      }
    }
  }
}
