#include "synth/fft.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <vector>

#include "synth/config.hpp"
#include "synth/kernels.hpp"

namespace synth {

namespace {

// In-place radix-2 DIT over rows, standard (non-centered) bin order,
// unscaled. sign -1 for e^{-j2pi...}, +1 for the inverse kernel.
void fft_rows(cplx* data, std::size_t T, std::size_t N, int sign) {
  assert(is_power_of_two(T));
  const auto& k = kernels::active_kernels();

  // bit-reversal permutation of rows
  std::size_t j = 0;
  for (std::size_t i = 0; i < T; ++i) {
    if (i < j) {
      for (std::size_t c = 0; c < N; ++c) std::swap(data[i * N + c], data[j * N + c]);
    }
    std::size_t bit = T >> 1;
    while (bit != 0 && (j & bit) != 0) {
      j ^= bit;
      bit >>= 1;
    }
    j |= bit;
  }

  for (std::size_t len = 2; len <= T; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<cplx> tw(half);
    for (std::size_t t = 0; t < half; ++t) {
      tw[t] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(t) /
                                  static_cast<double>(len));
    }
    for (std::size_t start = 0; start < T; start += len) {
      for (std::size_t t = 0; t < half; ++t) {
        k.butterfly(data + (start + t) * N, data + (start + t + half) * N, tw[t], N);
      }
    }
  }
}

void swap_halves(cplx* data, std::size_t T, std::size_t N) {
  const std::size_t half = (T / 2) * N;
  for (std::size_t i = 0; i < half; ++i) std::swap(data[i], data[half + i]);
}

void scale_all(cplx* data, std::size_t count, double s) {
  kernels::active_kernels().scale(data, cplx(s, 0.0), count);
}

}  // namespace

void fft_rows_centered_forward(cplx* data, std::size_t T, std::size_t N) {
  if (T == 1) return;
  fft_rows(data, T, N, -1);
  scale_all(data, T * N, 1.0 / std::sqrt(static_cast<double>(T)));
  swap_halves(data, T, N);
}

void fft_rows_centered_inverse(cplx* data, std::size_t T, std::size_t N) {
  if (T == 1) return;
  swap_halves(data, T, N);
  fft_rows(data, T, N, +1);
  scale_all(data, T * N, 1.0 / std::sqrt(static_cast<double>(T)));
}

}
