#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace synth::kernels {

using cplx = std::complex<double>;

// Magnitude clamp used by the curvature formulas 1/(2|v|) and
// 1 - sqrt(d)/(2|u|); keeps them finite at the origin.
inline constexpr double kClampEps = 1e-12;

// One table of inner-loop kernels. The scalar table is the reference
// semantics; SIMD tables must match it bit-for-bit on elementwise maps
// (prox index decisions included) and to tight tolerance on reductions,
// which accumulate in lane order.
struct KernelTable {
  const char* name;

  // radix-2 butterfly across a row pair: t = w*lo[i]; lo[i] = hi[i] - t; hi[i] += t
  void (*butterfly)(cplx* hi, cplx* lo, cplx w, std::size_t n);

  // v[i] *= s
  void (*scale)(cplx* v, cplx s, std::size_t n);

  // y = A x, A row-major rows x cols
  void (*cgemv)(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);

  // out = A^H z, A row-major rows x cols, out length cols
  void (*cgemv_adj)(const cplx* a, const cplx* z, cplx* out, std::size_t rows, std::size_t cols);

  // out[i] = amp[i] * y[i]/|y[i]|, direction (1,0) when y[i] == 0
  void (*dir_scale)(cplx* out, const cplx* y, const double* amp, std::size_t n);

  // z[i] = (sqrt_d[i] * u[i]/|u[i]| - u[i]) / (1 + theta[i])
  void (*output_func)(cplx* z, const cplx* u, const double* sqrt_d, const double* theta,
                      std::size_t n);

  // sum_i (1 - sqrt_d[i]/(2 max(|u[i]|, eps))) / (1 + theta[i])
  double (*output_deriv_sum)(const cplx* u, const double* sqrt_d, const double* theta,
                             std::size_t n);

  // sum_i 1/(2 max(|v[i]|, eps))
  double (*inv_two_abs_sum)(const cplx* v, std::size_t n);

  // out[i] = a[i] - t[i]*z[i], t real
  void (*cmulsub)(cplx* out, const cplx* a, const double* t, const cplx* z, std::size_t n);

  // out[i] = a[i] + w[i]*x[i], w real
  void (*caxpy_real)(cplx* out, const cplx* a, const double* w, const cplx* x, std::size_t n);

  // x[i] = (1-mu)*x[i] + mu*raw[i]
  void (*mix)(cplx* x, const cplx* raw, double mu, std::size_t n);

  // Nearest constellation point per entry (optionally of -v[i] when flip),
  // lowest-index tie break. pre/pim are the point coordinate tables;
  // out gets exact copies of points[]; idx may be null.
  void (*prox)(const cplx* v, bool flip, const double* pre, const double* pim,
               std::uint32_t npoints, const cplx* points, cplx* out, std::int32_t* idx,
               std::size_t n);

  // sum_i |v[i]|^2
  double (*sumsq)(const cplx* v, std::size_t n);

  // sum_i conj(a[i]) * b[i]
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the build or the running CPU lacks AVX2.
const KernelTable* avx2_kernels();

// Runtime selection: SYNTH_KERNEL=scalar|avx2|auto (default auto picks the
// widest supported variant). Decided once per process.
const KernelTable& active_kernels();

}
