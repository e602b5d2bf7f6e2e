// AVX2 kernels, two (or four) complex doubles per iteration. Elementwise
// maps mirror the scalar reference operation-for-operation so results are
// bit-identical; reductions keep per-element arithmetic identical but
// accumulate in lane order, so they agree only to rounding.

#include "synth/kernels.hpp"

#if defined(__AVX2__) && defined(__x86_64__)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_detail.hpp"

namespace synth::kernels {
namespace {

namespace d = detail;

inline const double* reals(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* reals(cplx* p) { return reinterpret_cast<double*>(p); }

inline __m256d dup2(const double* s) {  // (s0, s0, s1, s1)
  return _mm256_set_pd(s[1], s[1], s[0], s[0]);
}

// broadcast complex w times packed (2 complexes)
inline __m256d cmul_bcast(__m256d wr, __m256d wi, __m256d b) {
  __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(wr, b), _mm256_mul_pd(wi, bswap));
}

// pairwise complex multiply a*b (2 complexes each)
inline __m256d cmul_pair(__m256d a, __m256d b) {
  __m256d br = _mm256_movedup_pd(b);
  __m256d bi = _mm256_permute_pd(b, 0b1111);
  __m256d aswap = _mm256_permute_pd(a, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(a, br), _mm256_mul_pd(aswap, bi));
}

inline __m256d conj_pd(__m256d a) {
  const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  return _mm256_xor_pd(a, sign);
}

// |.|^2 per complex, duplicated into both lanes of the pair
inline __m256d abs2_dup(__m256d u) {
  __m256d u2 = _mm256_mul_pd(u, u);
  return _mm256_add_pd(u2, _mm256_permute_pd(u2, 0b0101));
}

void butterfly(cplx* hi, cplx* lo, cplx w, std::size_t n) {
  const __m256d wr = _mm256_set1_pd(w.real());
  const __m256d wi = _mm256_set1_pd(w.imag());
  double* h = reals(hi);
  double* l = reals(lo);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d bv = _mm256_loadu_pd(l + 2 * i);
    __m256d hv = _mm256_loadu_pd(h + 2 * i);
    __m256d t = cmul_bcast(wr, wi, bv);
    _mm256_storeu_pd(l + 2 * i, _mm256_sub_pd(hv, t));
    _mm256_storeu_pd(h + 2 * i, _mm256_add_pd(hv, t));
  }
  for (; i < n; ++i) {
    double tr, ti;
    d::cmul(w.real(), w.imag(), l[2 * i], l[2 * i + 1], tr, ti);
    l[2 * i] = h[2 * i] - tr;
    l[2 * i + 1] = h[2 * i + 1] - ti;
    h[2 * i] = h[2 * i] + tr;
    h[2 * i + 1] = h[2 * i + 1] + ti;
  }
}

void scale(cplx* v, cplx s, std::size_t n) {
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  double* p = reals(v);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(p + 2 * i, cmul_bcast(sr, si, _mm256_loadu_pd(p + 2 * i)));
  }
  for (; i < n; ++i) {
    double r, m;
    d::cmul(s.real(), s.imag(), p[2 * i], p[2 * i + 1], r, m);
    p[2 * i] = r;
    p[2 * i + 1] = m;
  }
}

void cgemv(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  const double* ap = reals(a);
  const double* xp = reals(x);
  double* yp = reals(y);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = ap + 2 * r * cols;
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      acc = _mm256_add_pd(
          acc, cmul_pair(_mm256_loadu_pd(row + 2 * c), _mm256_loadu_pd(xp + 2 * c)));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d sum = _mm_add_pd(lo, hi);
    double accr = _mm_cvtsd_f64(sum);
    double acci = _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
    for (; c < cols; ++c) {
      double pr, pi;
      d::cmul(row[2 * c], row[2 * c + 1], xp[2 * c], xp[2 * c + 1], pr, pi);
      accr += pr;
      acci += pi;
    }
    yp[2 * r] = accr;
    yp[2 * r + 1] = acci;
  }
}

void cgemv_adj(const cplx* a, const cplx* z, cplx* out, std::size_t rows, std::size_t cols) {
  const double* ap = reals(a);
  const double* zp = reals(z);
  double* op = reals(out);
  for (std::size_t c = 0; c < 2 * cols; ++c) op[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = ap + 2 * r * cols;
    const __m256d zr = _mm256_set1_pd(zp[2 * r]);
    const __m256d zi = _mm256_set1_pd(zp[2 * r + 1]);
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      __m256d ac = conj_pd(_mm256_loadu_pd(row + 2 * c));
      __m256d t = _mm256_addsub_pd(_mm256_mul_pd(ac, zr),
                                   _mm256_mul_pd(_mm256_permute_pd(ac, 0b0101), zi));
      _mm256_storeu_pd(op + 2 * c, _mm256_add_pd(_mm256_loadu_pd(op + 2 * c), t));
    }
    for (; c < cols; ++c) {
      double pr, pi;
      d::cmulc(row[2 * c], row[2 * c + 1], zp[2 * r], zp[2 * r + 1], pr, pi);
      op[2 * c] += pr;
      op[2 * c + 1] += pi;
    }
  }
}

inline __m256d unit_dir_pd(__m256d u) {
  __m256d a2 = abs2_dup(u);
  __m256d r = _mm256_sqrt_pd(a2);
  __m256d dir = _mm256_div_pd(u, r);
  __m256d zero_mask = _mm256_cmp_pd(a2, _mm256_setzero_pd(), _CMP_EQ_OQ);
  const __m256d one_dir = _mm256_set_pd(0.0, 1.0, 0.0, 1.0);
  return _mm256_blendv_pd(dir, one_dir, zero_mask);
}

void dir_scale(cplx* out, const cplx* y, const double* amp, std::size_t n) {
  double* op = reals(out);
  const double* yp = reals(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d u = _mm256_loadu_pd(yp + 2 * i);
    __m256d dir = unit_dir_pd(u);
    _mm256_storeu_pd(op + 2 * i, _mm256_mul_pd(dup2(amp + i), dir));
  }
  for (; i < n; ++i) {
    double dr, di;
    d::unit_dir(yp[2 * i], yp[2 * i + 1], dr, di);
    op[2 * i] = amp[i] * dr;
    op[2 * i + 1] = amp[i] * di;
  }
}

void output_func(cplx* z, const cplx* u, const double* sqrt_d, const double* theta,
                 std::size_t n) {
  double* zp = reals(z);
  const double* up = reals(u);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d uv = _mm256_loadu_pd(up + 2 * i);
    __m256d dir = unit_dir_pd(uv);
    __m256d num = _mm256_sub_pd(_mm256_mul_pd(dup2(sqrt_d + i), dir), uv);
    __m256d den = _mm256_add_pd(one, dup2(theta + i));
    _mm256_storeu_pd(zp + 2 * i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) {
    d::output_func_elem(up[2 * i], up[2 * i + 1], sqrt_d[i], theta[i], zp[2 * i],
                        zp[2 * i + 1]);
  }
}

inline __m256d clamped_abs_pd(__m256d u) {
  __m256d r = _mm256_sqrt_pd(abs2_dup(u));
  return _mm256_max_pd(r, _mm256_set1_pd(kClampEps));
}

// lanes hold per-complex values duplicated; add even lanes only
inline double sum_even_lanes(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(hi);
}

double output_deriv_sum(const cplx* u, const double* sqrt_d, const double* theta,
                        std::size_t n) {
  const double* up = reals(u);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d m = clamped_abs_pd(_mm256_loadu_pd(up + 2 * i));
    __m256d frac = _mm256_div_pd(dup2(sqrt_d + i), _mm256_mul_pd(two, m));
    __m256d den = _mm256_add_pd(one, dup2(theta + i));
    __m256d g = _mm256_div_pd(_mm256_sub_pd(one, frac), den);
    acc = _mm256_add_pd(acc, _mm256_blend_pd(g, _mm256_setzero_pd(), 0b1010));
  }
  double total = sum_even_lanes(acc);
  for (; i < n; ++i) {
    total += d::output_deriv_elem(up[2 * i], up[2 * i + 1], sqrt_d[i], theta[i]);
  }
  return total;
}

double inv_two_abs_sum(const cplx* v, std::size_t n) {
  const double* vp = reals(v);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d m = clamped_abs_pd(_mm256_loadu_pd(vp + 2 * i));
    __m256d g = _mm256_div_pd(one, _mm256_mul_pd(two, m));
    acc = _mm256_add_pd(acc, _mm256_blend_pd(g, _mm256_setzero_pd(), 0b1010));
  }
  double total = sum_even_lanes(acc);
  for (; i < n; ++i) {
    total += d::inv_two_abs_elem(vp[2 * i], vp[2 * i + 1]);
  }
  return total;
}

void cmulsub(cplx* out, const cplx* a, const double* t, const cplx* z, std::size_t n) {
  double* op = reals(out);
  const double* ap = reals(a);
  const double* zp = reals(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d prod = _mm256_mul_pd(dup2(t + i), _mm256_loadu_pd(zp + 2 * i));
    _mm256_storeu_pd(op + 2 * i, _mm256_sub_pd(_mm256_loadu_pd(ap + 2 * i), prod));
  }
  for (; i < n; ++i) {
    op[2 * i] = ap[2 * i] - t[i] * zp[2 * i];
    op[2 * i + 1] = ap[2 * i + 1] - t[i] * zp[2 * i + 1];
  }
}

void caxpy_real(cplx* out, const cplx* a, const double* w, const cplx* x, std::size_t n) {
  double* op = reals(out);
  const double* ap = reals(a);
  const double* xp = reals(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d prod = _mm256_mul_pd(dup2(w + i), _mm256_loadu_pd(xp + 2 * i));
    _mm256_storeu_pd(op + 2 * i, _mm256_add_pd(_mm256_loadu_pd(ap + 2 * i), prod));
  }
  for (; i < n; ++i) {
    op[2 * i] = ap[2 * i] + w[i] * xp[2 * i];
    op[2 * i + 1] = ap[2 * i + 1] + w[i] * xp[2 * i + 1];
  }
}

void mix(cplx* x, const cplx* raw, double mu, std::size_t n) {
  double* xp = reals(x);
  const double* rp = reals(raw);
  const __m256d muv = _mm256_set1_pd(mu);
  const __m256d omv = _mm256_set1_pd(1.0 - mu);
  const std::size_t total = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= total; i += 4) {
    __m256d mixed = _mm256_add_pd(_mm256_mul_pd(omv, _mm256_loadu_pd(xp + i)),
                                  _mm256_mul_pd(muv, _mm256_loadu_pd(rp + i)));
    _mm256_storeu_pd(xp + i, mixed);
  }
  const double om = 1.0 - mu;
  for (; i < total; ++i) xp[i] = om * xp[i] + mu * rp[i];
}

void prox(const cplx* v, bool flip, const double* pre, const double* pim,
          std::uint32_t npoints, const cplx* points, cplx* out, std::int32_t* idx,
          std::size_t n) {
  const double* vp = reals(v);
  const __m256d sign = flip ? _mm256_set1_pd(-1.0) : _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d c0 = _mm256_mul_pd(sign, _mm256_loadu_pd(vp + 2 * i));
    __m256d c1 = _mm256_mul_pd(sign, _mm256_loadu_pd(vp + 2 * i + 4));
    // lane order (elem 0, 2, 1, 3)
    __m256d vr = _mm256_unpacklo_pd(c0, c1);
    __m256d vi = _mm256_unpackhi_pd(c0, c1);
    __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256d bidx = _mm256_setzero_pd();
    for (std::uint32_t l = 0; l < npoints; ++l) {
      __m256d score = _mm256_add_pd(_mm256_mul_pd(vr, _mm256_set1_pd(pre[l])),
                                    _mm256_mul_pd(vi, _mm256_set1_pd(pim[l])));
      __m256d gt = _mm256_cmp_pd(score, best, _CMP_GT_OQ);
      best = _mm256_blendv_pd(best, score, gt);
      bidx = _mm256_blendv_pd(bidx, _mm256_set1_pd(static_cast<double>(l)), gt);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, bidx);
    static constexpr int remap[4] = {0, 2, 1, 3};
    for (int lane = 0; lane < 4; ++lane) {
      const std::size_t elem = i + static_cast<std::size_t>(remap[lane]);
      const std::int32_t l = static_cast<std::int32_t>(lanes[lane]);
      out[elem] = points[l];
      if (idx != nullptr) idx[elem] = l;
    }
  }
  const double sgn = flip ? -1.0 : 1.0;
  for (; i < n; ++i) {
    std::uint32_t l =
        d::prox_index_elem(sgn * vp[2 * i], sgn * vp[2 * i + 1], pre, pim, npoints);
    out[i] = points[l];
    if (idx != nullptr) idx[i] = static_cast<std::int32_t>(l);
  }
}

double sumsq(const cplx* v, std::size_t n) {
  const double* vp = reals(v);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t total = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= total; i += 4) {
    __m256d x = _mm256_loadu_pd(vp + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  double total_d = _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; i < total; ++i) total_d += vp[i] * vp[i];
  return total_d;
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  const double* ap = reals(a);
  const double* bp = reals(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d av = conj_pd(_mm256_loadu_pd(ap + 2 * i));
    acc = _mm256_add_pd(acc, cmul_pair(av, _mm256_loadu_pd(bp + 2 * i)));
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  double accr = _mm_cvtsd_f64(s);
  double acci = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; i < n; ++i) {
    double pr, pi;
    d::cmulc(ap[2 * i], ap[2 * i + 1], bp[2 * i], bp[2 * i + 1], pr, pi);
    accr += pr;
    acci += pi;
  }
  return {accr, acci};
}

const KernelTable avx2_table = {
    "avx2",   butterfly,        scale,           cgemv,   cgemv_adj,  dir_scale,
    output_func, output_deriv_sum, inv_two_abs_sum, cmulsub, caxpy_real, mix,
    prox,     sumsq,            dotc,
};

}  // namespace

const KernelTable* avx2_kernels() {
  if (__builtin_cpu_supports("avx2")) return &avx2_table;
  return nullptr;
}

}

#else

namespace synth::kernels {

const KernelTable* avx2_kernels() { return nullptr; }

}

#endif
