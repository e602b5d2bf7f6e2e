// Reference kernels. Deliberately plain loops over explicit re/im pairs:
// these define the semantics the SIMD variants are tested against.

#include "kernels_detail.hpp"
#include "synth/kernels.hpp"

namespace synth::kernels {
namespace {

namespace d = detail;

inline const double* reals(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* reals(cplx* p) { return reinterpret_cast<double*>(p); }

void butterfly(cplx* hi, cplx* lo, cplx w, std::size_t n) {
  double* h = reals(hi);
  double* l = reals(lo);
  const double wr = w.real(), wi = w.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double tr, ti;
    d::cmul(wr, wi, l[2 * i], l[2 * i + 1], tr, ti);
    l[2 * i] = h[2 * i] - tr;
    l[2 * i + 1] = h[2 * i + 1] - ti;
    h[2 * i] = h[2 * i] + tr;
    h[2 * i + 1] = h[2 * i + 1] + ti;
  }
}

void scale(cplx* v, cplx s, std::size_t n) {
  double* p = reals(v);
  const double sr = s.real(), si = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double r, m;
    d::cmul(sr, si, p[2 * i], p[2 * i + 1], r, m);
    p[2 * i] = r;
    p[2 * i + 1] = m;
  }
}

void cgemv(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  const double* ap = reals(a);
  const double* xp = reals(x);
  double* yp = reals(y);
  for (std::size_t r = 0; r < rows; ++r) {
    double accr = 0.0, acci = 0.0;
    const double* row = ap + 2 * r * cols;
    for (std::size_t c = 0; c < cols; ++c) {
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
    const double zr = zp[2 * r], zi = zp[2 * r + 1];
    for (std::size_t c = 0; c < cols; ++c) {
      double pr, pi;
      d::cmulc(row[2 * c], row[2 * c + 1], zr, zi, pr, pi);
      op[2 * c] += pr;
      op[2 * c + 1] += pi;
    }
  }
}

void dir_scale(cplx* out, const cplx* y, const double* amp, std::size_t n) {
  double* op = reals(out);
  const double* yp = reals(y);
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) {
    d::output_func_elem(up[2 * i], up[2 * i + 1], sqrt_d[i], theta[i], zp[2 * i],
                        zp[2 * i + 1]);
  }
}

double output_deriv_sum(const cplx* u, const double* sqrt_d, const double* theta,
                        std::size_t n) {
  const double* up = reals(u);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += d::output_deriv_elem(up[2 * i], up[2 * i + 1], sqrt_d[i], theta[i]);
  }
  return acc;
}

double inv_two_abs_sum(const cplx* v, std::size_t n) {
  const double* vp = reals(v);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += d::inv_two_abs_elem(vp[2 * i], vp[2 * i + 1]);
  }
  return acc;
}

void cmulsub(cplx* out, const cplx* a, const double* t, const cplx* z, std::size_t n) {
  double* op = reals(out);
  const double* ap = reals(a);
  const double* zp = reals(z);
  for (std::size_t i = 0; i < n; ++i) {
    op[2 * i] = ap[2 * i] - t[i] * zp[2 * i];
    op[2 * i + 1] = ap[2 * i + 1] - t[i] * zp[2 * i + 1];
  }
}

void caxpy_real(cplx* out, const cplx* a, const double* w, const cplx* x, std::size_t n) {
  double* op = reals(out);
  const double* ap = reals(a);
  const double* xp = reals(x);
  for (std::size_t i = 0; i < n; ++i) {
    op[2 * i] = ap[2 * i] + w[i] * xp[2 * i];
    op[2 * i + 1] = ap[2 * i + 1] + w[i] * xp[2 * i + 1];
  }
}

void mix(cplx* x, const cplx* raw, double mu, std::size_t n) {
  double* xp = reals(x);
  const double* rp = reals(raw);
  const double om = 1.0 - mu;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    xp[i] = om * xp[i] + mu * rp[i];
  }
}

void prox(const cplx* v, bool flip, const double* pre, const double* pim,
          std::uint32_t npoints, const cplx* points, cplx* out, std::int32_t* idx,
          std::size_t n) {
  const double* vp = reals(v);
  const double sgn = flip ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t l =
        d::prox_index_elem(sgn * vp[2 * i], sgn * vp[2 * i + 1], pre, pim, npoints);
    out[i] = points[l];
    if (idx != nullptr) idx[i] = static_cast<std::int32_t>(l);
  }
}

double sumsq(const cplx* v, std::size_t n) {
  const double* vp = reals(v);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += vp[2 * i] * vp[2 * i] + vp[2 * i + 1] * vp[2 * i + 1];
  }
  return acc;
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  const double* ap = reals(a);
  const double* bp = reals(b);
  double accr = 0.0, acci = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pr, pi;
    d::cmulc(ap[2 * i], ap[2 * i + 1], bp[2 * i], bp[2 * i + 1], pr, pi);
    accr += pr;
    acci += pi;
  }
  return {accr, acci};
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table = {
      "scalar", butterfly,   scale,      cgemv, cgemv_adj, dir_scale, output_func,
      output_deriv_sum, inv_two_abs_sum, cmulsub, caxpy_real, mix, prox, sumsq, dotc,
  };
  return table;
}

}
