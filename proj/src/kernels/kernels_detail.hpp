#pragma once

// Per-element operations shared between the scalar reference kernels and
// the tail handling of the SIMD variants. Both paths must round
// identically, so everything here is written as explicit mul/add/div
// steps (the build disables fp contraction globally).

#include <cmath>
#include <cstdint>
#include <limits>

#include "synth/kernels.hpp"

namespace synth::kernels::detail {

inline double clamped_abs(double re, double im) {
  double r = std::sqrt(re * re + im * im);
  return r < kClampEps ? kClampEps : r;
}

inline void unit_dir(double re, double im, double& dre, double& dim) {
  double a2 = re * re + im * im;
  if (a2 == 0.0) {
    dre = 1.0;
    dim = 0.0;
    return;
  }
  double r = std::sqrt(a2);
  dre = re / r;
  dim = im / r;
}

inline void cmul(double ar, double ai, double br, double bi, double& cr, double& ci) {
  cr = ar * br - ai * bi;
  ci = ar * bi + ai * br;
}

// conj(a) * b
inline void cmulc(double ar, double ai, double br, double bi, double& cr, double& ci) {
  cr = ar * br + ai * bi;
  ci = ar * bi - ai * br;
}

inline void output_func_elem(double ur, double ui, double sd, double th, double& zr,
                             double& zi) {
  double dr, di;
  unit_dir(ur, ui, dr, di);
  double den = 1.0 + th;
  zr = (sd * dr - ur) / den;
  zi = (sd * di - ui) / den;
}

inline double output_deriv_elem(double ur, double ui, double sd, double th) {
  double m = clamped_abs(ur, ui);
  return (1.0 - sd / (2.0 * m)) / (1.0 + th);
}

inline double inv_two_abs_elem(double vr, double vi) {
  return 1.0 / (2.0 * clamped_abs(vr, vi));
}

// Nearest point maximizes Re(v conj(p)); strict > with ascending index
// gives the lowest-index tie break.
inline std::uint32_t prox_index_elem(double vr, double vi, const double* pre,
                                     const double* pim, std::uint32_t np) {
  double best = -std::numeric_limits<double>::infinity();
  std::uint32_t bi = 0;
  for (std::uint32_t l = 0; l < np; ++l) {
    double score = vr * pre[l] + vi * pim[l];
    if (score > best) {
      best = score;
      bi = l;
    }
  }
  return bi;
}

}
