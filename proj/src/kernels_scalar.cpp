// Scalar reference kernels. These are the ground truth the SIMD variants are
// equivalence-tested against; keep them simple and obviously correct.

#include <cmath>

#include "latgas/kernels.hpp"

namespace latgas::kernels {

void mode_step_scalar(std::size_t n, const ModeBatch& mb, double t, double* x, double* yr) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ph = 4.0 * mb.E[i] * t;
    const double dec = std::exp(-4.0 * mb.kq[i] * t);
    const double w = mb.w0[i] * std::cos(ph) + mb.E[i] * mb.u30[i] * std::sin(ph);
    x[i] = mb.xs[i] + dec * (mb.A[i] * mb.c1[i] - mb.P[i] * w) * mb.invE2[i];
    yr[i] = mb.yrs[i] + dec * (mb.A[i] * w - mb.P[i] * mb.c1[i]) * mb.invE2[i];
  }
}

double dot_scalar(std::size_t n, const double* a, const double* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace latgas::kernels
