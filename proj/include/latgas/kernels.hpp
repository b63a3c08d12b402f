#pragma once
// Hot-loop kernels for the linearized solvers: batched closed-form propagation
// of per-mode second moments and weighted reductions. A scalar reference
// implementation and an AVX2 variant are provided; the active variant is
// selected at runtime (CPUID, overridable via LATGAS_KERNELS=scalar|avx2 or
// set_kernel). Both variants are equivalence-tested against each other.

#include <cstddef>
#include <string>

namespace latgas::kernels {

// Structure-of-arrays constants for a batch of independent damped modes.
// Each mode obeys the linear second-moment system whose deviation from the
// fixed point evolves as
//   dx(t)  = e^{-4 kq t} (A*c1 - P*w(t)) / E^2
//   dyr(t) = e^{-4 kq t} (A*w(t) - P*c1) / E^2
//   w(t)   = w0*cos(4 E t) + E*u30*sin(4 E t)
// with E^2 = A^2 - P^2 > 0, c1 = A*dx(0) + P*dyr(0) (conserved up to the
// overall damping factor), w0 = P*dx(0) + A*dyr(0), u30 = dyi(0).
struct ModeBatch {
  const double* A;
  const double* P;
  const double* kq;
  const double* E;      // sqrt(A^2 - P^2), must be > 0
  const double* invE2;  // 1 / E^2
  const double* xs;     // fixed-point x
  const double* yrs;    // fixed-point Re y
  const double* c1;
  const double* w0;
  const double* u30;
};

// Writes x(t) and Re y(t) for every mode. x/yr may alias nothing in mb.
using ModeStepFn = void (*)(std::size_t n, const ModeBatch& mb, double t,
                            double* x, double* yr);

// sum_i a[i] * b[i]
using DotFn = double (*)(std::size_t n, const double* a, const double* b);

ModeStepFn mode_step();
DotFn dot();

const char* active_name();
// name: "auto" (default), "scalar", or "avx2"; throws if unavailable.
void set_kernel(const std::string& name);

// Implementations (exposed for direct equivalence testing).
void mode_step_scalar(std::size_t n, const ModeBatch& mb, double t, double* x, double* yr);
double dot_scalar(std::size_t n, const double* a, const double* b);
bool avx2_available();
void mode_step_avx2(std::size_t n, const ModeBatch& mb, double t, double* x, double* yr);
double dot_avx2(std::size_t n, const double* a, const double* b);

}  // namespace latgas::kernels
