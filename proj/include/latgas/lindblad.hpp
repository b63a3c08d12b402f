#pragma once
// Master-equation machinery on a Fock sector: Liouvillian application,
// adaptive time evolution, steady states via the vectorized null space,
// dark-state diagnostics and scalar observables.
//
// Convention: drho/dt = -i[H, rho] + sum_l kappa_l (2 c_l rho c_l^dag
//                                    - c_l^dag c_l rho - rho c_l^dag c_l)
// (rate multiplies the form with factor 2 on the sandwich term).

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>
#include <complex>
#include <stdexcept>
#include <vector>

#include "latgas/fock.hpp"
#include "latgas/ops.hpp"

namespace latgas {

struct PreparedJumps {
  std::vector<SpMat> c;        // jump operators
  std::vector<SpMat> cdc;      // c^dag c
  std::vector<double> rate;
};

inline PreparedJumps prepare_jumps(const std::vector<JumpOp>& jumps) {
  PreparedJumps pj;
  for (const auto& j : jumps) {
    pj.c.push_back(j.op);
    pj.cdc.push_back(SpMat(j.op.adjoint() * j.op).pruned());
    pj.rate.push_back(j.rate);
  }
  return pj;
}

inline DMat liouvillian_apply(const DMat& rho, const SpMat& H, const PreparedJumps& pj) {
  if (rho.rows() != H.rows() || rho.cols() != H.cols())
    throw std::invalid_argument("liouvillian_apply: dimension mismatch");
  DMat out = cd(0, -1) * (H * rho - rho * H);
  for (std::size_t l = 0; l < pj.c.size(); ++l) {
    const double k = pj.rate[l];
    if (k == 0.0) continue;
    out += k * (2.0 * (pj.c[l] * rho * pj.c[l].adjoint().eval()) - pj.cdc[l] * rho - rho * pj.cdc[l]);
  }
  return out;
}

// Dense D^2 x D^2 vectorized Liouvillian (column-major vec convention).
inline DMat build_liouvillian_matrix(const SpMat& H, const PreparedJumps& pj) {
  const std::int64_t D = H.rows();
  const std::int64_t D2 = D * D;
  DMat L = DMat::Zero(D2, D2);
  DMat Hd = DMat(H);
  DMat I = DMat::Identity(D, D);
  auto kron = [&](const DMat& A, const DMat& B) {
    DMat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (std::int64_t i = 0; i < A.rows(); ++i)
      for (std::int64_t j = 0; j < A.cols(); ++j)
        K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
  };
  L += cd(0, -1) * (kron(I, Hd) - kron(Hd.transpose(), I));
  for (std::size_t l = 0; l < pj.c.size(); ++l) {
    const double k = pj.rate[l];
    if (k == 0.0) continue;
    DMat C = DMat(pj.c[l]);
    DMat CdC = DMat(pj.cdc[l]);
    L += k * (2.0 * kron(C.conjugate(), C) - kron(I, CdC) - kron(CdC.transpose(), I));
  }
  return L;
}

struct EvolveOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double trace_drift_tol = 1e-9;  // drift beyond this is flagged, not corrected
};

struct EvolveResult {
  std::vector<DMat> snapshots;
  bool trace_drift_flag = false;
  double max_trace_drift = 0.0;
};

// Adaptive dopri5 evolution sampled at t_grid (must be increasing, t_grid[0] >= 0).
inline EvolveResult evolve(const DMat& rho0, const SpMat& H, const PreparedJumps& pj,
                           const std::vector<double>& t_grid,
                           const EvolveOptions& opt = {}) {
  namespace ode = boost::numeric::odeint;
  const std::int64_t D = rho0.rows();
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1]) throw std::invalid_argument("evolve: t_grid must increase");

  using state_type = std::vector<cd>;
  state_type y(D * D);
  Eigen::Map<DMat>(y.data(), D, D) = rho0;

  auto rhs = [&](const state_type& s, state_type& dsdt, double) {
    Eigen::Map<const DMat> r(s.data(), D, D);
    dsdt.resize(s.size());
    Eigen::Map<DMat>(dsdt.data(), D, D) = liouvillian_apply(DMat(r), H, pj);
  };

  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<state_type>>(opt.abs_tol, opt.rel_tol);
  EvolveResult res;
  double t = 0.0;
  for (double tk : t_grid) {
    if (tk > t) {
      ode::integrate_adaptive(stepper, rhs, y, t, tk, (tk - t) / 100.0);
      t = tk;
    }
    DMat snap = Eigen::Map<DMat>(y.data(), D, D);
    double drift = std::abs(snap.trace().real() - 1.0) + std::abs(snap.trace().imag());
    res.max_trace_drift = std::max(res.max_trace_drift, drift);
    if (drift > opt.trace_drift_tol) res.trace_drift_flag = true;
    res.snapshots.push_back(std::move(snap));
  }
  return res;
}

struct SteadyStateResult {
  DMat rho;
  int kernel_dimension = 0;
  double smallest_nonkernel_abs = 0.0;
};

// Null space of the vectorized Liouvillian. Sector dimension capped (default
// D <= 64, i.e. a 4096^2 dense eigenproblem).
inline SteadyStateResult steady_state(const SpMat& H, const PreparedJumps& pj, int cap_D = 64) {
  const std::int64_t D = H.rows();
  if (D > cap_D)
    throw std::invalid_argument("steady_state: sector dimension exceeds cap; use evolve-to-convergence");
  DMat L = build_liouvillian_matrix(H, pj);
  Eigen::ComplexEigenSolver<DMat> es(L);
  if (es.info() != Eigen::Success) throw std::runtime_error("steady_state: eigensolver failed");
  const double thr = 1e-10 * L.norm();
  SteadyStateResult res;
  int best = -1;
  double best_abs = 1e300;
  double smallest_out = 1e300;
  for (std::int64_t i = 0; i < L.rows(); ++i) {
    double a = std::abs(es.eigenvalues()[i]);
    if (a <= thr) {
      res.kernel_dimension += 1;
      if (a < best_abs) { best_abs = a; best = static_cast<int>(i); }
    } else {
      smallest_out = std::min(smallest_out, a);
    }
  }
  res.smallest_nonkernel_abs = smallest_out;
  if (best < 0) throw std::runtime_error("steady_state: no kernel vector found");
  DVec v = es.eigenvectors().col(best);
  DMat rho = Eigen::Map<DMat>(v.data(), D, D);
  rho = DMat(0.5 * (rho + rho.adjoint().eval()));
  cd tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw std::runtime_error("steady_state: traceless kernel vector");
  rho /= tr;
  res.rho = rho;
  return res;
}

struct DarkStateReport {
  double annihilation_residual = 0.0;  // max_l ||c_l |D>||
  double hamiltonian_residual = 0.0;   // ||H|D> - E|D>||, E = <D|H|D>
  bool dark = false;
};

inline DarkStateReport dark_state_check(const DVec& state, const SpMat& H, const PreparedJumps& pj,
                                        double tol = 1e-10) {
  DarkStateReport rep;
  for (const auto& c : pj.c) rep.annihilation_residual = std::max(rep.annihilation_residual, (c * state).norm());
  cd E = state.adjoint() * (H * state);
  rep.hamiltonian_residual = (H * state - E * state).norm();
  rep.dark = rep.annihilation_residual <= tol && rep.hamiltonian_residual <= tol;
  return rep;
}

struct Observables {
  double condensate_fraction = 0.0;
  double purity = 0.0;
  double total_N = 0.0;
  double fidelity = 0.0;  // vs a caller-provided target state (0 if none)
};

inline Observables observables(const DMat& rho, const BosonSector& sec,
                               const DVec* target = nullptr) {
  Observables o;
  static thread_local std::map<const BosonSector*, DMat> cache;
  auto it = cache.find(&sec);
  if (it == cache.end()) it = cache.emplace(&sec, sec.momentum_number({0, 0, 0})).first;
  o.condensate_fraction = ((it->second * rho).trace().real()) / std::max(1, sec.N());
  o.purity = (rho * rho).trace().real();
  o.total_N = 0.0;
  for (int s = 0; s < sec.n_sites(); ++s) o.total_N += (DMat(sec.hop(s, s)) * rho).trace().real();
  if (target) o.fidelity = ((*target).adjoint() * rho * (*target)).real()(0);
  return o;
}

}  // namespace latgas
