#pragma once
// Doublon (eta) condensate on small fermionic lattices: construction of the
// N-doublon superposition state with checkerboard signs, verification of its
// eigenstate property, and dissipative preparation via exact evolution.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "latgas/fock.hpp"
#include "latgas/lindblad.hpp"
#include "latgas/ops.hpp"

namespace latgas {

struct EtaState {
  int N = 0;
  DVec amp;  // on FermionSector(lat, N, N)
};

// checkerboard sign (+1 on site 0)
inline int checkerboard_sign(const LatticeSpec& lat, int site) {
  auto c = lat.coords(site);
  int sum = 0;
  for (int ax = 0; ax < lat.d; ++ax) sum += c[ax];
  return (sum % 2 == 0) ? +1 : -1;
}

// Normalized (eta^dag)^N |vac> with eta^dag = sum_i phi_i f_{i,up}^dag f_{i,down}^dag / M^{d/2}.
inline EtaState build_eta_state(const LatticeSpec& lat, int N) {
  lat.validate();
  const int S = static_cast<int>(lat.n_sites());
  if (N < 1 || N > S) throw std::invalid_argument("build_eta_state: need 1 <= N <= M^d");
  // iterate sector by sector, applying eta^dag
  std::vector<FermionSector> secs;
  for (int k = 0; k <= N; ++k) secs.emplace_back(lat, k, k);
  DVec cur = DVec::Zero(secs[0].dim());
  cur[0] = 1.0;  // vacuum
  for (int k = 0; k < N; ++k) {
    const FermionSector& from = secs[k];
    const FermionSector& to = secs[k + 1];
    // index map for the target sector
    std::map<std::uint64_t, std::int64_t> idx;
    for (std::int64_t b = 0; b < to.dim(); ++b) {
      auto [up, dn] = to.config(b);
      idx[(std::uint64_t(up) << 32) | dn] = b;
    }
    DVec next = DVec::Zero(to.dim());
    for (std::int64_t b = 0; b < from.dim(); ++b) {
      if (cur[b] == cd(0.0, 0.0)) continue;
      auto [up, dn] = from.config(b);
      for (int i = 0; i < S; ++i) {
        FermionSector::Occ o{up, dn};
        int s1 = FermionSector::create(o, i, 1);  // f_{i,down}^dag first
        if (s1 == 0) continue;
        int s2 = FermionSector::create(o, i, 0);  // then f_{i,up}^dag
        if (s2 == 0) continue;
        const double sgn = double(s1 * s2 * checkerboard_sign(lat, i));
        next[idx[(std::uint64_t(o.up) << 32) | o.dn]] += cur[b] * sgn;
      }
    }
    cur = next / std::sqrt(double(S));
  }
  EtaState st;
  st.N = N;
  const double nrm = cur.norm();
  if (nrm == 0.0) throw std::runtime_error("build_eta_state: state vanished");
  st.amp = cur / nrm;
  return st;
}

// || H |psi> - N U |psi> ||
inline double verify_eigenstate(const FermionSector& sec, const EtaState& st,
                                const HubbardParams& p) {
  if (sec.dim() != st.amp.size())
    throw std::invalid_argument("verify_eigenstate: sector/state mismatch");
  SpMat H = build_hamiltonian(sec, p);
  return (H * st.amp - (double(st.N) * p.U) * st.amp).norm();
}

struct EtaConvergence {
  std::vector<double> times;
  std::vector<double> fidelity;  // <eta_N| rho(t) |eta_N>
  double eigen_residual = 0.0;
  int kernel_dimension = -1;  // -1: not computed (sector above cap)
  bool trace_drift_flag = false;
};

// Dissipative preparation from a given initial state (defaults to maximally
// mixed in the (N, N) sector).
inline EtaConvergence simulate_eta_convergence(const LatticeSpec& lat, int N,
                                               const HubbardParams& p, const JumpFamily& fam,
                                               const std::vector<double>& t_grid,
                                               const DMat* rho0 = nullptr, int cap_D = 64) {
  FermionSector sec(lat, N, N);
  EtaState target = build_eta_state(lat, N);
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, fam));
  DMat r0 = rho0 ? *rho0
                 : DMat(DMat::Identity(sec.dim(), sec.dim()) / double(sec.dim()));
  EvolveResult er = evolve(r0, H, pj, t_grid);
  EtaConvergence out;
  out.times = t_grid;
  out.trace_drift_flag = er.trace_drift_flag;
  for (const DMat& rho : er.snapshots)
    out.fidelity.push_back((target.amp.adjoint() * rho * target.amp).real()(0));
  out.eigen_residual = verify_eigenstate(sec, target, p);
  if (sec.dim() <= cap_D) out.kernel_dimension = steady_state(H, pj, cap_D).kernel_dimension;
  return out;
}

}  // namespace latgas
