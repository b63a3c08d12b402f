#pragma once
// Hamiltonians and jump-operator families on Fock sectors.

#include <complex>
#include <stdexcept>
#include <vector>

#include "latgas/fock.hpp"
#include "latgas/lattice.hpp"
#include "latgas/params.hpp"

namespace latgas {

struct JumpOp {
  SpMat op;
  double rate;
};

// ---- bosonic Hubbard Hamiltonian:
//   H = -J sum_links (a_i^dag a_j + a_j^dag a_i) + (U/2) sum_i n_i (n_i - 1)
inline SpMat build_hamiltonian(const BosonSector& sec, const HubbardParams& p) {
  p.validate();
  SpMat H(sec.dim(), sec.dim());
  for (const auto& ln : enumerate_links(sec.lattice())) {
    H -= p.J * sec.hop(static_cast<int>(ln.i), static_cast<int>(ln.j));
    H -= p.J * sec.hop(static_cast<int>(ln.j), static_cast<int>(ln.i));
  }
  H += sec.interaction(p.U);
  return H;
}

// ---- two-species fermionic Hubbard Hamiltonian:
//   H = -J sum_links sum_spin (f_i^dag f_j + h.c.) + U sum_i n_up n_down
inline SpMat build_hamiltonian(const FermionSector& sec, const HubbardParams& p) {
  p.validate();
  SpMat H(sec.dim(), sec.dim());
  for (const auto& ln : enumerate_links(sec.lattice())) {
    for (int sp = 0; sp < 2; ++sp) {
      H -= p.J * sec.hop(static_cast<int>(ln.i), sp, static_cast<int>(ln.j), sp);
      H -= p.J * sec.hop(static_cast<int>(ln.j), sp, static_cast<int>(ln.i), sp);
    }
  }
  for (int s = 0; s < sec.n_sites(); ++s) {
    SpMat nn = (sec.number(s, 0) * sec.number(s, 1)).pruned();
    H += p.U * nn;
  }
  return H;
}

// ---- bosonic jump families -------------------------------------------------

// LinkBEC: one c = (a_i^dag + a_j^dag)(a_i - a_j) per link, common rate.
inline std::vector<JumpOp> jumps_link_bec(const BosonSector& sec, double kappa) {
  std::vector<JumpOp> out;
  for (const auto& ln : enumerate_links(sec.lattice())) {
    int i = static_cast<int>(ln.i), j = static_cast<int>(ln.j);
    SpMat c = sec.hop(i, i) - sec.hop(i, j) + sec.hop(j, i) - sec.hop(j, j);
    out.push_back({c, kappa});
  }
  return out;
}

// MomentumBEC: c_{q,axis} = M^{-d/2} sum_k (1 + e^{i(k-q).e})(1 - e^{-ik.e})
//              a^dag_{k-q} a_k, one per (q, axis), common rate.
inline std::vector<JumpOp> jumps_momentum_bec(const BosonSector& sec, double kappa) {
  const LatticeSpec& lat = sec.lattice();
  if (lat.boundary != Boundary::Periodic)
    throw std::invalid_argument("MomentumBEC requires periodic boundary");
  const int S = sec.n_sites();
  const int M = lat.M;
  // site-basis bilinear of a^dag_p a_k with a_k = S^{-1/2} sum_l e^{-i k.r_l} a_l
  std::vector<JumpOp> out;
  std::vector<SpMat> hops(S * S);
  for (int i = 0; i < S; ++i)
    for (int j = 0; j < S; ++j) hops[i * S + j] = sec.hop(i, j);
  auto phase = [&](const std::array<int, 3>& k, const std::array<int, 3>& r) {
    double ph = 0.0;
    for (int ax = 0; ax < lat.d; ++ax) ph += 2.0 * M_PI * k[ax] * r[ax] / M;
    return ph;
  };
  for (std::int64_t qf = 0; qf < S; ++qf) {
    std::array<int, 3> kq{0, 0, 0};
    { std::int64_t f = qf; for (int ax = 0; ax < lat.d; ++ax) { kq[ax] = int(f % M); f /= M; } }
    for (int axis = 0; axis < lat.d; ++axis) {
      SpMat c(sec.dim(), sec.dim());
      for (std::int64_t kf = 0; kf < S; ++kf) {
        std::array<int, 3> kk{0, 0, 0};
        { std::int64_t f = kf; for (int ax = 0; ax < lat.d; ++ax) { kk[ax] = int(f % M); f /= M; } }
        double kqe = 2.0 * M_PI * (kk[axis] - kq[axis]) / M;
        double ke = 2.0 * M_PI * kk[axis] / M;
        cd f1 = cd(1.0, 0.0) + std::exp(cd(0.0, kqe));
        cd f2 = cd(1.0, 0.0) - std::exp(cd(0.0, -ke));
        cd coef = f1 * f2;
        if (std::abs(coef) < 1e-15) continue;
        // a^dag_{k-q} a_k = (1/S) sum_{j,l} e^{+i(k-q).r_j} e^{-i k.r_l} a_j^dag a_l
        std::array<int, 3> kmq{0, 0, 0};
        for (int ax = 0; ax < lat.d; ++ax) kmq[ax] = ((kk[ax] - kq[ax]) % M + M) % M;
        for (int j = 0; j < S; ++j) {
          auto rj = lat.coords(j);
          for (int l = 0; l < S; ++l) {
            auto rl = lat.coords(l);
            cd ph = std::exp(cd(0.0, phase(kmq, rj) - phase(kk, rl)));
            c += (coef * ph / double(S)) * hops[j * S + l];
          }
        }
      }
      c = (c / std::sqrt(double(S))).pruned(1e-14);
      out.push_back({c, kappa});
    }
  }
  return out;
}

// LambdaV (1D superlattice effective operators):
//   C_{lambda(j,+-)} = (a_j^dag +- a_{j+1}^dag)(a_j - a_{j+1})/2     rate kappa^L_+-
//   C_{v(j,+)}       = a_j^dag(-a_{j-1} + 2 a_j - a_{j+1})/2         rate kappa^V_+
//   C_{v(j,-)}       = a_j^dag(-a_{j-1} + a_{j+1})/2                 rate kappa^V_-
inline std::vector<JumpOp> jumps_lambda_v(const BosonSector& sec, const JumpFamily& fam) {
  const LatticeSpec& lat = sec.lattice();
  if (lat.d != 1) throw std::invalid_argument("LambdaV family is defined on 1D lattices");
  const int M = lat.M;
  const bool per = lat.boundary == Boundary::Periodic;
  std::vector<JumpOp> out;
  auto site = [&](int j) { return ((j % M) + M) % M; };
  for (int j = 0; j < (per ? M : M - 1); ++j) {  // links
    int jp = site(j + 1);
    SpMat apam = sec.hop(j, j) - sec.hop(j, jp) + sec.hop(jp, j) - sec.hop(jp, jp);
    SpMat amam = sec.hop(j, j) - sec.hop(j, jp) - sec.hop(jp, j) + sec.hop(jp, jp);
    out.push_back({SpMat(0.5 * apam), fam.kappa_lambda_plus});
    out.push_back({SpMat(0.5 * amam), fam.kappa_lambda_minus});
  }
  for (int j = 0; j < M; ++j) {  // vertices needing both neighbours
    if (!per && (j == 0 || j == M - 1)) continue;
    int jm = site(j - 1), jp = site(j + 1);
    SpMat cvp = -sec.hop(j, jm) + 2.0 * sec.hop(j, j) - sec.hop(j, jp);
    SpMat cvm = -sec.hop(j, jm) + sec.hop(j, jp);
    out.push_back({SpMat(0.5 * cvp), fam.kappa_v_plus});
    out.push_back({SpMat(0.5 * cvm), fam.kappa_v_minus});
  }
  return out;
}

// ---- fermionic eta family --------------------------------------------------

// Number-conserving doublon bilinear eta_i^dag eta_j = f_{i,up}^dag f_{i,down}^dag f_{j,down} f_{j,up}.
inline SpMat eta_bilinear(const FermionSector& sec, int i, int j) {
  std::vector<Eigen::Triplet<cd>> trip;
  std::map<std::uint64_t, std::int64_t> idx;
  for (std::int64_t b = 0; b < sec.dim(); ++b) {
    auto [up, dn] = sec.config(b);
    idx[(std::uint64_t(up) << 32) | dn] = b;
  }
  for (std::int64_t b = 0; b < sec.dim(); ++b) {
    auto [up, dn] = sec.config(b);
    FermionSector::Occ o{up, dn};
    int s = 1;
    int t = FermionSector::annihilate(o, j, 0); if (t == 0) continue; s *= t;   // f_{j,up}
    t = FermionSector::annihilate(o, j, 1); if (t == 0) continue; s *= t;       // f_{j,down}
    t = FermionSector::create(o, i, 1); if (t == 0) continue; s *= t;           // f_{i,down}^dag
    t = FermionSector::create(o, i, 0); if (t == 0) continue; s *= t;           // f_{i,up}^dag
    trip.emplace_back(idx[(std::uint64_t(o.up) << 32) | o.dn], b, cd(double(s), 0.0));
  }
  SpMat m(sec.dim(), sec.dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

// EtaFermion jumps per link:
//   c1 = (eta_i^dag - eta_j^dag)(eta_i + eta_j)                      rate kappa1
//   c2 = n_{i,up} f_{i,down}^dag f_{j,down} + n_{j,up} f_{j,down}^dag f_{i,down}   rate kappa2
inline std::vector<JumpOp> jumps_eta_fermion(const FermionSector& sec, const JumpFamily& fam) {
  std::vector<JumpOp> out;
  for (const auto& ln : enumerate_links(sec.lattice())) {
    int i = static_cast<int>(ln.i), j = static_cast<int>(ln.j);
    SpMat c1 = eta_bilinear(sec, i, i) + eta_bilinear(sec, i, j)
             - eta_bilinear(sec, j, i) - eta_bilinear(sec, j, j);
    SpMat c2 = (sec.number(i, 0) * sec.hop(i, 1, j, 1)).pruned()
             + (sec.number(j, 0) * sec.hop(j, 1, i, 1)).pruned();
    out.push_back({c1, fam.kappa1});
    out.push_back({c2, fam.kappa2});
  }
  return out;
}

// ---- dispatch --------------------------------------------------------------

inline std::vector<JumpOp> build_jump_operators(const BosonSector& sec, const JumpFamily& fam) {
  fam.validate();
  switch (fam.kind) {
    case JumpKind::LinkBEC: return jumps_link_bec(sec, fam.kappa);
    case JumpKind::MomentumBEC: return jumps_momentum_bec(sec, fam.kappa);
    case JumpKind::LambdaV: return jumps_lambda_v(sec, fam);
    case JumpKind::EtaFermion:
      throw std::invalid_argument("EtaFermion family requires a fermionic sector");
  }
  throw std::logic_error("unreachable");
}

inline std::vector<JumpOp> build_jump_operators(const FermionSector& sec, const JumpFamily& fam) {
  fam.validate();
  if (fam.kind != JumpKind::EtaFermion)
    throw std::invalid_argument("fermionic sectors support only the EtaFermion family");
  return jumps_eta_fermion(sec, fam);
}

}  // namespace latgas
