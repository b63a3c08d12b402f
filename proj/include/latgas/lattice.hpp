#pragma once
// Lattice geometry, link enumeration, Bloch energies and the quasimomentum
// mode grid for periodic hypercubic lattices.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latgas {

enum class Boundary { Periodic, Open };

struct LatticeSpec {
  int d = 1;          // spatial dimension, 1..3
  int M = 2;          // sites per axis
  double a = 1.0;     // lattice spacing
  Boundary boundary = Boundary::Periodic;

  void validate() const {
    if (d < 1 || d > 3) throw std::invalid_argument("LatticeSpec: d must be 1, 2 or 3");
    if (M < 2) throw std::invalid_argument("LatticeSpec: M must be >= 2");
    if (a <= 0) throw std::invalid_argument("LatticeSpec: a must be > 0");
  }

  std::int64_t n_sites() const {
    std::int64_t s = 1;
    for (int k = 0; k < d; ++k) s *= M;
    return s;
  }

  // site index <-> coordinate (axis-0 fastest)
  std::array<int, 3> coords(std::int64_t site) const {
    std::array<int, 3> c{0, 0, 0};
    for (int k = 0; k < d; ++k) { c[k] = static_cast<int>(site % M); site /= M; }
    return c;
  }
  std::int64_t site_of(const std::array<int, 3>& c) const {
    std::int64_t s = 0;
    for (int k = d - 1; k >= 0; --k) {
      int ck = ((c[k] % M) + M) % M;
      s = s * M + ck;
    }
    return s;
  }
};

struct Link {
  std::int64_t i, j;  // ordered pair (i, j = i + e_axis)
  int axis;
};

// Every nearest-neighbour bond once, site-major then axis. Periodic lattices
// include wrap-around bonds; for M = 2 this counts the doubled connection of
// the 2-ring twice (one bond per ordered (site, axis) pair), so the hopping
// part of a 2-site ring has eigenvalues -/+ 2J. Open boundaries are supported
// in 1D (chain with M-1 links).
inline std::vector<Link> enumerate_links(const LatticeSpec& lat) {
  lat.validate();
  std::vector<Link> out;
  const std::int64_t Ns = lat.n_sites();
  if (lat.boundary == Boundary::Open && lat.d != 1)
    throw std::invalid_argument("enumerate_links: open boundary supported in 1D only");
  for (std::int64_t s = 0; s < Ns; ++s) {
    auto c = lat.coords(s);
    for (int ax = 0; ax < lat.d; ++ax) {
      if (lat.boundary == Boundary::Open && c[ax] == lat.M - 1) continue;
      auto cj = c;
      cj[ax] = (cj[ax] + 1) % lat.M;
      out.push_back(Link{s, lat.site_of(cj), ax});
    }
  }
  return out;
}

// Single-particle Bloch energy eps_q = 2 J sum_axis sin^2(q_axis * a / 2).
// (Bandwidth 2J per axis by this convention.)
inline double bloch_energy(const std::array<double, 3>& q, int d, double J, double a = 1.0) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    double h = std::sin(q[k] * a / 2.0);
    s += h * h;
  }
  return 2.0 * J * s;
}

// sum_axis sin^2(pi k_axis / M) for integer grid point k; the scalar every
// mode quantity depends on.
inline double sin2_sum(const std::array<int, 3>& k, int d, int M) {
  double s = 0.0;
  for (int ax = 0; ax < d; ++ax) {
    double h = std::sin(M_PI * k[ax] / M);
    s += h * h;
  }
  return s;
}

struct ModeIndex {
  std::array<int, 3> k{0, 0, 0};  // q = 2*pi*k/(M*a), components mapped to (-pi, pi]
  int sigma = +1;                 // parity label; (q,sigma) ~ (-q,sigma)
  std::array<double, 3> q(int d, int M, double a = 1.0) const {
    std::array<double, 3> out{0, 0, 0};
    for (int ax = 0; ax < d; ++ax) {
      int kk = k[ax] % M;
      if (kk > M / 2) kk -= M;           // fold to (-M/2, M/2]
      out[ax] = 2.0 * M_PI * kk / (M * a);
    }
    return out;
  }
};

// Deduplicated (q, sigma) enumeration: each unordered {q,-q} pair appears via
// one canonical representative with sigma = +1 and -1; self-paired momenta
// (all components 0 or pi) appear once with sigma = +1. Total mode count
// equals M^d (or M^d - 1 with exclude_zero).
inline std::vector<ModeIndex> mode_grid(const LatticeSpec& lat, bool exclude_zero) {
  lat.validate();
  if (lat.boundary != Boundary::Periodic)
    throw std::invalid_argument("mode_grid: momentum representation requires periodic boundary");
  const int M = lat.M;
  std::vector<ModeIndex> out;
  std::array<int, 3> k{0, 0, 0};
  auto is_zero = [&](const std::array<int, 3>& kk) {
    for (int ax = 0; ax < lat.d; ++ax) if (kk[ax] % M != 0) return false;
    return true;
  };
  auto neg = [&](const std::array<int, 3>& kk) {
    std::array<int, 3> nn{0, 0, 0};
    for (int ax = 0; ax < lat.d; ++ax) nn[ax] = (M - kk[ax]) % M;
    return nn;
  };
  auto lex_le = [&](const std::array<int, 3>& x, const std::array<int, 3>& y) {
    for (int ax = lat.d - 1; ax >= 0; --ax) {
      if (x[ax] != y[ax]) return x[ax] < y[ax];
    }
    return true;
  };
  std::int64_t Ns = lat.n_sites();
  for (std::int64_t flat = 0; flat < Ns; ++flat) {
    std::int64_t f = flat;
    for (int ax = 0; ax < lat.d; ++ax) { k[ax] = static_cast<int>(f % M); f /= M; }
    if (is_zero(k)) { if (!exclude_zero) out.push_back(ModeIndex{k, +1}); continue; }
    auto nk = neg(k);
    if (nk == k) { out.push_back(ModeIndex{k, +1}); continue; }  // self-paired
    if (lex_le(k, nk)) {
      out.push_back(ModeIndex{k, +1});
      out.push_back(ModeIndex{k, -1});
    }
  }
  return out;
}

}  // namespace latgas
