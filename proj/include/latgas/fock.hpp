#pragma once
// Fixed-particle-number Fock sectors: bosonic compositions and two-species
// fermionic bitmask bases with Jordan-Wigner sign bookkeeping.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "latgas/lattice.hpp"

namespace latgas {

using cd = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cd>;
using DMat = Eigen::MatrixXcd;
using DVec = Eigen::VectorXcd;

// ---------------------------------------------------------------- bosons ---

class BosonSector {
 public:
  BosonSector(const LatticeSpec& lat, int N) : lat_(lat), N_(N) {
    lat.validate();
    if (N < 0) throw std::invalid_argument("BosonSector: N must be >= 0");
    sites_ = static_cast<int>(lat.n_sites());
    std::vector<int> cfg(sites_, 0);
    enumerate(cfg, 0, N);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<std::int64_t>(i);
  }

  int n_sites() const { return sites_; }
  int N() const { return N_; }
  const LatticeSpec& lattice() const { return lat_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(basis_.size()); }
  const std::vector<int>& config(std::int64_t idx) const { return basis_[idx]; }

  std::int64_t index_of(const std::vector<int>& cfg) const {
    auto it = index_.find(cfg);
    return it == index_.end() ? -1 : it->second;
  }

  // Matrix of a_i^dag a_j on the sector (i == j gives the number operator).
  SpMat hop(int i, int j) const {
    std::vector<Eigen::Triplet<cd>> trip;
    for (std::int64_t b = 0; b < dim(); ++b) {
      const auto& c = basis_[b];
      if (c[j] == 0) continue;
      if (i == j) { trip.emplace_back(b, b, cd(double(c[j]), 0.0)); continue; }
      std::vector<int> c2 = c;
      double amp = std::sqrt(double(c2[j]));
      c2[j] -= 1;
      amp *= std::sqrt(double(c2[i] + 1));
      c2[i] += 1;
      std::int64_t b2 = index_of(c2);
      trip.emplace_back(b2, b, cd(amp, 0.0));
    }
    SpMat m(dim(), dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
  }

  // On-site interaction matrix (U/2) sum_i n_i (n_i - 1) (diagonal).
  SpMat interaction(double U) const {
    std::vector<Eigen::Triplet<cd>> trip;
    for (std::int64_t b = 0; b < dim(); ++b) {
      double v = 0.0;
      for (int s = 0; s < sites_; ++s) v += 0.5 * U * basis_[b][s] * (basis_[b][s] - 1.0);
      if (v != 0.0) trip.emplace_back(b, b, cd(v, 0.0));
    }
    SpMat m(dim(), dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
  }

  // Normalized N-particle condensate in the zero-momentum Bloch mode:
  // (a_{q=0}^dag)^N |vac> / sqrt(N!) with a_{q=0}^dag = sum_i a_i^dag / sqrt(M^d).
  DVec bec_state() const {
    DVec v = DVec::Zero(dim());
    for (std::int64_t b = 0; b < dim(); ++b) {
      // <cfg|(sum_i a_i^dag)^N|vac>/sqrt(N! M^dN) = sqrt(N!/prod n_i!)/sqrt(M^dN)
      double logw = 0.5 * lgamma_int(N_);
      for (int s = 0; s < sites_; ++s) logw -= 0.5 * lgamma_int(basis_[b][s]);
      v[b] = std::exp(logw - 0.5 * N_ * std::log(double(sites_)));
    }
    v.normalize();
    return v;
  }

  // a_{q}^dag a_{q} for Bloch momentum q = 2*pi*k/M per axis (dense, small D).
  DMat momentum_number(const std::array<int, 3>& k) const {
    DMat aq = DMat::Zero(dim(), dim());
    // a_q = sum_j e^{+i q.r_j} a_j / sqrt(M^d): build a_q^dag a_q = sum_{j,l} e^{i q.(r_j - r_l)} a_j^dag a_l / M^d
    for (int j = 0; j < sites_; ++j) {
      for (int l = 0; l < sites_; ++l) {
        double ph = 0.0;
        auto cj = lat_.coords(j), cl = lat_.coords(l);
        for (int ax = 0; ax < lat_.d; ++ax)
          ph += 2.0 * M_PI * k[ax] * (cj[ax] - cl[ax]) / lat_.M;
        aq += std::exp(cd(0.0, ph)) * DMat(hop(j, l)) / double(sites_);
      }
    }
    return aq;
  }

 private:
  static double lgamma_int(int n) { return std::lgamma(double(n) + 1.0); }

  void enumerate(std::vector<int>& cfg, int site, int rem) {
    if (site == sites_ - 1) { cfg[site] = rem; basis_.push_back(cfg); return; }
    for (int k = rem; k >= 0; --k) {  // lexicographic: higher occupation of early sites first
      cfg[site] = k;
      enumerate(cfg, site + 1, rem - k);
    }
    cfg[site] = 0;
  }

  LatticeSpec lat_;
  int N_;
  int sites_;
  std::vector<std::vector<int>> basis_;
  std::map<std::vector<int>, std::int64_t> index_;
};

// -------------------------------------------------------------- fermions ---

// Two-species fermions; Jordan-Wigner mode ordering is site-major, spin-minor:
// mode p = 2*site + spin with spin 0 = up, 1 = down.
class FermionSector {
 public:
  FermionSector(const LatticeSpec& lat, int Nup, int Ndown)
      : lat_(lat), Nup_(Nup), Ndown_(Ndown) {
    lat.validate();
    sites_ = static_cast<int>(lat.n_sites());
    if (sites_ > 16) throw std::invalid_argument("FermionSector: at most 16 sites supported");
    if (Nup < 0 || Nup > sites_ || Ndown < 0 || Ndown > sites_)
      throw std::invalid_argument("FermionSector: particle numbers out of range");
    for (std::uint32_t up = 0; up < (1u << sites_); ++up) {
      if (popcount(up) != Nup) continue;
      for (std::uint32_t dn = 0; dn < (1u << sites_); ++dn) {
        if (popcount(dn) != Ndown) continue;
        basis_.push_back({up, dn});
      }
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[key(basis_[i])] = static_cast<std::int64_t>(i);
  }

  int n_sites() const { return sites_; }
  int Nup() const { return Nup_; }
  int Ndown() const { return Ndown_; }
  const LatticeSpec& lattice() const { return lat_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(basis_.size()); }
  std::pair<std::uint32_t, std::uint32_t> config(std::int64_t i) const {
    return {basis_[i].up, basis_[i].dn};
  }

  // Apply f_{site,spin} (annihilate) to a basis element; returns (new basis
  // masks, JW sign) or sign 0 when the mode is empty.
  struct Occ { std::uint32_t up, dn; };

  // f^dag_{di,ds} f_{sj,ss} with JW signs; returns sparse matrix on sector.
  SpMat hop(int di, int ds, int sj, int ss) const {
    std::vector<Eigen::Triplet<cd>> trip;
    for (std::int64_t b = 0; b < dim(); ++b) {
      Occ o = basis_[b];
      int sgn1 = annihilate(o, sj, ss);
      if (sgn1 == 0) continue;
      int sgn2 = create(o, di, ds);
      if (sgn2 == 0) continue;
      auto it = index_.find(key(o));
      trip.emplace_back(it->second, b, cd(double(sgn1 * sgn2), 0.0));
    }
    SpMat m(dim(), dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
  }

  SpMat number(int site, int spin) const {
    std::vector<Eigen::Triplet<cd>> trip;
    for (std::int64_t b = 0; b < dim(); ++b)
      if (occupied(basis_[b], site, spin)) trip.emplace_back(b, b, cd(1.0, 0.0));
    SpMat m(dim(), dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
  }

  // Apply a string of creations eta^dag_site = f^dag_{up} f^dag_{down} to a
  // state vector expressed on this sector... handled in eta.hpp via hop/number.

  static int popcount(std::uint32_t x) { return __builtin_popcount(x); }

  // JW helpers operating on occupation masks. Mode index p = 2*site + spin.
  static bool occupied(const Occ& o, int site, int spin) {
    return ((spin == 0 ? o.up : o.dn) >> site) & 1u;
  }
  // Parity of occupied modes strictly below p = 2*site+spin in JW order.
  static int jw_parity(const Occ& o, int site, int spin) {
    // modes below: all modes of sites < site (both spins) plus (site, up) when spin == down
    std::uint32_t below = (site > 0) ? ((1u << site) - 1u) : 0u;
    int par = popcount(o.up & below) + popcount(o.dn & below);
    if (spin == 1 && ((o.up >> site) & 1u)) par += 1;
    return par;
  }
  static int annihilate(Occ& o, int site, int spin) {
    if (!occupied(o, site, spin)) return 0;
    int sgn = (jw_parity(o, site, spin) % 2 == 0) ? 1 : -1;
    if (spin == 0) o.up &= ~(1u << site); else o.dn &= ~(1u << site);
    return sgn;
  }
  static int create(Occ& o, int site, int spin) {
    if (occupied(o, site, spin)) return 0;
    int sgn = (jw_parity(o, site, spin) % 2 == 0) ? 1 : -1;
    if (spin == 0) o.up |= (1u << site); else o.dn |= (1u << site);
    return sgn;
  }

 private:
  static std::uint64_t key(const Occ& o) {
    return (std::uint64_t(o.up) << 32) | o.dn;
  }
  LatticeSpec lat_;
  int Nup_, Ndown_, sites_;
  std::vector<Occ> basis_;
  std::map<std::uint64_t, std::int64_t> index_;
};

}  // namespace latgas
