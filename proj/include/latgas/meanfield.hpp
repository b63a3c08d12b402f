#pragma once
// Brillouin-zone reductions for the linearized solvers: every per-mode
// quantity depends on q only through s = sum_l sin^2(q_l/2), so lattice sums
// are collapsed exactly onto distinct-s classes (no binning). On top of that:
// condensate depletion with its divergence diagnostic, and relaxation of the
// condensate density with tail fitting.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "latgas/fits.hpp"
#include "latgas/kernels.hpp"
#include "latgas/lattice.hpp"
#include "latgas/modes.hpp"
#include "latgas/params.hpp"

namespace latgas {

// Distinct per-axis values sin^2(pi k / M), k = 0..M/2, with multiplicities
// (k and M-k coincide; k = 0 and k = M/2 are self-paired).
inline void axis_classes(int M, std::vector<double>& v, std::vector<double>& mult) {
  v.clear();
  mult.clear();
  for (int k = 0; k <= M / 2; ++k) {
    double h = std::sin(M_PI * k / M);
    v.push_back(h * h);
    mult.push_back((k == 0 || 2 * k == M) ? 1.0 : 2.0);
  }
}

struct SClasses {
  std::vector<double> s;       // class value, s > 0
  std::vector<double> weight;  // number of nonzero modes in the class
};

// All nonzero modes of the M^d grid grouped by s. Classes are enumerated as
// ordered tuples of distinct axis values (axis order kept; exact weights).
inline SClasses s_classes(int d, int M) {
  std::vector<double> v, m;
  axis_classes(M, v, m);
  const std::size_t D = v.size();
  SClasses out;
  if (d == 1) {
    for (std::size_t i = 0; i < D; ++i)
      if (v[i] > 0.0) {
        out.s.push_back(v[i]);
        out.weight.push_back(m[i]);
      }
    return out;
  }
  if (d == 2) {
    out.s.reserve(D * D);
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) {
        const double s = v[i] + v[j];
        if (s == 0.0) continue;
        out.s.push_back(s);
        out.weight.push_back(m[i] * m[j]);
      }
    return out;
  }
  if (d == 3) {
    out.s.reserve(D * D * (D + 2) / 2);
    // dedupe the last two axes by unordered pairs to keep the class count low
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j)
        for (std::size_t k = j; k < D; ++k) {
          const double s = v[i] + v[j] + v[k];
          if (s == 0.0) continue;
          const double perm = (j == k) ? 1.0 : 2.0;
          out.s.push_back(s);
          out.weight.push_back(m[i] * m[j] * m[k] * perm);
        }
    return out;
  }
  throw std::invalid_argument("s_classes: d must be 1, 2 or 3");
}

// Condensate depletion n_D = (1/M^d) sum_{q != 0} x_q with x_q the steady
// occupation of the Bogoliubov mode at q.
inline double depletion(const HubbardParams& p, const LatticeSpec& lat) {
  p.validate();
  lat.validate();
  if (lat.boundary != Boundary::Periodic)
    throw std::invalid_argument("depletion: periodic lattice required");
  if (p.U == 0.0) return 0.0;
  const SClasses cls = s_classes(lat.d, lat.M);
  const double Un = p.U * p.n;
  std::vector<double> x(cls.s.size());
  for (std::size_t i = 0; i < cls.s.size(); ++i) {
    const double eps = 2.0 * p.J * cls.s[i];
    const double kq = 16.0 * p.n * p.kappa * cls.s[i];
    x[i] = steady_moments(bogoliubov_mode(eps, Un, kq)).x;
  }
  const double Md = std::pow(double(lat.M), lat.d);
  return kernels::dot()(x.size(), x.data(), cls.weight.data()) / Md;
}

struct DepletionReport {
  double nD = 0.0;            // at M
  double nD_2M = 0.0;         // at 2M
  double growth_ratio = 0.0;  // nD(2M) / nD(M); > 1.2 sustained signals IR divergence
};

inline DepletionReport depletion_report(const HubbardParams& p, const LatticeSpec& lat) {
  DepletionReport r;
  r.nD = depletion(p, lat);
  LatticeSpec lat2 = lat;
  lat2.M = 2 * lat.M;
  r.nD_2M = depletion(p, lat2);
  r.growth_ratio = r.nD > 0.0 ? r.nD_2M / r.nD : 0.0;
  return r;
}

struct RelaxationCurve {
  std::vector<double> times;
  std::vector<double> n0_of_t;            // condensate density n0(t) = n - sum x_q / M^d
  std::vector<double> deviation;          // n0(inf) - n0(t)
  double n0_inf = 0.0;
  double fitted_tail_exponent = 0.0;      // log-log slope over the last decade
  double tail_prefactor_t = 0.0;          // mean of deviation * t over the fit window
  double local_slope_spread = 0.0;
  bool asymptotic = false;                // local slope variation < 0.05 over the window
};

// Relaxation toward the steady state from a configurable initial occupation
// of the nonzero modes (default: x_q(0) = n M^d/(M^d - 1) so n0(0) = 0), with
// y_q(0) = y0 (default 0).
inline RelaxationCurve relax(const HubbardParams& p, const LatticeSpec& lat,
                             const std::vector<double>& t_grid, double x_init = -1.0,
                             double y0 = 0.0) {
  p.validate();
  lat.validate();
  if (lat.boundary != Boundary::Periodic)
    throw std::invalid_argument("relax: periodic lattice required");
  if (t_grid.size() < 4 || t_grid.back() <= 10.0 * t_grid.front())
    throw std::invalid_argument("relax: t_grid must span more than a decade");
  const SClasses cls = s_classes(lat.d, lat.M);
  const std::size_t n = cls.s.size();
  const double Md = std::pow(double(lat.M), lat.d);
  const double Un = p.U * p.n;
  const double x0 = x_init >= 0.0 ? x_init : p.n * Md / (Md - 1.0);

  // batch constants for the closed-form propagation
  std::vector<double> A(n), P(n), kq(n), E(n), invE2(n), xs(n), yrs(n), c1(n), w0(n), u30(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = 2.0 * p.J * cls.s[i];
    A[i] = eps + Un;
    P[i] = Un;
    kq[i] = 16.0 * p.n * p.kappa * cls.s[i];
    const double E2 = A[i] * A[i] - P[i] * P[i];
    E[i] = std::sqrt(E2);
    invE2[i] = 1.0 / E2;
    const ModeMomentState ss = steady_moments(ModeParams{A[i], P[i], kq[i]});
    xs[i] = ss.x;
    yrs[i] = ss.y.real();
    const double d1 = x0 - ss.x;
    const double d2 = y0 - ss.y.real();
    c1[i] = A[i] * d1 + P[i] * d2;
    w0[i] = P[i] * d1 + A[i] * d2;
    u30[i] = 0.0 - ss.y.imag();
  }
  kernels::ModeBatch mb{A.data(), P.data(), kq.data(), E.data(), invE2.data(),
                        xs.data(), yrs.data(), c1.data(), w0.data(), u30.data()};
  const double depl_ss = kernels::dot()(n, xs.data(), cls.weight.data()) / Md;

  RelaxationCurve rc;
  rc.times = t_grid;
  rc.n0_inf = p.n - depl_ss;
  std::vector<double> xt(n), yrt(n);
  for (double t : t_grid) {
    kernels::mode_step()(n, mb, t, xt.data(), yrt.data());
    const double depl = kernels::dot()(n, xt.data(), cls.weight.data()) / Md;
    rc.n0_of_t.push_back(p.n - depl);
    rc.deviation.push_back(depl - depl_ss);
  }

  // tail fit over the last decade of t
  std::vector<double> ft, fy;
  const double t_lo = t_grid.back() / 10.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] >= t_lo && rc.deviation[i] != 0.0) {
      ft.push_back(t_grid[i]);
      fy.push_back(std::abs(rc.deviation[i]));
    }
  }
  if (ft.size() < 3) throw std::runtime_error("relax: too few points in the tail-fit decade");
  const LinFit f = loglog_fit(ft, fy);
  rc.fitted_tail_exponent = f.slope;
  double acc = 0.0;
  for (std::size_t i = 0; i < ft.size(); ++i) acc += ft[i] * fy[i];
  rc.tail_prefactor_t = acc / ft.size();
  const std::vector<double> sl = local_loglog_slopes(ft, fy);
  double lo = sl[0], hi = sl[0];
  for (double v : sl) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rc.local_slope_spread = hi - lo;
  rc.asymptotic = rc.local_slope_spread < 0.05;
  return rc;
}

}  // namespace latgas
