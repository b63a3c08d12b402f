#pragma once
// Long-wavelength phase model in 1D/2D: derived scales, the mapping of phase
// modes onto the generic damped-mode machinery, steady-state correlation
// functions (algebraic in 2D, exponential in 1D) and the time evolution of
// spatial correlations from a short-range-correlated initial state.
//
// Phase-mode parameters: expanding the rotor Hamiltonian
//   H = sum_q [ 2 n eps_q phi_q phi_-q + (U/2) n_q n_-q ]
// in canonical d-modes gives number coefficient A = eps_q + Un and pairing
// P = Un - eps_q, so E^2 = A^2 - P^2 = 4 Un eps_q, i.e. E = c q with
// c = sqrt(2 U n J): the sound mode. The damping kq is unchanged. The phase
// spectrum is recovered as <phi_q phi_-q> = (2x + 1 - 2 Re y) / (4 n).

#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "latgas/fits.hpp"
#include "latgas/kernels.hpp"
#include "latgas/lattice.hpp"
#include "latgas/meanfield.hpp"
#include "latgas/modes.hpp"
#include "latgas/params.hpp"

namespace latgas {

struct PhaseScales {
  double c = 0.0;       // sound velocity sqrt(2 U n J) * a
  double K = 0.0;       // Luttinger-like stiffness pi * sqrt(2 J n / U)
  double T_KT = 0.0;    // pi J n
  double T_eff = 0.0;   // U n / 2
  double ell_c = 0.0;   // coherence length sqrt(J / (U n)) * a
  double x0 = 0.0;      // short-distance scale ~ c / (kappa n), O(1) prefactor free
  double tau0 = 0.0;    // short-time scale ~ (kappa n a / c)^2 * a / c
  double xi_1d = 0.0;   // 1D decay-length reference 4 c K / (pi T_eff)
  double exponent = 0.0;       // algebraic-decay exponent T_eff / (4 T_KT) = U/(8 pi J)
  double teff_over_tkt = 0.0;  // U / (2 pi J)
  bool valid = false;          // T_eff sufficiently below T_KT
};

inline PhaseScales derived_scales(const HubbardParams& p) {
  p.validate();
  if (p.U <= 0.0) throw std::invalid_argument("derived_scales: phase model undefined at U = 0");
  PhaseScales s;
  s.c = std::sqrt(2.0 * p.U * p.n * p.J);
  s.K = M_PI * std::sqrt(2.0 * p.J * p.n / p.U);
  s.T_KT = M_PI * p.J * p.n;
  s.T_eff = 0.5 * p.U * p.n;
  s.ell_c = std::sqrt(p.J / (p.U * p.n));
  s.x0 = s.c / (p.kappa * p.n);
  s.tau0 = std::pow(p.kappa * p.n / s.c, 2.0) / s.c;
  s.xi_1d = 4.0 * s.c * s.K / (M_PI * s.T_eff);
  s.exponent = p.U / (8.0 * M_PI * p.J);
  s.teff_over_tkt = p.U / (2.0 * M_PI * p.J);
  s.valid = s.teff_over_tkt < 0.25;
  return s;
}

// Phase (d-) mode at s = sum_l sin^2(q_l/2).
inline ModeParams phase_mode(double s, const HubbardParams& p) {
  const double eps = 2.0 * p.J * s;
  const double Un = p.U * p.n;
  return ModeParams{eps + Un, Un - eps, 16.0 * p.n * p.kappa * s};
}

// Long-wavelength window |q| a < sqrt(Un/J); on the grid q_hat^2 = 4 s.
inline bool in_long_wavelength_window(double s, const HubbardParams& p) {
  return 4.0 * s < p.U * p.n / p.J;
}

struct CorrelationCurve {
  std::vector<double> x;
  std::vector<double> G;
  double t = -1.0;  // time label; < 0 means "steady / t = infinity"
  bool valid = true;
};

// Distinct-axis-value representation of the nonzero-mode grid in 1D/2D.
// All per-mode quantities depend only on s = v_i (+ v_j), so classes are
// (pairs of) distinct axis values with multiplicities — exact, no binning.
class PhaseLattice {
 public:
  PhaseLattice(const LatticeSpec& lat, const HubbardParams& p) : lat_(lat), p_(p) {
    lat.validate();
    p.validate();
    if (lat.boundary != Boundary::Periodic)
      throw std::invalid_argument("PhaseLattice: periodic lattice required");
    if (lat.d > 2) throw std::invalid_argument("PhaseLattice: phase model implemented in 1D/2D");
    if (p.U <= 0.0) throw std::invalid_argument("PhaseLattice: U > 0 required");
    axis_classes(lat.M, v_, mult_);
    D_ = v_.size();
    nclass_ = lat.d == 1 ? D_ : D_ * D_;
    s_.resize(nclass_);
    if (lat.d == 1) {
      s_ = v_;
    } else {
      for (std::size_t i = 0; i < D_; ++i)
        for (std::size_t j = 0; j < D_; ++j) s_[i * D_ + j] = v_[i] + v_[j];
    }
    A_.resize(nclass_);
    P_.resize(nclass_);
    kq_.resize(nclass_);
    E_.resize(nclass_);
    invE2_.resize(nclass_);
    xs_.resize(nclass_);
    yrs_.resize(nclass_);
    for (std::size_t c = 0; c < nclass_; ++c) {
      if (s_[c] == 0.0) {
        // q = 0 class (weight 1): excluded; neutral constants keep kernels finite
        A_[c] = 1.0; P_[c] = 0.0; kq_[c] = 0.0; E_[c] = 1.0; invE2_[c] = 1.0;
        xs_[c] = 0.0; yrs_[c] = 0.0;
        continue;
      }
      const ModeParams m = phase_mode(s_[c], p);
      const ModeMomentState ss = steady_moments(m);
      A_[c] = m.A;
      P_[c] = m.P;
      kq_[c] = m.kq;
      E_[c] = m.E();
      invE2_[c] = 1.0 / m.E2();
      xs_[c] = ss.x;
      yrs_[c] = ss.y.real();
    }
  }

  const LatticeSpec& lattice() const { return lat_; }
  const HubbardParams& params() const { return p_; }
  std::size_t n_classes() const { return nclass_; }
  double E_min() const {
    // slowest nonzero mode: s = v_[1]
    return phase_mode(v_[1], p_).E();
  }

  // phase spectrum phi-phi per class from moments (q = 0 class forced to 0)
  void phiphi(const std::vector<double>& x, const std::vector<double>& yr,
              std::vector<double>& g) const {
    g.resize(nclass_);
    for (std::size_t c = 0; c < nclass_; ++c)
      g[c] = s_[c] == 0.0 ? 0.0 : (2.0 * x[c] + 1.0 - 2.0 * yr[c]) / (4.0 * p_.n);
  }

  // reduce a per-class spectrum to the axis-0 distinct values:
  // g1[i] = sum_j mult_j g[i,j] (2D) or g[i] (1D)
  void reduce_axis0(const std::vector<double>& g, std::vector<double>& g1) const {
    g1.assign(D_, 0.0);
    if (lat_.d == 1) {
      g1 = g;
      return;
    }
    for (std::size_t i = 0; i < D_; ++i)
      g1[i] = kernels::dot()(D_, g.data() + i * D_, mult_.data());
  }

  // <(phi_i - phi_j)^2> at separation xsep along an axis
  double variance(const std::vector<double>& g1, double xsep) const {
    const double Md = std::pow(double(lat_.M), lat_.d);
    double acc = 0.0;
    for (std::size_t i = 0; i < D_; ++i)
      acc += mult_[i] * (1.0 - std::cos(2.0 * M_PI * i * xsep / lat_.M)) * g1[i];
    return 2.0 * acc / Md;
  }

  std::vector<double> correlation(const std::vector<double>& x, const std::vector<double>& yr,
                                  const std::vector<double>& xsep) const {
    std::vector<double> g, g1, out;
    phiphi(x, yr, g);
    reduce_axis0(g, g1);
    out.reserve(xsep.size());
    for (double xv : xsep) out.push_back(std::exp(-0.5 * variance(g1, xv)));
    return out;
  }

  const std::vector<double>& steady_x() const { return xs_; }
  const std::vector<double>& steady_yr() const { return yrs_; }
  const std::vector<double>& s() const { return s_; }
  const std::vector<double>& axis_values() const { return v_; }
  const std::vector<double>& axis_mult() const { return mult_; }

  // Closed-form propagation of all classes from an initial condition with
  // dRe y(0) = -dx(0) and dIm y(0) = 0 (the disordered-state construction):
  // c1 = (A - P) dx(0), w0 = -c1.
  struct Evolution {
    std::vector<double> c1, w0, u30;
  };
  Evolution make_evolution(const std::vector<double>& dx0) const {
    Evolution ev;
    ev.c1.resize(nclass_);
    ev.w0.resize(nclass_);
    ev.u30.assign(nclass_, 0.0);
    for (std::size_t c = 0; c < nclass_; ++c) {
      ev.c1[c] = (A_[c] - P_[c]) * dx0[c];
      ev.w0[c] = -ev.c1[c];
    }
    return ev;
  }
  void step(const Evolution& ev, double t, std::vector<double>& x, std::vector<double>& yr) const {
    x.resize(nclass_);
    yr.resize(nclass_);
    kernels::ModeBatch mb{A_.data(), P_.data(), kq_.data(), E_.data(), invE2_.data(),
                          xs_.data(), yrs_.data(), ev.c1.data(), ev.w0.data(), ev.u30.data()};
    kernels::mode_step()(nclass_, mb, t, x.data(), yr.data());
  }

 private:
  LatticeSpec lat_;
  HubbardParams p_;
  std::vector<double> v_, mult_;
  std::size_t D_ = 0, nclass_ = 0;
  std::vector<double> s_, A_, P_, kq_, E_, invE2_, xs_, yrs_;
};

struct SteadyCorrelation {
  CorrelationCurve curve;
  std::vector<double> companion;  // closed-form comparison curve (fitted normalization)
  PhaseScales scales;
  double fit_window_lo = 0.0, fit_window_hi = 0.0;
  // 2D: log-log slope and residual of ln G in the window
  double slope = 0.0;
  double max_abs_log_resid = 0.0;
  // 1D: chord-corrected decay length
  double xi_fit = 0.0;
};

inline SteadyCorrelation steady_correlation(const HubbardParams& p, const LatticeSpec& lat,
                                            const std::vector<double>& x_grid) {
  PhaseLattice pl(lat, p);
  SteadyCorrelation out;
  out.scales = derived_scales(p);
  out.curve.x = x_grid;
  out.curve.G = pl.correlation(pl.steady_x(), pl.steady_yr(), x_grid);
  out.curve.valid = out.scales.valid;

  if (lat.d == 2) {
    out.fit_window_lo = std::max(2.0, std::ceil(out.scales.ell_c));
    out.fit_window_hi = lat.M / 8.0;
  } else {
    out.fit_window_lo = std::max(1.0, out.scales.ell_c);
    out.fit_window_hi = lat.M / 4.0;
  }
  std::vector<double> wx, wG;
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    if (x_grid[i] >= out.fit_window_lo && x_grid[i] <= out.fit_window_hi) {
      wx.push_back(x_grid[i]);
      wG.push_back(out.curve.G[i]);
    }
  if (wx.size() < 3) throw std::invalid_argument("steady_correlation: fit window too small");

  if (lat.d == 2) {
    const LinFit f = loglog_fit(wx, wG);
    out.slope = f.slope;
    out.max_abs_log_resid = f.max_abs_resid;
    // companion: algebraic decay with the derived exponent, normalization fitted
    double norm = 0.0;
    for (std::size_t i = 0; i < wx.size(); ++i)
      norm += std::log(wG[i]) + out.scales.exponent * std::log(wx[i]);
    norm /= wx.size();
    out.companion.reserve(x_grid.size());
    for (double xv : x_grid)
      out.companion.push_back(std::exp(norm) * std::pow(xv, -out.scales.exponent));
  } else {
    // 1D: variance follows the chord x(1 - x/M); fit it and convert
    std::vector<double> var;
    var.reserve(wx.size());
    for (std::size_t i = 0; i < wx.size(); ++i) var.push_back(-2.0 * std::log(wG[i]));
    out.xi_fit = chord_decay_length(wx, var, lat.M);
    double norm = 0.0;
    for (std::size_t i = 0; i < wx.size(); ++i)
      norm += std::log(wG[i]) + wx[i] / out.scales.xi_1d;
    norm /= wx.size();
    out.companion.reserve(x_grid.size());
    for (double xv : x_grid)
      out.companion.push_back(std::exp(norm - xv / out.scales.xi_1d));
  }
  return out;
}

struct InitialDisorderSpec {
  double xi = 2.0;  // initial correlation length in lattice units
};

struct EvolveCorrelations {
  std::vector<CorrelationCurve> curves;  // at requested times (t < 0 label = steady)
  CorrelationCurve steady;
  std::vector<double> ts;        // ordering-front sample times
  std::vector<double> xt;        // fitted front scale per time
  LinFit xt_fit;                 // ln x_t vs ln t
  double fitted_C = 0.0, fitted_m = 0.0;  // initial-spectrum ansatz parameters
  double init_fit_rms = 0.0;
};

namespace detail {
// golden-section minimization on [lo, hi]
inline double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double g = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - g * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + g * (b - a); f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}
}  // namespace detail

// Time evolution of spatial correlations from a disordered initial state.
// Initial state construction: the phase spectrum is set to the ansatz
// g(q) = C (q_hat^2 + m^2)^{-3/2} (q_hat^2 = 4s) with (C, m) least-squares
// fitted so the reconstructed t = 0 correlation equals exp(-x/xi); density
// fluctuations start at their steady value, which pins dRe y = -dx and
// dIm y = 0 per mode. The front scale x_t is extracted from the small-x
// Gaussian coefficient of -ln(G_t/G_ss), phase-averaged over one period of
// the slowest mode to suppress discrete-mode ringing.
inline EvolveCorrelations evolve_correlations(const InitialDisorderSpec& init,
                                              const HubbardParams& p, const LatticeSpec& lat,
                                              const std::vector<double>& xt_times,
                                              const std::vector<double>& curve_times,
                                              const std::vector<double>& x_grid, int navg = 8,
                                              int jobs = 1) {
  if (init.xi <= 0.0) throw std::invalid_argument("evolve_correlations: xi must be > 0");
  PhaseLattice pl(lat, p);
  const std::size_t nc = pl.n_classes();
  EvolveCorrelations out;

  // ---- fit the initial spectrum ansatz (C, m) against exp(-x/xi)
  const int nfit = std::min(40, lat.M / 2 - 1);
  std::vector<double> xfit(nfit), Gtarget(nfit);
  for (int i = 0; i < nfit; ++i) {
    xfit[i] = i + 1.0;
    Gtarget[i] = std::exp(-xfit[i] / init.xi);
  }
  std::vector<double> ghat(nc), g1;  // ansatz with C = 1
  auto var_unit = [&](double m, std::vector<double>& V) {
    for (std::size_t c = 0; c < nc; ++c) {
      const double q2 = 4.0 * pl.s()[c];
      ghat[c] = pl.s()[c] == 0.0 ? 0.0 : std::pow(q2 + m * m, -1.5);
    }
    pl.reduce_axis0(ghat, g1);
    V.resize(nfit);
    for (int i = 0; i < nfit; ++i) V[i] = pl.variance(g1, xfit[i]);
  };
  std::vector<double> V;
  auto sse_C = [&](double logC, const std::vector<double>& Vv) {
    const double C = std::exp(logC);
    double sse = 0.0;
    for (int i = 0; i < nfit; ++i) {
      const double dG = std::exp(-0.5 * C * Vv[i]) - Gtarget[i];
      sse += dG * dG;
    }
    return sse;
  };
  auto best_C = [&](double m, double* sse_out) {
    var_unit(m, V);
    const double logC = detail::golden_min([&](double lc) { return sse_C(lc, V); },
                                           std::log(1e-3), std::log(1e3), 80);
    if (sse_out) *sse_out = sse_C(logC, V);
    return std::exp(logC);
  };
  const double logm = detail::golden_min(
      [&](double lm) {
        double sse;
        best_C(std::exp(lm), &sse);
        return sse;
      },
      std::log(1e-6), std::log(10.0), 60);
  out.fitted_m = std::exp(logm);
  double sse_final = 0.0;
  out.fitted_C = best_C(out.fitted_m, &sse_final);
  out.init_fit_rms = std::sqrt(sse_final / nfit);

  // ---- initial deviations dx(0) = n (g - phiphi_ss)
  std::vector<double> g(nc), phiss, dx0(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const double q2 = 4.0 * pl.s()[c];
    g[c] = pl.s()[c] == 0.0 ? 0.0 : out.fitted_C * std::pow(q2 + out.fitted_m * out.fitted_m, -1.5);
  }
  pl.phiphi(pl.steady_x(), pl.steady_yr(), phiss);
  for (std::size_t c = 0; c < nc; ++c) dx0[c] = p.n * (g[c] - phiss[c]);
  const PhaseLattice::Evolution ev = pl.make_evolution(dx0);

  // ---- steady reference
  out.steady.x = x_grid;
  out.steady.G = pl.correlation(pl.steady_x(), pl.steady_yr(), x_grid);
  out.steady.t = -1.0;

  // ---- requested correlation curves
  std::vector<double> xb, yrb;
  for (double t : curve_times) {
    CorrelationCurve cc;
    cc.x = x_grid;
    cc.t = t;
    if (t < 0.0) {
      cc.G = out.steady.G;
    } else {
      pl.step(ev, t, xb, yrb);
      cc.G = pl.correlation(xb, yrb, x_grid);
    }
    out.curves.push_back(std::move(cc));
  }

  // ---- ordering-front scale x_t
  const int nsmall = 12;
  std::vector<double> xsmall(nsmall);
  for (int i = 0; i < nsmall; ++i) xsmall[i] = i + 1.0;
  std::vector<double> lnGss(nsmall);
  {
    const std::vector<double> Gs = pl.correlation(pl.steady_x(), pl.steady_yr(), xsmall);
    for (int i = 0; i < nsmall; ++i) lnGss[i] = std::log(Gs[i]);
  }
  const double Tslow = 2.0 * M_PI / (4.0 * pl.E_min());
  out.ts = xt_times;
  out.xt.assign(xt_times.size(), 0.0);
  auto xt_one = [&](std::size_t k, std::vector<double>& xbuf, std::vector<double>& ybuf) {
    const double t = xt_times[k];
    const double Tw = std::min(Tslow, 0.25 * t);
    std::vector<double> r(nsmall, 0.0);
    for (int sub = 0; sub < navg; ++sub) {
      const double tt = t + Tw * sub / navg;
      pl.step(ev, tt, xbuf, ybuf);
      const std::vector<double> Gt = pl.correlation(xbuf, ybuf, xsmall);
      for (int i = 0; i < nsmall; ++i) r[i] += std::log(Gt[i]) - lnGss[i];
    }
    for (int i = 0; i < nsmall; ++i) r[i] /= navg;
    // -r(x) ~ x^2 / x_t^2 at small x
    double xt_est = r[0] < 0.0 ? 1.0 / std::sqrt(-r[0]) : 1e9;
    int xmax = static_cast<int>(std::min(12.0, std::max(3.0, xt_est / 3.0)));
    double num = 0.0, den = 0.0;
    for (int i = 0; i < xmax; ++i) {
      num -= xsmall[i] * xsmall[i] * r[i];
      den += std::pow(xsmall[i], 4.0);
    }
    const double pcoef = num / den;
    out.xt[k] = pcoef > 0.0 ? 1.0 / std::sqrt(pcoef) : std::nan("");
  };
  const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(xt_times.size())));
  if (nthreads == 1) {
    for (std::size_t k = 0; k < xt_times.size(); ++k) xt_one(k, xb, yrb);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w)
      pool.emplace_back([&, w] {
        std::vector<double> xbuf, ybuf;
        for (std::size_t k = w; k < xt_times.size(); k += nthreads) xt_one(k, xbuf, ybuf);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<double> ft, fx;
  for (std::size_t i = 0; i < out.ts.size(); ++i)
    if (std::isfinite(out.xt[i])) {
      ft.push_back(out.ts[i]);
      fx.push_back(out.xt[i]);
    }
  if (ft.size() >= 3) out.xt_fit = loglog_fit(ft, fx);
  return out;
}

}  // namespace latgas
