#pragma once
// Small fitting utilities: least-squares lines (plain / log-log), local
// slopes, and the chord-corrected exponential fit used for periodic-lattice
// decay lengths.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace latgas {

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_resid = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need >= 2 matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LinFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_abs_resid = std::max(f.max_abs_resid, std::abs(y[i] - f.slope * x[i] - f.intercept));
  return f;
}

inline LinFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0)
      throw std::invalid_argument("loglog_fit: nonpositive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_fit(lx, ly);
}

// Local slopes between consecutive points on log-log axes (|y| used so the
// caller can feed signed deviations).
inline std::vector<double> local_loglog_slopes(const std::vector<double>& x,
                                               const std::vector<double>& y) {
  std::vector<double> out;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double num = std::log(std::abs(y[i])) - std::log(std::abs(y[i - 1]));
    const double den = std::log(x[i]) - std::log(x[i - 1]);
    out.push_back(num / den);
  }
  return out;
}

// Fit var(x) = a * x (1 - x/M) + b. On a ring of M sites the exact phase
// variance follows the chord x(1 - x/M) rather than x, so the asymptotic
// decay length of exp(-var/2) is 2/a.
inline double chord_decay_length(const std::vector<double>& x, const std::vector<double>& var,
                                 int M) {
  std::vector<double> chord;
  chord.reserve(x.size());
  for (double xi : x) chord.push_back(xi * (1.0 - xi / M));
  const LinFit f = linear_fit(chord, var);
  if (f.slope <= 0.0) throw std::runtime_error("chord_decay_length: non-decaying data");
  return 2.0 / f.slope;
}

}  // namespace latgas
