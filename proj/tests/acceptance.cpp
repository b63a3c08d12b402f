// Acceptance gate: runs the ten top-level criteria, printing one PASS/FAIL
// line each (with indented sub-results). Exit code = number of failures.
// Usage: acceptance [--criterion N]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latgas/eta.hpp"
#include "latgas/lindblad.hpp"
#include "latgas/meanfield.hpp"
#include "latgas/modes.hpp"
#include "latgas/ops.hpp"
#include "latgas/phase.hpp"

using namespace latgas;

namespace {

int checks_failed = 0;

void sub(bool ok, const std::string& what) {
  std::printf("    %-6s %s\n", ok ? "[ok]" : "[FAIL]", what.c_str());
  if (!ok) ++checks_failed;
}

std::string num(double v) {
  char b[64];
  std::snprintf(b, sizeof(b), "%.6g", v);
  return b;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return t;
}

// 1. Unique dark steady state on the smallest nontrivial sector.
void crit1() {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 0.0, 0.5, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  SteadyStateResult ss = steady_state(H, pj);
  DVec bec = sec.bec_state();
  const double fid = (bec.adjoint() * ss.rho * bec).real()(0);
  sub(ss.kernel_dimension == 1,
      "Liouvillian kernel dimension = " + std::to_string(ss.kernel_dimension) + " (want 1)");
  sub(fid >= 1.0 - 1e-8, "steady-state condensate fidelity = " + num(fid) + " (want >= 1 - 1e-8)");
}

// 2. Doublon-condensate eigenstate property, all small chains.
void crit2() {
  HubbardParams p{1.0, 1.7, 1.0, 1.0, 1.0};
  for (int M = 2; M <= 4; ++M) {
    LatticeSpec lat{1, M, 1.0, Boundary::Open};
    for (int N = 1; N <= std::min(2, M); ++N) {
      FermionSector sec(lat, N, N);
      const double r = verify_eigenstate(sec, build_eta_state(lat, N), p);
      sub(r <= 1e-10, "M=" + std::to_string(M) + " N=" + std::to_string(N) +
                          ": ||H|psi> - NU|psi>|| = " + num(r) + " (want <= 1e-10)");
    }
  }
}

// 3. Dissipative doublon-condensate preparation from the maximally mixed state.
void crit3() {
  HubbardParams p{1.0, 1.0, 1.0, 1.0, 1.0};
  JumpFamily fam{JumpKind::EtaFermion};
  for (int M : {2, 3}) {
    LatticeSpec lat{1, M, 1.0, Boundary::Open};
    EtaConvergence ec = simulate_eta_convergence(lat, 1, p, fam, logspace(0.5, 40.0, 12));
    sub(ec.fidelity.back() >= 0.99, "M=" + std::to_string(M) + ": fidelity(t=40) = " +
                                        num(ec.fidelity.back()) + " (want >= 0.99)");
    sub(ec.kernel_dimension == 1, "M=" + std::to_string(M) + ": kernel dimension = " +
                                      std::to_string(ec.kernel_dimension) + " (want 1)");
  }
}

// 4. Linearized fixed point against independent numerical integration,
//    plus the squeezing/occupation identity.
void crit4() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u10(1e-3, 10.0), ukq(0.1, 10.0);
  double worst_x = 0.0, worst_id = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eps = u10(rng), Un = u10(rng), kq = ukq(rng);
    ModeParams m = bogoliubov_mode(eps, Un, kq);
    const double t_end = std::max(50.0, 8.0 / kq);
    ModeMomentState late =
        evolve_moments(m, ModeMomentState{1.0, cd(0.3, -0.2)}, {t_end}, EvolveMethod::RK45)[0];
    const double x_pred = Un * Un / (2.0 * (kq * kq + m.E2()));
    worst_x = std::max(worst_x, std::abs(late.x - x_pred));
    SqueezedSpec sq = steady_squeezing(eps, Un, kq);
    worst_id = std::max(worst_id, std::abs(sq.cosh2_2theta() - sq.coth2_half_beta()));
  }
  sub(worst_x <= 1e-6, "100 draws: max |x(t->inf) - (Un)^2/(2(kq^2+E^2))| = " + num(worst_x) +
                           " (want <= 1e-6)");
  sub(worst_id <= 1e-12,
      "100 draws: max |cosh^2(2 theta) - coth^2(beta/2)| = " + num(worst_id) + " (want <= 1e-12)");
}

// 5. Depletion converges in 3D and diverges under doubling in 1D/2D.
//    "Within 2%" is read as |n_D(32) - n_D(16)| <= 0.02 * n; the relative
//    reading is reported alongside for transparency.
void crit5() {
  HubbardParams p{1.0, 0.1, 1.0, 1.0, 1.0};
  DepletionReport r3 = depletion_report(p, {3, 16, 1.0, Boundary::Periodic});
  const double diff = std::abs(r3.nD_2M - r3.nD);
  sub(diff <= 0.02 * p.n,
      "3D: |n_D(32) - n_D(16)| = " + num(diff) + " <= 0.02 n  (n_D = " + num(r3.nD) + " -> " +
          num(r3.nD_2M) + ", relative change " + num(r3.growth_ratio) + "x)");
  for (int d : {1, 2}) {
    int M0 = d == 1 ? 128 : 64;
    for (int k = 0; k < 3; ++k) {
      LatticeSpec lat{d, M0 << k, 1.0, Boundary::Periodic};
      DepletionReport r = depletion_report(p, lat);
      sub(r.growth_ratio > 1.2, std::to_string(d) + "D: n_D(" + std::to_string(2 * lat.M) +
                                    ")/n_D(" + std::to_string(lat.M) + ") = " +
                                    num(r.growth_ratio) + " (want > 1.2)");
    }
  }
}

// 6. Relaxation tail exponents and the interacting-tail prefactor.
void crit6() {
  LatticeSpec lat{3, 512, 1.0, Boundary::Periodic};
  const std::vector<double> ts = logspace(std::pow(10.0, -0.5), 100.0, 51);
  {
    RelaxationCurve rc = relax({1.0, 0.0, 1.0, 1.0, 1.0}, lat, ts);
    sub(std::abs(rc.fitted_tail_exponent + 1.5) <= 0.1,
        "U = 0: tail exponent = " + num(rc.fitted_tail_exponent) + " (want -1.5 +- 0.1, slope spread " +
            num(rc.local_slope_spread) + ")");
  }
  {
    HubbardParams p{1.0, 0.5, 1.0, 1.0, 1.0};
    RelaxationCurve rc = relax(p, lat, ts);
    const double pref_pred = std::sqrt(p.U * p.n / (8.0 * p.J)) / (2.0 * p.kappa * p.n);
    sub(std::abs(rc.fitted_tail_exponent + 1.0) <= 0.1,
        "Un = 0.5: tail exponent = " + num(rc.fitted_tail_exponent) + " (want -1.0 +- 0.1; " +
            (rc.asymptotic ? "asymptotic" : "pre-asymptotic, slope spread " +
                                                num(rc.local_slope_spread)) + ")");
    sub(std::abs(rc.tail_prefactor_t - pref_pred) <= 0.25 * pref_pred,
        "Un = 0.5: mean deviation * t = " + num(rc.tail_prefactor_t) + " (want " + num(pref_pred) +
            " +- 25%)");
  }
}

// 7. 2D algebraic order: slope -1/18 within 5%, invariant under kappa -> 10 kappa.
void crit7() {
  std::vector<double> xs;
  for (int k = 1; k <= 63; ++k) xs.push_back(k);
  HubbardParams p{1.0, 8.0 * M_PI / 18.0, 0.01, 1.0, 1.0};
  LatticeSpec lat{2, 128, 1.0, Boundary::Periodic};
  SteadyCorrelation a = steady_correlation(p, lat, xs);
  p.kappa = 0.1;
  SteadyCorrelation b = steady_correlation(p, lat, xs);
  const double target = -1.0 / 18.0;
  sub(std::abs(a.slope - target) <= 0.05 * std::abs(target),
      "log-log slope = " + num(a.slope) + " (want " + num(target) + " +- 5%)");
  const double ratio = b.slope / a.slope;
  sub(std::abs(ratio - 1.0) <= 0.02,
      "slope(10 kappa)/slope(kappa) = " + num(ratio) + " (want 1 +- 2%)");
}

// 8. 1D exponential decay length against the analytic reference.
void crit8() {
  HubbardParams p{1.0, 0.1, 1.0, 1.0, 1.0};
  std::vector<double> xs;
  for (int k = 1; k <= 511; ++k) xs.push_back(k);
  SteadyCorrelation sc = steady_correlation(p, {1, 1024, 1.0, Boundary::Periodic}, xs);
  sub(std::abs(sc.xi_fit - sc.scales.xi_1d) <= 0.1 * sc.scales.xi_1d,
      "fitted decay length = " + num(sc.xi_fit) + " (want " + num(sc.scales.xi_1d) + " +- 10%)");
}

// 9. Ordering-front scaling x_t ~ t^{1/4} and long-time convergence.
void crit9() {
  HubbardParams p{1.0, 8.0 * M_PI / 18.0, 0.05, 1.0, 1.0};
  LatticeSpec lat{2, 2048, 1.0, Boundary::Periodic};
  std::vector<double> xs;
  for (int k = 1; k <= 64; ++k) xs.push_back(k);
  EvolveCorrelations ec = evolve_correlations({2.0}, p, lat, logspace(5.0, 5000.0, 60),
                                              {1e7}, xs, 8, 4);
  sub(std::abs(ec.xt_fit.slope - 0.25) <= 0.02,
      "x_t exponent over t in [5, 5000] = " + num(ec.xt_fit.slope) + " (want 0.25 +- 0.02)");
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    worst = std::max(worst, std::abs(ec.curves[0].G[i] / ec.steady.G[i] - 1.0));
  sub(worst <= 0.02, "t = 1e7 curve vs steady: max pointwise deviation = " + num(worst) +
                         " (want <= 2%)");
}

// 10. Structural invariants + CLI determinism in one shot.
void crit10() {
  // trace / Hermiticity / positivity under evolution
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 1.0, 0.5, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  DMat rho0 = DMat::Identity(sec.dim(), sec.dim()) / double(sec.dim());
  EvolveResult er = evolve(rho0, H, pj, {0.5, 5.0, 50.0});
  double tr_dev = 0.0, herm = 0.0, min_eig = 1.0, nmax_dev = 0.0;
  for (const DMat& r : er.snapshots) {
    tr_dev = std::max(tr_dev, std::abs(r.trace().real() - 1.0));
    herm = std::max(herm, (r - r.adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (r + r.adjoint())));
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    Observables o = observables(r, sec);
    nmax_dev = std::max(nmax_dev, std::abs(o.total_N - 2.0));
  }
  sub(tr_dev <= 1e-8, "max trace deviation = " + num(tr_dev) + " (want <= 1e-8)");
  sub(herm <= 1e-8, "max Hermiticity defect = " + num(herm) + " (want <= 1e-8)");
  sub(min_eig >= -1e-8, "min eigenvalue = " + num(min_eig) + " (want >= -1e-8)");
  sub(nmax_dev <= 1e-8, "max total-N deviation = " + num(nmax_dev) + " (want <= 1e-8)");

  // dark-state annihilation residuals
  {
    DVec bec = sec.bec_state();
    double r = 0.0;
    for (const auto& c : pj.c) r = std::max(r, (c * bec).norm());
    sub(r <= 1e-12, "condensate annihilation residual = " + num(r) + " (want <= 1e-12)");
  }
  {
    LatticeSpec lat{1, 3, 1.0, Boundary::Open};
    FermionSector fsec(lat, 1, 1);
    EtaState st = build_eta_state(lat, 1);
    double r = 0.0;
    for (const auto& j : build_jump_operators(fsec, {JumpKind::EtaFermion}))
      r = std::max(r, (j.op * st.amp).norm());
    sub(r <= 1e-12, "doublon-condensate annihilation residual = " + num(r) + " (want <= 1e-12)");
  }

  // CLI determinism (byte comparison of two runs)
  namespace fs = std::filesystem;
  auto slurp = [](const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  fs::path a = fs::temp_directory_path() / "sim_accept_a";
  fs::path b = fs::temp_directory_path() / "sim_accept_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string cmd = std::string(SIM_BINARY) +
                          " depletion --d 3 --M 8 --U 0.1 --kappa 1 --n 1 --quiet --out ";
  bool ran = std::system((cmd + a.string() + " > /dev/null 2>&1").c_str()) == 0 &&
             std::system((cmd + b.string() + " > /dev/null 2>&1").c_str()) == 0;
  bool same = ran;
  for (const char* f : {"depletion.csv", "summary.csv", "metadata.json"})
    same = same && !slurp(a / f).empty() && slurp(a / f) == slurp(b / f);
  sub(same, "CLI determinism: identical config twice gives byte-identical outputs");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[i + 1]);

  struct Crit {
    int id;
    const char* title;
    void (*fn)();
  };
  const std::vector<Crit> crits = {
      {1, "unique dark steady state (kernel dim 1, condensate fidelity)", crit1},
      {2, "doublon condensate is a Hubbard eigenstate with energy N U", crit2},
      {3, "dissipative doublon-condensate preparation converges", crit3},
      {4, "linearized fixed point and squeezing identity", crit4},
      {5, "depletion: 3D convergence, 1D/2D infrared growth", crit5},
      {6, "condensate relaxation tail exponents and prefactor", crit6},
      {7, "2D algebraic order with interaction-set exponent", crit7},
      {8, "1D exponential decay length", crit8},
      {9, "ordering-front t^(1/4) growth and long-time convergence", crit9},
      {10, "structural invariants and CLI determinism", crit10},
  };

  int failures = 0;
  for (const Crit& c : crits) {
    if (only != 0 && c.id != only) continue;
    checks_failed = 0;
    try {
      c.fn();
    } catch (const std::exception& e) {
      sub(false, std::string("exception: ") + e.what());
    }
    const bool pass = checks_failed == 0;
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", c.id, c.title);
    if (!pass) ++failures;
  }
  return failures;
}
