#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "latgas/lindblad.hpp"
#include "latgas/ops.hpp"

using namespace latgas;

namespace {
DMat random_density(std::int64_t D, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  DMat G(D, D);
  for (std::int64_t i = 0; i < D; ++i)
    for (std::int64_t j = 0; j < D; ++j) G(i, j) = cd(nd(rng), nd(rng));
  DMat rho = G * G.adjoint();
  return rho / rho.trace();
}
}  // namespace

TEST_CASE("single particle on a 2-ring: hopping eigenvalues -/+ 2J") {
  BosonSector sec({1, 2, 1.0, Boundary::Periodic}, 1);
  SpMat H = build_hamiltonian(sec, {1.0, 0.0, 1.0, 1.0, 1.0});
  Eigen::SelfAdjointEigenSolver<DMat> es{DMat(H)};
  CHECK(es.eigenvalues()(0) == doctest::Approx(-2.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(2.0));
}

TEST_CASE("BEC state is dark for the LinkBEC family") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 0.0, 0.5, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  DarkStateReport rep = dark_state_check(sec.bec_state(), H, pj);
  CHECK(rep.annihilation_residual <= 1e-12);
  CHECK(rep.hamiltonian_residual <= 1e-12);
  CHECK(rep.dark);
}

TEST_CASE("with U > 0 the BEC state is still annihilated but not stationary") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 2.0, 0.5, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  DarkStateReport rep = dark_state_check(sec.bec_state(), H, pj);
  CHECK(rep.annihilation_residual <= 1e-12);
  CHECK(rep.hamiltonian_residual > 1e-6);
}

TEST_CASE("amplitude-damping toy: exact exponential decay") {
  // two-level system, c = sigma_minus, H = 0: rho_ee(t) = e^{-2 kappa t}
  SpMat c(2, 2);
  c.insert(0, 1) = 1.0;
  PreparedJumps pj = prepare_jumps({{c, 0.7}});
  SpMat H(2, 2);
  DMat rho0 = DMat::Zero(2, 2);
  rho0(1, 1) = 1.0;
  EvolveResult er = evolve(rho0, H, pj, {0.5, 1.0, 2.0});
  for (std::size_t i = 0; i < 3; ++i) {
    double t = std::vector<double>{0.5, 1.0, 2.0}[i];
    CHECK(er.snapshots[i](1, 1).real() == doctest::Approx(std::exp(-2.0 * 0.7 * t)).epsilon(1e-7));
  }
  CHECK_FALSE(er.trace_drift_flag);
}

TEST_CASE("liouvillian is trace-free and Hermiticity-preserving (random draws)") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 1.3, 0.4, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  for (std::uint64_t s = 0; s < 100; ++s) {
    DMat rho = random_density(sec.dim(), 1000 + s);
    DMat L = liouvillian_apply(rho, H, pj);
    CHECK(std::abs(L.trace()) <= 1e-10);
    CHECK((L - L.adjoint()).norm() <= 1e-10);
  }
}

TEST_CASE("dense Liouvillian matrix agrees with the direct application") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 0.8, 0.3, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  DMat L = build_liouvillian_matrix(H, pj);
  const std::int64_t D = sec.dim();
  DMat rho = random_density(D, 7);
  DMat direct = liouvillian_apply(rho, H, pj);
  Eigen::Map<DVec> v(rho.data(), D * D);
  DVec Lv = L * v;
  CHECK((Eigen::Map<DMat>(Lv.data(), D, D) - direct).norm() <= 1e-10);
}

TEST_CASE("unique steady state = BEC for U = 0 LinkBEC") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 0.0, 0.5, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  SteadyStateResult ss = steady_state(H, pj);
  CHECK(ss.kernel_dimension == 1);
  DVec bec = sec.bec_state();
  CHECK((bec.adjoint() * ss.rho * bec).real()(0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("pure dephasing has a degenerate kernel") {
  // jump operators = on-site number operators commute with H at J = 0
  BosonSector sec({1, 2, 1.0, Boundary::Periodic}, 2);
  SpMat H(sec.dim(), sec.dim());
  std::vector<JumpOp> jumps;
  for (int s = 0; s < sec.n_sites(); ++s) jumps.push_back({sec.hop(s, s), 0.5});
  SteadyStateResult ss = steady_state(H, prepare_jumps(jumps));
  CHECK(ss.kernel_dimension > 1);
}

TEST_CASE("interacting steady state is mixed") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 2.0, 0.5, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  SteadyStateResult ss = steady_state(H, pj);
  Observables o = observables(ss.rho, sec);
  CHECK(o.purity < 1.0 - 1e-4);
  CHECK(o.purity > 0.0);
}

TEST_CASE("long-time evolution reaches the exact steady state") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 1.0, 0.5, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H = build_hamiltonian(sec, p);
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  SteadyStateResult ss = steady_state(H, pj);
  DMat rho0 = DMat::Identity(sec.dim(), sec.dim()) / double(sec.dim());
  EvolveResult er = evolve(rho0, H, pj, {60.0});
  CHECK((er.snapshots[0] - ss.rho).norm() <= 1e-6);
}

TEST_CASE("purely unitary evolution preserves purity") {
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  SpMat H = build_hamiltonian(sec, {1.0, 1.0, 1.0, 2.0 / 3.0, 2.0 / 3.0});
  PreparedJumps pj;  // no jumps
  DVec b = sec.bec_state();
  DMat rho0 = b * b.adjoint();
  EvolveResult er = evolve(rho0, H, pj, {3.0});
  CHECK((er.snapshots[0] * er.snapshots[0]).trace().real() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("all bosonic jump families conserve particle number") {
  BosonSector sec({1, 4, 1.0, Boundary::Periodic}, 2);
  SpMat Ntot(sec.dim(), sec.dim());
  for (int s = 0; s < sec.n_sites(); ++s) Ntot += sec.hop(s, s);
  for (JumpKind kind : {JumpKind::LinkBEC, JumpKind::MomentumBEC}) {
    for (const JumpOp& j : build_jump_operators(sec, {kind, 1.0}))
      CHECK(DMat(Ntot * j.op - j.op * Ntot).norm() <= 1e-9);
  }
  JumpFamily lv{JumpKind::LambdaV};
  lv.kappa_lambda_plus = lv.kappa_lambda_minus = lv.kappa_v_plus = lv.kappa_v_minus = 1.0;
  for (const JumpOp& j : build_jump_operators(sec, lv))
    CHECK(DMat(Ntot * j.op - j.op * Ntot).norm() <= 1e-9);
}

TEST_CASE("momentum-space and link dissipators act identically") {
  // The quasimomentum family is the Fourier transform of the link family:
  // the full dissipators must agree (operator sets differ by a unitary mixing).
  BosonSector sec({1, 3, 1.0, Boundary::Periodic}, 2);
  HubbardParams p{1.0, 0.0, 0.37, 2.0 / 3.0, 2.0 / 3.0};
  SpMat H(sec.dim(), sec.dim());
  PreparedJumps link = prepare_jumps(build_jump_operators(sec, {JumpKind::LinkBEC, p.kappa}));
  PreparedJumps mom = prepare_jumps(build_jump_operators(sec, {JumpKind::MomentumBEC, p.kappa}));
  for (std::uint64_t s = 0; s < 5; ++s) {
    DMat rho = random_density(sec.dim(), 42 + s);
    CHECK((liouvillian_apply(rho, H, link) - liouvillian_apply(rho, H, mom)).norm() <= 1e-8);
  }
}
