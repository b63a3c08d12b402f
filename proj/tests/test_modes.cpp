#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latgas/modes.hpp"

using namespace latgas;

TEST_CASE("steady occupation example: A = 2, P = 1, kq = 1 gives x = 1/8") {
  ModeMomentState ss = steady_moments({2.0, 1.0, 1.0});
  // x = P^2 / (2 (kq^2 + E^2)) with E^2 = 3
  CHECK(ss.x == doctest::Approx(0.125));
  // y = -P (A + i kq)(x + 1/2) / (kq^2 + A^2)
  CHECK(ss.y.real() == doctest::Approx(-2.0 * 0.625 / 5.0));
  CHECK(ss.y.imag() == doctest::Approx(-0.625 / 5.0));
  CHECK(ss.physical());
}

TEST_CASE("steady state is a fixed point of the moment ODEs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(0.1, 5.0);
  for (int i = 0; i < 50; ++i) {
    double eps = ud(rng), Un = ud(rng), kq = ud(rng);
    ModeParams m = bogoliubov_mode(eps, Un, kq);
    ModeMomentState ss = steady_moments(m);
    double dx = -4.0 * m.kq * ss.x - 4.0 * m.P * ss.y.imag();
    double dyr = -4.0 * m.kq * ss.y.real() + 4.0 * m.A * ss.y.imag();
    double dyi =
        -4.0 * m.P * (ss.x + 0.5) - 4.0 * m.A * ss.y.real() - 4.0 * m.kq * ss.y.imag();
    CHECK(std::abs(dx) <= 1e-10);
    CHECK(std::abs(dyr) <= 1e-10);
    CHECK(std::abs(dyi) <= 1e-10);
    CHECK(ss.physical());
  }
}

TEST_CASE("squeezing identity cosh^2(2 theta) = coth^2(beta/2)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ud(0.05, 8.0);
  for (int i = 0; i < 50; ++i) {
    double eps = ud(rng), Un = ud(rng), kq = ud(rng);
    SqueezedSpec sq = steady_squeezing(eps, Un, kq);
    CHECK(sq.cosh2_2theta() == doctest::Approx(sq.coth2_half_beta()).epsilon(1e-12));
    const double E2 = eps * eps + 2.0 * Un * eps;
    const double expect = (kq * kq + (eps + Un) * (eps + Un)) / (kq * kq + E2);
    CHECK(sq.cosh2_2theta() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::tan(sq.phi) == doctest::Approx(kq / (eps + Un)).epsilon(1e-12));
  }
}

TEST_CASE("noninteracting modes are pure") {
  SqueezedSpec sq = steady_squeezing(1.3, 0.0, 0.7);
  CHECK(sq.pure);
  CHECK(sq.theta == 0.0);
  ModeMomentState ss = steady_moments(bogoliubov_mode(1.3, 0.0, 0.7));
  CHECK(ss.x == 0.0);
  CHECK(std::abs(ss.y) == 0.0);
}

TEST_CASE("closed-form propagation matches RK45 from random initial conditions") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ud(0.1, 4.0);
  std::vector<double> ts{0.05, 0.3, 1.0, 3.0, 10.0};
  for (int i = 0; i < 20; ++i) {
    ModeParams m = bogoliubov_mode(ud(rng), ud(rng), ud(rng));
    ModeMomentState init{ud(rng), cd(0.2 * ud(rng), -0.1 * ud(rng))};
    auto cf = evolve_moments(m, init, ts, EvolveMethod::ClosedForm);
    auto rk = evolve_moments(m, init, ts, EvolveMethod::RK45);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      CHECK(cf[k].x == doctest::Approx(rk[k].x).epsilon(1e-8));
      CHECK(cf[k].y.real() == doctest::Approx(rk[k].y.real()).epsilon(1e-8));
      CHECK(cf[k].y.imag() == doctest::Approx(rk[k].y.imag()).epsilon(1e-8));
    }
  }
}

TEST_CASE("evolution relaxes to the fixed point") {
  ModeParams m = bogoliubov_mode(1.0, 0.5, 0.8);
  ModeMomentState init{3.0, cd(0.0, 0.0)};
  auto out = evolve_moments(m, init, {20.0});
  ModeMomentState ss = steady_moments(m);
  CHECK(out[0].x == doctest::Approx(ss.x).epsilon(1e-8));
  CHECK(out[0].y.real() == doctest::Approx(ss.y.real()).epsilon(1e-8));
}

TEST_CASE("guard rails") {
  CHECK_THROWS(steady_squeezing(0.0, 1.0, 0.0));                       // q = 0 mode
  CHECK_THROWS(steady_moments(ModeParams{1.0, 0.5, 0.0}));             // undamped, P != 0
  CHECK_THROWS(evolve_moments(ModeParams{1.0, 1.0, 0.5}, {}, {1.0}));  // E^2 = 0 closed form
}
