#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "latgas/kernels.hpp"

using namespace latgas::kernels;

namespace {
struct Batch {
  std::vector<double> A, P, kq, E, invE2, xs, yrs, c1, w0, u30;
  ModeBatch view() const {
    return {A.data(), P.data(), kq.data(), E.data(), invE2.data(),
            xs.data(), yrs.data(), c1.data(), w0.data(), u30.data()};
  }
};

Batch random_batch(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(0.05, 6.0);
  Batch b;
  for (std::size_t i = 0; i < n; ++i) {
    double P = ud(rng);
    double A = P + ud(rng);  // E^2 > 0
    double E2 = A * A - P * P;
    b.A.push_back(A);
    b.P.push_back(P);
    b.kq.push_back(ud(rng));
    b.E.push_back(std::sqrt(E2));
    b.invE2.push_back(1.0 / E2);
    b.xs.push_back(ud(rng));
    b.yrs.push_back(-ud(rng));
    b.c1.push_back(ud(rng) - 3.0);
    b.w0.push_back(ud(rng) - 3.0);
    b.u30.push_back(ud(rng) - 3.0);
  }
  return b;
}
}  // namespace

TEST_CASE("scalar and AVX2 mode steps agree") {
  if (!avx2_available()) return;  // nothing to compare on this host
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    Batch b = random_batch(n, 100 + n);
    ModeBatch mb = b.view();
    for (double t : {0.0, 0.01, 0.7, 5.0, 120.0}) {
      std::vector<double> xs(n), ys(n), xa(n), ya(n);
      mode_step_scalar(n, mb, t, xs.data(), ys.data());
      mode_step_avx2(n, mb, t, xa.data(), ya.data());
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(xa[i] == doctest::Approx(xs[i]).epsilon(1e-11));
        CHECK(ya[i] == doctest::Approx(ys[i]).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("scalar and AVX2 dot products agree") {
  if (!avx2_available()) return;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (std::size_t n : {1u, 5u, 16u, 17u, 4097u}) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = ud(rng);
      b[i] = ud(rng);
    }
    CHECK(dot_avx2(n, a.data(), b.data()) ==
          doctest::Approx(dot_scalar(n, a.data(), b.data())).epsilon(1e-12));
  }
}

TEST_CASE("mode step at t = 0 reproduces the initial deviations") {
  Batch b = random_batch(257, 9);
  ModeBatch mb = b.view();
  std::vector<double> x(257), yr(257);
  mode_step_scalar(257, mb, 0.0, x.data(), yr.data());
  for (std::size_t i = 0; i < 257; ++i) {
    // at t = 0: dx = (A c1 - P w0)/E^2, dyr = (A w0 - P c1)/E^2
    double dx = (b.A[i] * b.c1[i] - b.P[i] * b.w0[i]) * b.invE2[i];
    double dyr = (b.A[i] * b.w0[i] - b.P[i] * b.c1[i]) * b.invE2[i];
    CHECK(x[i] == doctest::Approx(b.xs[i] + dx).epsilon(1e-12));
    CHECK(yr[i] == doctest::Approx(b.yrs[i] + dyr).epsilon(1e-12));
  }
}

TEST_CASE("kernel selection") {
  set_kernel("scalar");
  CHECK(std::string(active_name()) == "scalar");
  CHECK(mode_step() == &mode_step_scalar);
  if (avx2_available()) {
    set_kernel("avx2");
    CHECK(std::string(active_name()) == "avx2");
  }
  set_kernel("auto");
  CHECK_THROWS(set_kernel("sse9"));
}
