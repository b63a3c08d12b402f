// AVX2+FMA variant of the mode-propagation kernel. The expensive part of the
// scalar loop is sin/cos/exp; here they are evaluated four lanes at a time
// with Cody-Waite range reduction and the classic Cephes minimax polynomials
// (double precision, |error| ~ 1 ulp over the argument ranges we use).

#include "latgas/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace latgas::kernels {

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

#if defined(__AVX2__) && defined(__FMA__)

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

// sin and cos of x >= 0 (arguments up to ~1e9 stay well below 1e-12 absolute
// error thanks to the three-part pi/2 split).
inline void sincos4(__m256d x, __m256d* s, __m256d* c) {
  const __m256d two_over_pi = set1(0.63661977236758134308);
  const __m256d pio2_1 = set1(1.57079632673412561417e+00);
  const __m256d pio2_2 = set1(6.07710050630396597660e-11);
  const __m256d pio2_3 = set1(2.02226624871116645580e-21);

  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, pio2_1, x);
  r = _mm256_fnmadd_pd(k, pio2_2, r);
  r = _mm256_fnmadd_pd(k, pio2_3, r);

  // quadrant q = k mod 4 in {0,1,2,3} (k >= 0 for our arguments)
  __m256d q = _mm256_sub_pd(
      k, _mm256_mul_pd(set1(4.0),
                       _mm256_floor_pd(_mm256_mul_pd(k, set1(0.25)))));

  __m256d z = _mm256_mul_pd(r, r);

  // sin(r) = r + r*z*P(z)
  __m256d ps = set1(1.58962301576546568060e-10);
  ps = _mm256_fmadd_pd(ps, z, set1(-2.50507477628578072866e-8));
  ps = _mm256_fmadd_pd(ps, z, set1(2.75573136213857245213e-6));
  ps = _mm256_fmadd_pd(ps, z, set1(-1.98412698295895385996e-4));
  ps = _mm256_fmadd_pd(ps, z, set1(8.33333333332211858878e-3));
  ps = _mm256_fmadd_pd(ps, z, set1(-1.66666666666666307295e-1));
  __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

  // cos(r) = 1 - z/2 + z^2*Q(z)
  __m256d pc = set1(-1.13585365213876817300e-11);
  pc = _mm256_fmadd_pd(pc, z, set1(2.08757008419747316778e-9));
  pc = _mm256_fmadd_pd(pc, z, set1(-2.75573141792967388112e-7));
  pc = _mm256_fmadd_pd(pc, z, set1(2.48015872888517179954e-5));
  pc = _mm256_fmadd_pd(pc, z, set1(-1.38888888888730564116e-3));
  pc = _mm256_fmadd_pd(pc, z, set1(4.16666666666665929218e-2));
  __m256d cos_r = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc,
                                  _mm256_fnmadd_pd(z, set1(0.5), set1(1.0)));

  __m256d q1 = _mm256_cmp_pd(q, set1(0.5), _CMP_GT_OQ);  // q >= 1
  __m256d q2 = _mm256_cmp_pd(q, set1(1.5), _CMP_GT_OQ);  // q >= 2
  __m256d q3 = _mm256_cmp_pd(q, set1(2.5), _CMP_GT_OQ);  // q == 3
  // odd quadrant (q in {1,3}) <=> swap sin/cos
  __m256d swap = _mm256_or_pd(_mm256_xor_pd(q1, q2), q3);
  __m256d sv = _mm256_blendv_pd(sin_r, cos_r, swap);
  __m256d cv = _mm256_blendv_pd(cos_r, sin_r, swap);
  // sign of sin: negative for q in {2,3}; sign of cos: negative for q in {1,2}
  const __m256d neg = set1(-0.0);
  __m256d ssign = _mm256_and_pd(q2, neg);
  __m256d csign = _mm256_and_pd(_mm256_andnot_pd(q3, q1), neg);
  *s = _mm256_xor_pd(sv, ssign);
  *c = _mm256_xor_pd(cv, csign);
}

// exp(x) for x <= 0 (damping factors); underflow flushes to 0.
inline __m256d exp4(__m256d x) {
  const __m256d lo = set1(-708.0);
  __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_max_pd(x, lo);

  const __m256d log2e = set1(1.4426950408889634074);
  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d ln2_hi = set1(6.93145751953125e-1);
  const __m256d ln2_lo = set1(1.42860682030941723212e-6);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  __m256d z = _mm256_mul_pd(r, r);
  __m256d p = set1(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, z, set1(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, z, set1(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = set1(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, z, set1(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, z, set1(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, z, set1(2.00000000000000000005e0));
  __m256d e = _mm256_add_pd(
      set1(1.0),
      _mm256_div_pd(_mm256_mul_pd(set1(2.0), p), _mm256_sub_pd(q, p)));

  __m128i ki = _mm256_cvtpd_epi32(k);
  __m256i k64 = _mm256_cvtepi32_epi64(ki);
  k64 = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(k64));
  return _mm256_andnot_pd(under, e);
}

#endif  // __AVX2__ && __FMA__

}  // namespace

#if defined(__AVX2__) && defined(__FMA__)

void mode_step_avx2(std::size_t n, const ModeBatch& mb, double t, double* x, double* yr) {
  const __m256d vt4 = set1(4.0 * t);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d E = _mm256_loadu_pd(mb.E + i);
    __m256d kq = _mm256_loadu_pd(mb.kq + i);
    __m256d s, c;
    sincos4(_mm256_mul_pd(E, vt4), &s, &c);
    __m256d dec = exp4(_mm256_mul_pd(kq, _mm256_sub_pd(_mm256_setzero_pd(), vt4)));
    __m256d w = _mm256_fmadd_pd(_mm256_loadu_pd(mb.w0 + i), c,
                                _mm256_mul_pd(_mm256_mul_pd(E, _mm256_loadu_pd(mb.u30 + i)), s));
    __m256d A = _mm256_loadu_pd(mb.A + i);
    __m256d P = _mm256_loadu_pd(mb.P + i);
    __m256d c1 = _mm256_loadu_pd(mb.c1 + i);
    __m256d invE2 = _mm256_loadu_pd(mb.invE2 + i);
    __m256d dx = _mm256_fmsub_pd(A, c1, _mm256_mul_pd(P, w));
    __m256d dyr = _mm256_fmsub_pd(A, w, _mm256_mul_pd(P, c1));
    __m256d di = _mm256_mul_pd(dec, invE2);
    _mm256_storeu_pd(x + i, _mm256_fmadd_pd(dx, di, _mm256_loadu_pd(mb.xs + i)));
    _mm256_storeu_pd(yr + i, _mm256_fmadd_pd(dyr, di, _mm256_loadu_pd(mb.yrs + i)));
  }
  if (i < n) {
    ModeBatch tail = mb;
    tail.A += i; tail.P += i; tail.kq += i; tail.E += i; tail.invE2 += i;
    tail.xs += i; tail.yrs += i; tail.c1 += i; tail.w0 += i; tail.u30 += i;
    mode_step_scalar(n - i, tail, t, x + i, yr + i);
  }
}

double dot_avx2(std::size_t n, const double* a, const double* b) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd(), acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

#else  // compiled without AVX2 support: keep the symbols, never selected

void mode_step_avx2(std::size_t n, const ModeBatch& mb, double t, double* x, double* yr) {
  mode_step_scalar(n, mb, t, x, yr);
}
double dot_avx2(std::size_t n, const double* a, const double* b) {
  return dot_scalar(n, a, b);
}

#endif

}  // namespace latgas::kernels

#else  // non-x86 targets

namespace latgas::kernels {
bool avx2_available() { return false; }
void mode_step_avx2(std::size_t n, const ModeBatch& mb, double t, double* x, double* yr) {
  mode_step_scalar(n, mb, t, x, yr);
}
double dot_avx2(std::size_t n, const double* a, const double* b) {
  return dot_scalar(n, a, b);
}
}  // namespace latgas::kernels

#endif
