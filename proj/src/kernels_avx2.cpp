#include "rve/kernels.hpp"

#if RVE_HAVE_AVX2_BUILD

#include <immintrin.h>

#include <cmath>

namespace rve::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

// Gather component c of 4 consecutive row-major 3x3 matrices.
inline __m256d gather9(const double* base, int c) {
  return _mm256_set_pd(base[27 + c], base[18 + c], base[9 + c], base[c]);
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double inf_norm(const double* a, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_max_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(a + i)));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

void batch_det3(const double* m, std::size_t n, double* out) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const double* base = m + 9 * k;
    __m256d a0 = gather9(base, 0), a1 = gather9(base, 1), a2 = gather9(base, 2);
    __m256d a3 = gather9(base, 3), a4 = gather9(base, 4), a5 = gather9(base, 5);
    __m256d a6 = gather9(base, 6), a7 = gather9(base, 7), a8 = gather9(base, 8);
    __m256d c0 = _mm256_sub_pd(_mm256_mul_pd(a4, a8), _mm256_mul_pd(a5, a7));
    __m256d c1 = _mm256_sub_pd(_mm256_mul_pd(a3, a8), _mm256_mul_pd(a5, a6));
    __m256d c2 = _mm256_sub_pd(_mm256_mul_pd(a3, a7), _mm256_mul_pd(a4, a6));
    __m256d det = _mm256_mul_pd(a0, c0);
    det = _mm256_sub_pd(det, _mm256_mul_pd(a1, c1));
    det = _mm256_add_pd(det, _mm256_mul_pd(a2, c2));
    _mm256_storeu_pd(out + k, det);
  }
  if (k < n) scalar::batch_det3(m + 9 * k, n - k, out + k);
}

void batch_von_mises(const double* sigma, std::size_t n, double* out) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d three = _mm256_set1_pd(3.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const double* base = sigma + 9 * k;
    __m256d s00 = gather9(base, 0), s11 = gather9(base, 4), s22 = gather9(base, 8);
    __m256d s01 = gather9(base, 1), s02 = gather9(base, 2), s12 = gather9(base, 5);
    __m256d d01 = _mm256_sub_pd(s00, s11);
    __m256d d12 = _mm256_sub_pd(s11, s22);
    __m256d d20 = _mm256_sub_pd(s22, s00);
    __m256d diag = _mm256_mul_pd(d01, d01);
    diag = _mm256_fmadd_pd(d12, d12, diag);
    diag = _mm256_fmadd_pd(d20, d20, diag);
    __m256d sh = _mm256_mul_pd(s01, s01);
    sh = _mm256_fmadd_pd(s02, s02, sh);
    sh = _mm256_fmadd_pd(s12, s12, sh);
    __m256d v = _mm256_fmadd_pd(three, sh, _mm256_mul_pd(half, diag));
    _mm256_storeu_pd(out + k, _mm256_sqrt_pd(v));
  }
  if (k < n) scalar::batch_von_mises(sigma + 9 * k, n - k, out + k);
}

}  // namespace rve::kernels::avx2

#endif  // RVE_HAVE_AVX2_BUILD
