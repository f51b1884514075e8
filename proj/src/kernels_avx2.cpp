// AVX2/FMA variants.  Compiled with target attributes so the rest of the
// library stays baseline x86-64; only reached after a runtime CPU check.

#include "casimir/kernels.hpp"

#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CASIMIR_AVX2 1
#define CASIMIR_TARGET __attribute__((target("avx2,fma")))
#else
#define CASIMIR_AVX2 0
#define CASIMIR_TARGET
#endif

namespace casimir::kernels::avx2 {

#if CASIMIR_AVX2

bool compiled() { return true; }

CASIMIR_TARGET double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4),
                         s1);
  }
  for (; i + 4 <= n; i += 4)
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
  s0 = _mm256_add_pd(s0, s1);
  __m128d lo = _mm256_castpd256_pd128(s0);
  __m128d hi = _mm256_extractf128_pd(s0, 1);
  lo = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

CASIMIR_TARGET void axpy(double alpha, const double* x, double* y,
                         std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

CASIMIR_TARGET void gemm(const double* a, const double* b, double* c,
                         std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    std::memset(ci, 0, n * sizeof(double));
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0.0) continue;
      axpy(aip, b + p * n, ci, n);
    }
  }
}

CASIMIR_TARGET void rank1_update(double* a, std::size_t lda, const double* l,
                                 std::size_t ldl, const double* u,
                                 std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double li = l[i * ldl];
    if (li == 0.0) continue;
    axpy(-li, u, a + i * lda, cols);
  }
}

#else

bool compiled() { return false; }
double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) {
  scalar::gemm(a, b, c, m, k, n);
}
void rank1_update(double* a, std::size_t lda, const double* l, std::size_t ldl,
                  const double* u, std::size_t rows, std::size_t cols) {
  scalar::rank1_update(a, lda, l, ldl, u, rows, cols);
}

#endif

}  // namespace casimir::kernels::avx2
