#pragma once

// Dense double-precision kernels with a portable scalar reference and an
// AVX2/FMA variant chosen at runtime.  The linear algebra used by the
// determinant code goes exclusively through these entry points.

#include <cstddef>
#include <string_view>

namespace casimir::kernels {

enum class Isa { Scalar, Avx2 };

// Best ISA supported by the running CPU (and compiled in).
Isa detected_isa();
// ISA currently in use.  Defaults to detected_isa(); the environment variable
// CASIMIR_ISA=scalar forces the reference path.
Isa active_isa();
// Override for tests/benchmarks.  Requesting an unsupported ISA falls back to
// scalar.  Not meant to be toggled while other threads compute.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

double dot(const double* a, const double* b, std::size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
// C(m x n) = A(m x k) * B(k x n), all row-major and densely packed.
void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n);
// Trailing update of an LU step: for i in [0, rows) and j in [0, cols)
//   A[i*lda + j] -= l[i*ldl] * u[j]
void rank1_update(double* a, std::size_t lda, const double* l, std::size_t ldl,
                  const double* u, std::size_t rows, std::size_t cols);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n);
void rank1_update(double* a, std::size_t lda, const double* l, std::size_t ldl,
                  const double* u, std::size_t rows, std::size_t cols);
}  // namespace scalar

namespace avx2 {
bool compiled();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n);
void rank1_update(double* a, std::size_t lda, const double* l, std::size_t ldl,
                  const double* u, std::size_t rows, std::size_t cols);
}  // namespace avx2

}  // namespace casimir::kernels
