#include "casimir/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

namespace casimir::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) {
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

void rank1_update(double* a, std::size_t lda, const double* l, std::size_t ldl,
                  const double* u, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double li = l[i * ldl];
    if (li == 0.0) continue;
    axpy(-li, u, a + i * lda, cols);
  }
}

}  // namespace scalar

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*gemm)(const double*, const double*, double*, std::size_t, std::size_t,
               std::size_t);
  void (*rank1)(double*, std::size_t, const double*, std::size_t,
                const double*, std::size_t, std::size_t);
};

constexpr Table kScalar{scalar::dot, scalar::axpy, scalar::gemm,
                        scalar::rank1_update};
constexpr Table kAvx2{avx2::dot, avx2::axpy, avx2::gemm, avx2::rank1_update};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("CASIMIR_ISA")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return detected_isa();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> t{initial_isa() == Isa::Avx2 ? &kAvx2
                                                                : &kScalar};
  return t;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa =
      (avx2::compiled() && cpu_has_avx2()) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

Isa active_isa() {
  return current().load(std::memory_order_relaxed) == &kAvx2 ? Isa::Avx2
                                                               : Isa::Scalar;
}

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
  current().store(isa == Isa::Avx2 ? &kAvx2 : &kScalar,
                  std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) {
  return current().load(std::memory_order_relaxed)->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  current().load(std::memory_order_relaxed)->axpy(alpha, x, y, n);
}

void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) {
  current().load(std::memory_order_relaxed)->gemm(a, b, c, m, k, n);
}

void rank1_update(double* a, std::size_t lda, const double* l, std::size_t ldl,
                  const double* u, std::size_t rows, std::size_t cols) {
  current().load(std::memory_order_relaxed)->rank1(a, lda, l, ldl, u, rows,
                                                   cols);
}

}  // namespace casimir::kernels
