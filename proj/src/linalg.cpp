#include "casimir/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::leading(std::size_t rows, std::size_t cols) const {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(i, j);
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  kernels::gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

LogDet log_det(Matrix a) {
  const std::size_t n = a.rows();
  LogDet out;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::fabs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > best) {
        best = std::fabs(a(i, k));
        piv = i;
      }
    }
    if (best == 0.0) return {-INFINITY, 0};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      out.sign = -out.sign;
    }
    const double p = a(k, k);
    if (p < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::fabs(p));
    for (std::size_t i = k + 1; i < n; ++i) a(i, k) /= p;
    if (k + 1 < n)
      kernels::rank1_update(&a(k + 1, k + 1), n, &a(k + 1, k), n, &a(k, k + 1),
                            n - k - 1, n - k - 1);
  }
  return out;
}

double log_det_one_minus(const Matrix& nmat) {
  const std::size_t n = nmat.rows();
  if (n == 0) return 0.0;
  // ||N||_inf bound decides the route
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(nmat(i, j));
    norm = std::max(norm, row);
  }
  if (norm == 0.0) return 0.0;
  if (norm < 1e-2) {
    // ln det(1-N) = -sum_k tr(N^k)/k
    double sum = 0.0;
    Matrix power = nmat;
    double bound = norm;
    for (int k = 1; k < 64; ++k) {
      double tr = 0.0;
      for (std::size_t i = 0; i < n; ++i) tr += power(i, i);
      sum -= tr / k;
      bound *= norm;
      if (bound * static_cast<double>(n) < 1e-18 * std::fabs(sum) ||
          bound < 1e-300)
        break;
      power = multiply(power, nmat);
    }
    return sum;
  }
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) - nmat(i, j);
  const LogDet ld = log_det(std::move(a));
  if (ld.sign <= 0)
    throw DomainError(
        "det(1 - N) is not positive: spectral radius of the round-trip "
        "operator reached 1");
  return ld.log_abs;
}

}  // namespace casimir
