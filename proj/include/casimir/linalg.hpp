#pragma once

#include <cstddef>
#include <vector>

namespace casimir {

// Small dense row-major matrix.  Just enough for the per-m blocks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  // Leading rows x cols sub-block.
  Matrix leading(std::size_t rows, std::size_t cols) const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

struct LogDet {
  double log_abs = 0.0;
  int sign = 1;  // 0 for a singular matrix
};

// LU with partial pivoting; the argument is consumed.
LogDet log_det(Matrix a);

// ln det(1 - N).  Uses the trace series when N is small (keeps relative
// accuracy when the answer is ~1e-30), LU otherwise.  Throws DomainError when
// det(1 - N) <= 0.
double log_det_one_minus(const Matrix& n);

}  // namespace casimir
