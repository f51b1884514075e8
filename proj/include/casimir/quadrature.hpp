#pragma once

#include <functional>
#include <vector>

namespace casimir {

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_evaluations = 30000;
  int workers = 1;
};

struct QuadResult {
  std::vector<double> value;
  std::vector<double> error;  // per component
  int evaluations = 0;
  bool converged = false;
};

using VectorIntegrand = std::function<std::vector<double>(double)>;

// Integral over t in (0, inf) of a vector-valued, exponentially decaying
// integrand.  Adaptive Gauss-Kronrod (7/15) on dyadic panels; the tail is
// extended until it drops below 1e-16 of the peak.  Every component must meet
// max(abs_tol, rel_tol |I_c|).
QuadResult integrate_half_line(const VectorIntegrand& f, std::size_t dim,
                               const QuadOptions& opt);

// Scalar convenience wrapper on a finite interval (used by tests).
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12);

}  // namespace casimir
