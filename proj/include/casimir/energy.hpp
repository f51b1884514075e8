#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/tmatrix.hpp"

namespace casimir {

enum class FieldKind { ComplexScalar, RealScalar, Electromagnetic };

// hbar c / pi for a complex scalar, half of that for a real scalar and for
// the electromagnetic field (two polarisations carried by the matrices).
double prefactor(FieldKind kind);
const char* field_name(FieldKind kind);

struct Geometry {
  std::vector<SphereSpec> spheres;
  std::vector<double> centers;  // z coordinates, strictly increasing

  static Geometry pair(const SphereSpec& a, const SphereSpec& b, double d);
  std::size_t size() const { return spheres.size(); }
  double distance(std::size_t i, std::size_t j) const;
  // Smallest surface-to-surface gap between neighbours.
  double min_gap() const;
};

void validate(const Geometry& g, FieldKind kind);

struct Extrapolation {
  double value = 0.0;
  double delta = 0.0;        // rate per l divided by (d/R - 2)
  double rate = 0.0;         // fitted decay per unit l
  double uncertainty = 0.0;  // |last fitted correction| or |last difference|
  bool fitted = false;
};

// E^{(l)} = E_inf + A exp(-rate l), log-linear fit of the last three
// successive differences.  Throws ConfigError with fewer than 4 points.
Extrapolation extrapolate(const std::vector<std::pair<int, double>>& history,
                          const Geometry& g);

struct EnergyEstimate {
  double value = 0.0;      // extrapolated when possible, units hbar c / R_1
  double truncated = 0.0;  // E^{(l_max)}
  int l_max = 0;
  std::vector<std::pair<int, double>> history;
  double delta_fit = 0.0;
  double uncertainty = 0.0;  // extrapolation uncertainty
  bool extrapolated = false;
  double quad_error = 0.0;
  int evaluations = 0;
};

// sum_m ln det(1 - N_m(kappa)) for the first two spheres.  Per-l history
// variant returns one value per truncation l = l_min..l_max.
double integrand(const Geometry& g, FieldKind kind, double kappa, int l_max);
std::vector<double> integrand_history(const Geometry& g, FieldKind kind,
                                      double kappa, int l_max);
// Same for N collinear spheres (ln det(1 - K), K the multiple-scattering
// kernel).  Reduces to integrand_history for two spheres.
std::vector<double> integrand_history_nbody(const Geometry& g, FieldKind kind,
                                            double kappa, int l_max);

EnergyEstimate casimir_energy(const Geometry& g, FieldKind kind, int l_max,
                              const QuadOptions& quad = {});
EnergyEstimate casimir_energy_nbody(const Geometry& g, FieldKind kind,
                                    int l_max, const QuadOptions& quad = {});

// Increases l_max until the fitted correction is below target*|E| or the
// cap is reached.
EnergyEstimate casimir_energy_auto(const Geometry& g, FieldKind kind,
                                   const QuadOptions& quad = {},
                                   double target = 1e-4, int cap = 40);

}  // namespace casimir
