#pragma once

#include <string>
#include <vector>

#include "casimir/energy.hpp"
#include "casimir/tmatrix.hpp"

namespace casimir {

// Parallel-plate amplitudes (real scalar, per unit area times L^3).
inline constexpr double kPhi0Like = -9.869604401089358 / 1440.0;         // -pi^2/1440
inline constexpr double kPhi0Unlike = 7.0 * 9.869604401089358 / 11520.0;  // 7 pi^2/11520

enum class PfaCase { Like, Unlike };

// Unlike iff exactly one sphere is Dirichlet.
PfaCase pfa_case(const SphereSpec& a, const SphereSpec& b);

// E_PFA = Phi0 (pi/2) R / (d-2R)^2 for a real scalar, in hbar c units.
double pfa_energy(double radius, double d, PfaCase c);
// -(pi^3/1440) R / (d-2R)^2
double pfa_energy_em(double radius, double d);
// Dispatch by field; a complex scalar counts twice.
double pfa_energy_for(FieldKind kind, const SphereSpec& a, const SphereSpec& b,
                      double d);

enum class ForceSign { Attractive, Repulsive };
const char* force_sign_name(ForceSign s);
char force_sign_symbol(ForceSign s);  // '-' attractive, '+' repulsive

struct Regime {
  double d_lo = 0.0, d_hi = 0.0;
  ForceSign sign = ForceSign::Attractive;
};

struct ZeroForce {
  double d0 = 0.0;
  double tau = 0.0;         // t(d) = tau (d/R - 2)^2 tangent to E/E_PFA at d0
  double resolution = 0.0;  // local grid spacing / 10
  // true: attractive above d0, repulsive below (d_{- => +}, energy minimum)
  bool minus_to_plus = true;
  bool unresolved = false;  // tangency at the grid boundary
};

struct SignProfile {
  std::vector<Regime> regimes;  // ascending in d, alternating sign
  std::vector<ZeroForce> zeros;
  std::string parameters;
};

// Natural cubic spline through (x_i, y_i), x strictly increasing.
class NaturalSpline {
 public:
  NaturalSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;
  double derivative(double t) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::size_t segment(double t) const;
  std::vector<double> x_, y_, m_;  // m_: second derivatives
};

// Zero-force distances from samples of ratio = E/E_PFA on a monotone d grid.
// e_pfa_sign is the sign of E_PFA (negative for the like case).
SignProfile find_zero_force(const std::vector<double>& d,
                            const std::vector<double>& ratio, double radius,
                            double e_pfa_sign);

// Limits of the sign table.  Small separations from the plate amplitude,
// large separations from the leading nonvanishing large-distance coefficient.
ForceSign small_separation_sign(const SphereSpec& a, const SphereSpec& b);
ForceSign large_separation_sign(const SphereSpec& a, const SphereSpec& b);

}  // namespace casimir
