#pragma once

#include <map>
#include <string>
#include <vector>

#include "casimir/tmatrix.hpp"

namespace casimir {

enum class SeriesKind {
  ScalarB,  // E = (hbar c / pi d) sum_j b_j (R/d)^{j-1}           (real scalar)
  EmC,      // E = -(hbar c / pi) (R^6/d^7) sum_n c_n (R/d)^n
};

enum class Provenance { Computed, PublishedTable, PrintedFormula };

const char* provenance_name(Provenance p);

struct SeriesTerm {
  double value = 0.0;
  std::string exact;       // "p/q" when known exactly, empty otherwise
  bool certified = true;   // false beyond the guaranteed order
};

struct SeriesExpansion {
  SeriesKind kind = SeriesKind::ScalarB;
  int prefactor_power = 1;  // leading power of 1/d (1 for b_j, 7 for c_n)
  std::map<int, SeriesTerm> coeffs;  // j -> b_j or n -> c_n
  Provenance provenance = Provenance::Computed;
};

// Large-distance expansion for two equal scalar spheres.  Coefficients b_j up
// to j = min(2 p_max + 2, 2 l_cut + 4) are complete.  Dirichlet/Neumann use
// exact rational arithmetic, general Robin uses doubles.
SeriesExpansion expand_scalar(const SphereSpec& a, const SphereSpec& b,
                              int p_max = 3, int l_cut = 2);
// Same, sized automatically to reach b_{j_max}.
SeriesExpansion expand_scalar_to(const SphereSpec& a, const SphereSpec& b,
                                 int j_max);

// EM expansion from the trace-log engine, c_0..c_{n_max}; exact for PEC,
// double precision for dielectrics.
SeriesExpansion expand_em(const SphereSpec& a, const SphereSpec& b, int n_max);

// The printed d^-7, d^-9, d^-10 formula in terms of polarisabilities and the
// gamma coefficients, expressed as c_0, c_1 = 0, c_2, c_3.
SeriesExpansion expand_em_dielectric(const SphereSpec& a, const SphereSpec& b);

// d^-7 bracket 23/4 (aE^2 + aM^2) - 7/2 aE aM, evaluated exactly from
// rational polarisabilities (in units of R^3); result as "p/q".
std::string casimir_polder_bracket(const std::string& alpha_e,
                                   const std::string& alpha_m);

// Published coefficient tables.
SeriesExpansion published_dd();
SeriesExpansion published_nn();
SeriesExpansion published_dn();
SeriesExpansion published_metal();

struct SeriesValue {
  double value = 0.0;              // units hbar c / R (same as the energies)
  std::vector<double> terms;       // individual contributions, in order
  std::vector<int> indices;        // j or n of each term
  int divergence_index = -1;       // first index whose |term| grows, or -1
  double value_before_divergence = 0.0;
};

// Partial sum of the first n_terms coefficient slots (in index order).
// Energies in units of hbar c / R.
SeriesValue eval_series(const SeriesExpansion& s, double radius, double d,
                        int n_terms);

}  // namespace casimir
