#pragma once

#include <vector>

namespace casimir {

constexpr int kDefaultLCeiling = 100;

// I_nu(z), K_nu(z) at nu = l + 1/2, scaled by e^{-z} and e^{+z} respectively.
struct ScaledBesselPair {
  double order_half = 0.5;  // nu
  double z = 0.0;
  double i_scaled = 0.0;   // I_nu(z) e^{-z}
  double k_scaled = 0.0;   // K_nu(z) e^{+z}
  double di_scaled = 0.0;  // I'_nu(z) e^{-z}
  double dk_scaled = 0.0;  // K'_nu(z) e^{+z}
};

ScaledBesselPair bessel_ik_half(int l, double z, int l_ceiling = kDefaultLCeiling);

// All orders 0..l_max at one argument, in log form.  This is what the matrix
// assembly consumes: everything stays finite for z in [1e-6, 1e4], l <= 200.
struct BesselLogTable {
  double z = 0.0;
  std::vector<double> log_i;       // ln I_{l+1/2}(z)
  std::vector<double> log_k;       // ln K_{l+1/2}(z)
  std::vector<double> di_over_i;   // I'/I
  std::vector<double> dk_over_k;   // K'/K
  std::vector<double> log_ik;      // ln(I K), accurate even when ln I ~ -ln K is large
  int l_max() const { return static_cast<int>(log_i.size()) - 1; }
  // ln k_l(z) with k_l(z) = sqrt(2/(pi z)) K_{l+1/2}(z) = e^{-z}/z * poly(1/z)
  double log_sph_k(int l) const;
  // ln i_l(z) with i_l(z) = sqrt(pi/(2z)) I_{l+1/2}(z)
  double log_sph_i(int l) const;
};

BesselLogTable bessel_log_table(int l_max, double z);

struct ThreeJArgs {
  int l1 = 0, l2 = 0, l3 = 0;
  int m1 = 0, m2 = 0, m3 = 0;
};

double wigner3j(const ThreeJArgs& a);

// (l1 l2 l3; m1 m2 -m1-m2) for every admissible l3, l3_min..l3_max.
struct ThreeJColumn {
  int l3_min = 0;
  int l3_max = -1;
  std::vector<double> values;
  double at(int l3) const {
    return (l3 < l3_min || l3 > l3_max) ? 0.0 : values[l3 - l3_min];
  }
};

ThreeJColumn wigner3j_column(int l1, int l2, int m1, int m2);

}  // namespace casimir
