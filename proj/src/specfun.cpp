#include "casimir/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr int kClosedFormMaxL = 10;

// I_{nu+1}/I_nu from its continued fraction (modified Lentz).
double ratio_i_cf(double nu, double z) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-17;
  double f = tiny, c = f, d = 0.0;
  for (int j = 1; j < 10000000; ++j) {
    const double b = 2.0 * (nu + j) / z;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) return f;
  }
  throw DomainError("continued fraction for I_{nu+1}/I_nu did not converge");
}

// sum_{k=0}^{l} (l+k)!/(k!(l-k)!) w^k, w = 1/(2z); K_{l+1/2} = sqrt(pi/2z) e^{-z} S_l
double k_closed_sum(int l, double w) {
  // Horner from the top coefficient
  std::vector<double> a(l + 1);
  a[0] = 1.0;
  for (int k = 1; k <= l; ++k)
    a[k] = a[k - 1] * static_cast<double>((l + k) * (l - k + 1)) / k;
  double s = a[l];
  for (int k = l - 1; k >= 0; --k) s = s * w + a[k];
  return s;
}

}  // namespace

double BesselLogTable::log_sph_k(int l) const {
  return log_k[l] + 0.5 * std::log(2.0 / (std::numbers::pi * z));
}

double BesselLogTable::log_sph_i(int l) const {
  return log_i[l] + 0.5 * std::log(std::numbers::pi / (2.0 * z));
}

BesselLogTable bessel_log_table(int l_max, double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw DomainError("Bessel argument must be positive and finite, got " +
                      std::to_string(z));
  if (l_max < 0) throw DomainError("negative Bessel order");
  BesselLogTable t;
  t.z = z;
  t.log_i.resize(l_max + 1);
  t.log_k.resize(l_max + 1);
  t.di_over_i.resize(l_max + 1);
  t.dk_over_k.resize(l_max + 1);
  t.log_ik.resize(l_max + 1);

  const double half_log = 0.5 * std::log(std::numbers::pi / (2.0 * z));

  // K: closed form anchors, then the upward ratio recurrence
  // rho_l = K_{l+1/2}/K_{l-1/2} = 1/rho_{l-1} + (2l-1)/z.
  const double w = 0.5 / z;
  const int lc = std::min(l_max, kClosedFormMaxL);
  std::vector<double> sums(lc + 1);
  for (int l = 0; l <= lc; ++l) {
    sums[l] = k_closed_sum(l, w);
    t.log_k[l] = half_log - z + std::log(sums[l]);
  }
  t.dk_over_k[0] = -1.0 - 0.5 / z;
  double rho = 0.0;  // K_{l+1/2}/K_{l-1/2}
  std::vector<double> rhos(l_max + 1, 1.0);
  for (int l = 1; l <= l_max; ++l) {
    if (l <= lc) {
      rho = sums[l] / sums[l - 1];
    } else {
      rho = 1.0 / rho + (2.0 * l - 1.0) / z;
      t.log_k[l] = t.log_k[l - 1] + std::log(rho);
    }
    t.dk_over_k[l] = -1.0 / rho - (l + 0.5) / z;
    rhos[l] = rho;
  }

  // I: top ratio from the continued fraction, Miller-style downward sweep
  // r_{l-1} = 1/((2l+1)/z + r_l), r_l = I_{l+3/2}/I_{l+1/2}.
  std::vector<double> r(l_max + 1);
  r[l_max] = ratio_i_cf(l_max + 0.5, z);
  for (int l = l_max; l >= 1; --l) r[l - 1] = 1.0 / ((2.0 * l + 1.0) / z + r[l]);
  // ln I_{1/2} = ln sinh z + 1/2 ln(2/(pi z))
  const double log_sinh = z + std::log(-std::expm1(-2.0 * z)) - std::log(2.0);
  t.log_i[0] = log_sinh + 0.5 * std::log(2.0 / (std::numbers::pi * z));
  for (int l = 1; l <= l_max; ++l) t.log_i[l] = t.log_i[l - 1] + std::log(r[l - 1]);
  for (int l = 0; l <= l_max; ++l) t.di_over_i[l] = r[l] + (l + 0.5) / z;
  // I K: each step multiplies by (I_l/I_{l-1})(K_l/K_{l-1}) ~ 1, so the
  // product keeps full relative precision where ln I + ln K would not.
  t.log_ik[0] = std::log(-std::expm1(-2.0 * z) / (2.0 * z));
  for (int l = 1; l <= l_max; ++l) t.log_ik[l] = t.log_ik[l - 1] + std::log(r[l - 1] * rhos[l]);
  return t;
}

ScaledBesselPair bessel_ik_half(int l, double z, int l_ceiling) {
  if (l < 0 || l > l_ceiling)
    throw DomainError("Bessel order l=" + std::to_string(l) +
                      " outside [0, " + std::to_string(l_ceiling) + "]");
  const BesselLogTable t = bessel_log_table(l, z);
  ScaledBesselPair p;
  p.order_half = l + 0.5;
  p.z = z;
  p.i_scaled = std::exp(t.log_i[l] - z);
  p.k_scaled = std::exp(t.log_k[l] + z);
  p.di_scaled = p.i_scaled * t.di_over_i[l];
  p.dk_scaled = p.k_scaled * t.dk_over_k[l];
  return p;
}

// ---------------------------------------------------------------------------
// 3j symbols by the three-term recursion in l3.  Forward from l3_min through
// the lower non-classical region, backward from l3_max, matched where the
// forward sweep stops growing; normalised by sum (2l3+1) f^2 = 1.

ThreeJColumn wigner3j_column(int l1, int l2, int m1, int m2) {
  ThreeJColumn col;
  const int m3 = -m1 - m2;
  if (l1 < 0 || l2 < 0 || std::abs(m1) > l1 || std::abs(m2) > l2) return col;
  const int jmin = std::max(std::abs(l1 - l2), std::abs(m3));
  const int jmax = l1 + l2;
  if (jmin > jmax) return col;
  col.l3_min = jmin;
  col.l3_max = jmax;
  const int n = jmax - jmin + 1;
  col.values.assign(n, 0.0);
  std::vector<double>& f = col.values;

  const double dl1 = l1, dl2 = l2, dm1 = m1, dm2 = m2, dm3 = m3;
  auto A = [&](double j) {
    return std::sqrt((j * j - (dl1 - dl2) * (dl1 - dl2)) *
                     ((dl1 + dl2 + 1) * (dl1 + dl2 + 1) - j * j) *
                     (j * j - dm3 * dm3));
  };
  auto X = [&](double j) { return j * A(j + 1); };
  auto Y = [&](double j) {
    return -(2 * j + 1) * (dl1 * (dl1 + 1) * dm3 - dl2 * (dl2 + 1) * dm3 -
                           j * (j + 1) * (dm2 - dm1));
  };
  auto Z = [&](double j) { return (j + 1) * A(j); };

  if (n == 1) {
    f[0] = 1.0;
  } else {
    constexpr double big = 1e150;
    // forward
    int kf = 0;
    f[0] = 1.0;
    if (X(jmin) != 0.0) {
      f[1] = -Y(jmin) / X(jmin) * f[0];
      int k = 1;
      if (std::fabs(f[1]) >= std::fabs(f[0])) {
        kf = 1;
        while (k + 1 < n) {
          const double j = jmin + k;
          const double next = -(Y(j) * f[k] + Z(j) * f[k - 1]) / X(j);
          if (std::fabs(next) < std::fabs(f[k])) break;
          f[k + 1] = next;
          ++k;
          kf = k;
          if (std::fabs(f[k]) > big)
            for (int i = 0; i <= k; ++i) f[i] /= big;
        }
      }
    }
    // backward from the top down to kf-1 (or 0)
    const int stop = std::max(kf - 1, 0);
    std::vector<double> g(n, 0.0);
    g[n - 1] = 1.0;
    g[n - 2] = -Y(jmax) / Z(jmax) * g[n - 1];
    for (int k = n - 2; k > stop; --k) {
      const double j = jmin + k;
      g[k - 1] = -(Y(j) * g[k] + X(j) * g[k + 1]) / Z(j);
      if (std::fabs(g[k - 1]) > big)
        for (int i = k - 1; i < n; ++i) g[i] /= big;
    }
    // match on the overlap stop..kf
    double num = 0.0, den = 0.0;
    for (int k = stop; k <= kf; ++k) {
      num += f[k] * g[k];
      den += g[k] * g[k];
    }
    const double s = num / den;
    for (int k = kf + 1; k < n; ++k) f[k] = s * g[k];
    if (kf == 0 && X(jmin) == 0.0) {
      // forward sweep unavailable: take the backward solution throughout
      for (int k = 0; k < n; ++k) f[k] = g[k];
    }
  }
  double norm = 0.0;
  for (int k = 0; k < n; ++k) norm += (2.0 * (jmin + k) + 1.0) * f[k] * f[k];
  double scale = 1.0 / std::sqrt(norm);
  // sign convention: (l1 l2 l1+l2; m1 m2 m3) has sign (-1)^{l1-l2-m3}
  const int want = ((l1 - l2 - m3) % 2 == 0) ? 1 : -1;
  if ((f[n - 1] < 0 ? -1 : 1) != want) scale = -scale;
  for (double& v : f) v *= scale;
  return col;
}

double wigner3j(const ThreeJArgs& a) {
  if (a.m1 + a.m2 + a.m3 != 0) return 0.0;
  if (std::abs(a.m1) > a.l1 || std::abs(a.m2) > a.l2 || std::abs(a.m3) > a.l3)
    return 0.0;
  if (a.l3 < std::abs(a.l1 - a.l2) || a.l3 > a.l1 + a.l2) return 0.0;
  if (a.m1 == 0 && a.m2 == 0 && (a.l1 + a.l2 + a.l3) % 2 != 0) return 0.0;
  return wigner3j_column(a.l1, a.l2, a.m1, a.m2).at(a.l3);
}

}  // namespace casimir
