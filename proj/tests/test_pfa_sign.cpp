#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "casimir/energy.hpp"
#include "casimir/errors.hpp"
#include "casimir/pfa_sign.hpp"

using namespace casimir;

namespace {

const double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();

SphereSpec robin(double z) {
  if (z == 0.0) return SphereSpec::dirichlet(1.0);
  if (std::isinf(z)) return SphereSpec::neumann(1.0);
  return SphereSpec::robin(1.0, z);
}

struct Curve {
  std::vector<double> d, ratio, energy;
};

Curve sample(double z1, double z2, int lmax = 12) {
  Curve c;
  const SphereSpec a = robin(z1), b = robin(z2);
  for (double x = 0.06; x < 0.4601; x += 0.02) {
    const double d = 1.0 / x;
    const double e = casimir_energy(Geometry::pair(a, b, d), FieldKind::RealScalar, lmax).value;
    c.d.push_back(d);
    c.energy.push_back(e);
    c.ratio.push_back(e / pfa_energy(1.0, d, pfa_case(a, b)));
  }
  return c;
}

SignProfile profile(double z1, double z2, const Curve& c) {
  const double s = pfa_case(robin(z1), robin(z2)) == PfaCase::Like ? -1.0 : 1.0;
  return find_zero_force(c.d, c.ratio, 1.0, s);
}

}  // namespace

TEST_CASE("plate amplitudes and the sphere PFA") {
  CHECK(kPhi0Like == doctest::Approx(-kPi * kPi / 1440.0).epsilon(1e-15));
  CHECK(kPhi0Unlike == doctest::Approx(7.0 * kPi * kPi / 11520.0).epsilon(1e-15));
  CHECK(kPhi0Unlike == doctest::Approx(-7.0 / 8.0 * kPhi0Like).epsilon(1e-15));
  CHECK(pfa_energy(1.0, 3.0, PfaCase::Like) == doctest::Approx(-kPi * kPi * kPi / 2880.0).epsilon(1e-15));
  CHECK(pfa_energy_em(1.0, 3.0) == doctest::Approx(-kPi * kPi * kPi / 1440.0).epsilon(1e-15));
  CHECK(pfa_energy_em(1.0, 2.7) / pfa_energy(1.0, 2.7, PfaCase::Like) == doctest::Approx(2.0));
  // (d - 2R)^-2 divergence
  CHECK(pfa_energy_em(1.0, 2.0 + 1e-3) / pfa_energy_em(1.0, 2.0 + 2e-3) == doctest::Approx(4.0));
  CHECK_THROWS_AS(pfa_energy(1.0, 2.0, PfaCase::Like), ConfigError);
  CHECK_THROWS_AS(pfa_energy_em(1.0, 1.5), ConfigError);
}

TEST_CASE("PFA case selection") {
  CHECK(pfa_case(robin(0), robin(0)) == PfaCase::Like);
  CHECK(pfa_case(robin(0), robin(kInf)) == PfaCase::Unlike);
  CHECK(pfa_case(robin(3), robin(0)) == PfaCase::Unlike);
  CHECK(pfa_case(robin(3), robin(kInf)) == PfaCase::Like);
  CHECK(pfa_case(robin(3), robin(1)) == PfaCase::Like);
  const SphereSpec d = robin(0), n = robin(kInf);
  CHECK(pfa_energy_for(FieldKind::ComplexScalar, d, n, 3.0) == doctest::Approx(2 * pfa_energy(1.0, 3.0, PfaCase::Unlike)));
}

TEST_CASE("natural spline reproduces cubics' interior and is exact on lines") {
  std::vector<double> x, y;
  for (int i = 0; i < 9; ++i) {
    x.push_back(0.3 * i * i + i);
    y.push_back(2.0 - 0.5 * x.back());
  }
  const NaturalSpline s(x, y);
  for (double t : {0.1, 1.7, 9.9, 25.0}) {
    CHECK(s(t) == doctest::Approx(2.0 - 0.5 * t).epsilon(1e-13));
    CHECK(s.derivative(t) == doctest::Approx(-0.5).epsilon(1e-12));
  }
  std::vector<double> xs, ys;
  for (int i = 0; i <= 40; ++i) {
    xs.push_back(i * 0.1);
    ys.push_back(std::sin(xs.back()));
  }
  const NaturalSpline sn(xs, ys);
  CHECK(sn(1.234) == doctest::Approx(std::sin(1.234)).epsilon(1e-5));
  CHECK(sn.derivative(2.05) == doctest::Approx(std::cos(2.05)).epsilon(1e-4));
  CHECK_THROWS_AS(NaturalSpline({1, 2}, {1, 2}), ConfigError);
  CHECK_THROWS_AS(NaturalSpline({1, 1, 2}, {1, 2, 3}), ConfigError);
}

TEST_CASE("zero-force finder on a synthetic energy with a known minimum") {
  // E(d) = -(d-2)^{-3} + 0.01 (d-2)^{-1}: E' = 0 at (d-2)^2 = 300, d0 = 2 + sqrt(300)
  std::vector<double> d, r;
  for (int i = 0; i < 30; ++i) {
    const double x = 2.5 + i * 1.0;
    const double e = -std::pow(x - 2, -3) + 0.01 / (x - 2);
    d.push_back(x);
    r.push_back(e / pfa_energy(1.0, x, PfaCase::Like));
  }
  const SignProfile p = find_zero_force(d, r, 1.0, -1.0);
  REQUIRE(p.zeros.size() == 1);
  CHECK(p.zeros[0].d0 == doctest::Approx(2.0 + std::sqrt(300.0)).epsilon(2e-3));
  // attractive at small d, repulsive beyond d0
  CHECK_FALSE(p.zeros[0].minus_to_plus);
  REQUIRE(p.regimes.size() == 2);
  CHECK(p.regimes[0].sign == ForceSign::Attractive);
  CHECK(p.regimes[1].sign == ForceSign::Repulsive);
  CHECK_THROWS_AS(find_zero_force({3, 4, 5}, {1, 1, 1}, 1.0, -1.0), ConfigError);
}

TEST_CASE("sign-table limits from PFA case and leading coefficient") {
  struct Row {
    double z1, z2;
    char small, large;
  };
  const Row rows[] = {{0, 0, '-', '-'},   {kInf, 0, '+', '+'}, {kInf, kInf, '-', '-'},
                      {3, 0.5, '-', '-'}, {10, 0, '+', '-'},   {10, kInf, '-', '+'}};
  for (const Row& r : rows) {
    CAPTURE(r.z1);
    CAPTURE(r.z2);
    CHECK(force_sign_symbol(small_separation_sign(robin(r.z1), robin(r.z2))) == r.small);
    CHECK(force_sign_symbol(large_separation_sign(robin(r.z1), robin(r.z2))) == r.large);
  }
}

TEST_CASE("Dirichlet-Dirichlet: attractive everywhere, no zeros") {
  const SignProfile p = profile(0, 0, sample(0, 0));
  CHECK(p.zeros.empty());
  REQUIRE(p.regimes.size() == 1);
  CHECK(p.regimes[0].sign == ForceSign::Attractive);
}

TEST_CASE("Dirichlet with lambda/R = 10: one transition, repulsive at short range") {
  const Curve c = sample(0, 10);
  const SignProfile p = profile(0, 10, c);
  REQUIRE(p.zeros.size() == 1);
  CHECK(p.zeros[0].minus_to_plus);
  CHECK_FALSE(p.zeros[0].unresolved);
  CHECK(p.regimes.front().sign == ForceSign::Repulsive);
  CHECK(p.regimes.back().sign == ForceSign::Attractive);
  // raw central differences of E change sign across d0 (energy minimum)
  const double d0 = p.zeros[0].d0;
  const SphereSpec a = robin(0), b = robin(10);
  auto e = [&](double d) { return casimir_energy(Geometry::pair(a, b, d), FieldKind::RealScalar, 12).value; };
  const double h = 0.15;
  CHECK(e(d0 - h) - e(d0 - 2 * h) < 0.0);  // falling towards the minimum
  CHECK(e(d0 + 2 * h) - e(d0 + h) > 0.0);  // rising after it
}

TEST_CASE("Neumann with lambda/R = 10: one transition the other way") {
  const SignProfile p = profile(kInf, 10, sample(kInf, 10));
  REQUIRE(p.zeros.size() == 1);
  CHECK_FALSE(p.zeros[0].minus_to_plus);
  CHECK(p.regimes.front().sign == ForceSign::Attractive);
  CHECK(p.regimes.back().sign == ForceSign::Repulsive);
}

TEST_CASE("lambda_1/R = 20, lambda_2/R = 1: two transitions, repulsive in between") {
  const SignProfile p = profile(20, 1, sample(20, 1));
  REQUIRE(p.zeros.size() == 2);
  CHECK(p.zeros[0].d0 < p.zeros[1].d0);
  CHECK_FALSE(p.zeros[0].minus_to_plus);  // inner: d_{+=>-}
  CHECK(p.zeros[1].minus_to_plus);        // outer: d_{-=>+}
  REQUIRE(p.regimes.size() == 3);
  CHECK(p.regimes[1].sign == ForceSign::Repulsive);
}

TEST_CASE("equal lambdas: always attractive") {
  const SignProfile p = profile(1, 1, sample(1, 1));
  CHECK(p.zeros.empty());
  CHECK(p.regimes[0].sign == ForceSign::Attractive);
}

TEST_CASE("spline fidelity: denser sampling moves d0 by less than the resolution") {
  const Curve c = sample(0, 10);
  const SignProfile p = profile(0, 10, c);
  REQUIRE(p.zeros.size() == 1);
  // insert extra samples around d0
  Curve dense = c;
  const SphereSpec a = robin(0), b = robin(10);
  for (double off : {-0.2, -0.1, 0.1, 0.2}) {
    const double d = p.zeros[0].d0 + off;
    dense.d.push_back(d);
    dense.ratio.push_back(casimir_energy(Geometry::pair(a, b, d), FieldKind::RealScalar, 12).value /
                          pfa_energy(1.0, d, PfaCase::Unlike));
  }
  std::vector<std::size_t> ord(dense.d.size());
  for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
  std::sort(ord.begin(), ord.end(), [&](auto x, auto y) { return dense.d[x] < dense.d[y]; });
  std::vector<double> dd, rr;
  for (auto i : ord) {
    dd.push_back(dense.d[i]);
    rr.push_back(dense.ratio[i]);
  }
  const SignProfile q = find_zero_force(dd, rr, 1.0, 1.0);
  REQUIRE(q.zeros.size() == 1);
  CHECK(std::fabs(q.zeros[0].d0 - p.zeros[0].d0) < p.zeros[0].resolution);
}
