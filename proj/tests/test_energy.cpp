#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "casimir/energy.hpp"
#include "casimir/errors.hpp"
#include "casimir/linalg.hpp"
#include "casimir/translation.hpp"

using namespace casimir;

namespace {

constexpr double kTol = 1e-7;  // comfortably above the 1e-9 quadrature target

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace

TEST_CASE("quadrature on known integrals") {
  QuadOptions q;
  q.rel_tol = 1e-11;
  const QuadResult r = integrate_half_line(
      [](double t) { return std::vector<double>{std::exp(-t), t * t * std::exp(-2 * t), 1.0 / (1.0 + t * t) * std::exp(-t / 50)}; },
      3, q);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(r.value[1] == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadrature is deterministic for any worker count") {
  const Geometry g = Geometry::pair(SphereSpec::robin(1.0, 0.5), SphereSpec::neumann(1.0), 3.0);
  QuadOptions a, b;
  b.workers = 4;
  const EnergyEstimate x = casimir_energy(g, FieldKind::RealScalar, 8, a);
  const EnergyEstimate y = casimir_energy(g, FieldKind::RealScalar, 8, b);
  CHECK(x.value == y.value);  // bitwise
  CHECK(x.history == y.history);
}

TEST_CASE("extrapolation recovers a synthetic exponential law") {
  const Geometry g = Geometry::pair(SphereSpec::dirichlet(1.0), SphereSpec::dirichlet(1.0), 3.0);
  std::vector<std::pair<int, double>> h;
  for (int l = 0; l <= 9; ++l) h.emplace_back(l, -1.0 + 0.3 * std::exp(-0.8 * l));
  const Extrapolation ex = extrapolate(h, g);
  CHECK(ex.fitted);
  CHECK(ex.value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ex.rate == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(ex.delta == doctest::Approx(0.8).epsilon(1e-10));  // gap / R = 1
  // non-monotone history falls back to the last value
  h.back().second = 5.0;
  const Extrapolation bad = extrapolate(h, g);
  CHECK_FALSE(bad.fitted);
  CHECK(bad.value == 5.0);
  CHECK_THROWS_AS(extrapolate({{0, 1.0}, {1, 2.0}}, g), ConfigError);
}

TEST_CASE("m-block factorisation matches the full (l, m) determinant") {
  // Build N = T1 U12 T2 U21 over all m in [-L, L] without balancing, and
  // compare ln det(1 - N) to the m >= 0, weight-2 block evaluation.
  const int L = 5;
  const double kappa = 0.8, d = 2.6;
  const SphereSpec s1 = SphereSpec::robin(1.0, 0.4), s2 = SphereSpec::neumann(0.8);
  std::vector<std::pair<int, int>> idx;
  for (int l = 0; l <= L; ++l)
    for (int m = -l; m <= l; ++m) idx.emplace_back(l, m);
  const std::size_t n = idx.size();
  Matrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto [li, mi] = idx[i];
      const auto [lj, mj] = idx[j];
      if (mi != mj) continue;
      a(i, j) = t_scalar_imag(s1, li, kappa) * u_scalar(lj, li, mi, kappa * d, Direction::TwoOne);
      b(i, j) = t_scalar_imag(s2, li, kappa) * u_scalar(lj, li, mi, kappa * d, Direction::OneTwo);
    }
  Matrix one_minus = multiply(a, b);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) one_minus(i, j) = (i == j ? 1.0 : 0.0) - one_minus(i, j);
  const LogDet full = log_det(one_minus);
  CHECK(full.sign == 1);
  const double blocks = integrand(Geometry::pair(s1, s2, d), FieldKind::RealScalar, kappa, L);
  CHECK(blocks == doctest::Approx(full.log_abs).epsilon(1e-12));
}

TEST_CASE("swap symmetry") {
  const SphereSpec a = SphereSpec::robin(1.0, 2.0), b = SphereSpec::dirichlet(1.0);
  const EnergyEstimate x = casimir_energy(Geometry::pair(a, b, 3.2), FieldKind::RealScalar, 10);
  const EnergyEstimate y = casimir_energy(Geometry::pair(b, a, 3.2), FieldKind::RealScalar, 10);
  CHECK(rel(x.truncated, y.truncated) < kTol);
  // unequal radii: swap changes the unit (hbar c / R_1) only
  const SphereSpec c = SphereSpec::dirichlet(0.5);
  const EnergyEstimate p = casimir_energy(Geometry::pair(a, c, 3.0), FieldKind::RealScalar, 10);
  const EnergyEstimate q = casimir_energy(Geometry::pair(c, a, 3.0), FieldKind::RealScalar, 10);
  CHECK(rel(p.truncated / a.radius, q.truncated / c.radius) < kTol);
  const EnergyEstimate e1 = casimir_energy(Geometry::pair(SphereSpec::pec(1.0), SphereSpec::dielectric(1.0, 3.0, 1.0), 3.0),
                                           FieldKind::Electromagnetic, 6);
  const EnergyEstimate e2 = casimir_energy(Geometry::pair(SphereSpec::dielectric(1.0, 3.0, 1.0), SphereSpec::pec(1.0), 3.0),
                                           FieldKind::Electromagnetic, 6);
  CHECK(rel(e1.truncated, e2.truncated) < kTol);
}

TEST_CASE("scale invariance") {
  for (double s : {0.1, 7.0}) {
    const SphereSpec a = SphereSpec::robin(1.0, 0.7), b = SphereSpec::neumann(1.0);
    SphereSpec as = a, bs = b;
    as.radius = bs.radius = s;
    const EnergyEstimate x = casimir_energy(Geometry::pair(a, b, 2.8), FieldKind::RealScalar, 9);
    const EnergyEstimate y = casimir_energy(Geometry::pair(as, bs, 2.8 * s), FieldKind::RealScalar, 9);
    CHECK(rel(x.truncated, y.truncated) < kTol);
  }
}

TEST_CASE("two-sphere N-body path equals the pair path") {
  const Geometry g = Geometry::pair(SphereSpec::dirichlet(1.0), SphereSpec::robin(0.6, 3.0), 2.9);
  const auto h2 = integrand_history(g, FieldKind::RealScalar, 0.7, 7);
  const auto hn = integrand_history_nbody(g, FieldKind::RealScalar, 0.7, 7);
  REQUIRE(h2.size() == hn.size());
  for (std::size_t i = 0; i < h2.size(); ++i) CHECK(hn[i] == doctest::Approx(h2[i]).epsilon(1e-12));
  const EnergyEstimate a = casimir_energy(g, FieldKind::RealScalar, 7);
  const EnergyEstimate b = casimir_energy_nbody(g, FieldKind::RealScalar, 7);
  CHECK(rel(a.truncated, b.truncated) < kTol);
  const Geometry e = Geometry::pair(SphereSpec::pec(1.0), SphereSpec::pec(1.0), 3.0);
  CHECK(rel(casimir_energy_nbody(e, FieldKind::Electromagnetic, 5).truncated,
            casimir_energy(e, FieldKind::Electromagnetic, 5).truncated) < kTol);
}

TEST_CASE("three well-separated spheres: pairwise additivity to leading order") {
  const SphereSpec s = SphereSpec::dirichlet(1.0);
  Geometry g;
  g.spheres = {s, s, s};
  g.centers = {0.0, 12.0, 24.0};
  const double e3 = casimir_energy_nbody(g, FieldKind::RealScalar, 3).truncated;
  const double e12 = casimir_energy(Geometry::pair(s, s, 12.0), FieldKind::RealScalar, 3).truncated;
  const double e13 = casimir_energy(Geometry::pair(s, s, 24.0), FieldKind::RealScalar, 3).truncated;
  const double pair_sum = 2 * e12 + e13;
  CHECK(e3 < 0.0);
  // the irreducible three-body part is suppressed by ~R/d
  CHECK(rel(e3, pair_sum) < 0.05);
  CHECK(rel(e3, pair_sum) > 0.0);
}

TEST_CASE("signs, vacuum and field multiplicity") {
  const SphereSpec d = SphereSpec::dirichlet(1.0), n = SphereSpec::neumann(1.0);
  CHECK(casimir_energy(Geometry::pair(d, d, 2.5), FieldKind::RealScalar, 8).value < 0.0);
  CHECK(casimir_energy(Geometry::pair(n, n, 2.5), FieldKind::RealScalar, 8).value < 0.0);
  CHECK(casimir_energy(Geometry::pair(d, n, 2.5), FieldKind::RealScalar, 8).value > 0.0);
  CHECK(casimir_energy(Geometry::pair(SphereSpec::pec(1.0), SphereSpec::pec(1.0), 2.5),
                       FieldKind::Electromagnetic, 8).value < 0.0);
  const EnergyEstimate v = casimir_energy(
      Geometry::pair(SphereSpec::dielectric(1.0, 1.0, 1.0), SphereSpec::pec(1.0), 3.0), FieldKind::Electromagnetic, 5);
  CHECK(v.value == 0.0);
  const double re = casimir_energy(Geometry::pair(d, d, 3.0), FieldKind::RealScalar, 6).truncated;
  const double co = casimir_energy(Geometry::pair(d, d, 3.0), FieldKind::ComplexScalar, 6).truncated;
  CHECK(co == doctest::Approx(2.0 * re).epsilon(1e-12));
}

TEST_CASE("history is monotone in l for like Dirichlet spheres") {
  const EnergyEstimate e = casimir_energy(
      Geometry::pair(SphereSpec::dirichlet(1.0), SphereSpec::dirichlet(1.0), 2.5), FieldKind::RealScalar, 12);
  for (std::size_t i = 1; i < e.history.size(); ++i) CHECK(e.history[i].second < e.history[i - 1].second);
  CHECK(e.extrapolated);
  CHECK(e.value < e.truncated);
}

TEST_CASE("auto l_max meets its target") {
  const Geometry g = Geometry::pair(SphereSpec::dirichlet(1.0), SphereSpec::dirichlet(1.0), 3.0);
  const EnergyEstimate e = casimir_energy_auto(g, FieldKind::RealScalar);
  CHECK(e.extrapolated);
  CHECK(e.uncertainty <= 1e-4 * std::fabs(e.value));
  CHECK(e.l_max <= 40);
}

TEST_CASE("configuration errors") {
  const SphereSpec d = SphereSpec::dirichlet(1.0);
  CHECK_THROWS_AS(casimir_energy(Geometry::pair(d, d, 1.9), FieldKind::RealScalar, 4), ConfigError);
  CHECK_THROWS_AS(casimir_energy(Geometry::pair(d, d, 3.0), FieldKind::Electromagnetic, 4), ConfigError);
  CHECK_THROWS_AS(casimir_energy(Geometry::pair(d, d, 3.0), FieldKind::RealScalar, 101), ConfigError);
  CHECK_THROWS_AS(casimir_energy(Geometry::pair(SphereSpec::pec(1.0), SphereSpec::pec(1.0), 3.0),
                                 FieldKind::Electromagnetic, 0),
                  ConfigError);
}
