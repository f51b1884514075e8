#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/gmp.hpp>
#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/tmatrix.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {

double dfact(int n) {
  double f = 1.0;
  for (int k = n; k > 1; k -= 2) f *= k;
  return f;
}

double gamma13(double x, double y) { return -(4.0 + x * (x * y + x - 6.0)) / (5.0 * (x + 2.0) * (x + 2.0)); }
double gamma14(double x) {
  const double r = (x - 1.0) / (x + 2.0);
  return 4.0 / 9.0 * r * r;
}

}  // namespace

TEST_CASE("Robin interpolates between Dirichlet and Neumann") {
  for (int l : {0, 1, 4, 9})
    for (double kappa : {0.05, 0.8, 6.0}) {
      const double d = t_scalar_imag(SphereSpec::dirichlet(1.0), l, kappa);
      const double n = t_scalar_imag(SphereSpec::neumann(1.0), l, kappa);
      CHECK(t_scalar_imag(SphereSpec::robin(1.0, 1e-10), l, kappa) ==
            doctest::Approx(d).epsilon(1e-7));
      CHECK(t_scalar_imag(SphereSpec::robin(1.0, 1e10), l, kappa) ==
            doctest::Approx(n).epsilon(1e-7));
    }
}

TEST_CASE("Dirichlet T against the closed-form Bessel ratio") {
  // T_l = (-1)^l (pi/2) I_{l+1/2}/K_{l+1/2}; for l = 0: sinh(z) e^{z} / 1 ... via oracle i_l/k_l
  for (int l : {0, 1, 2, 5})
    for (double z : {0.1, 1.0, 3.0}) {
      const double want = (l % 2 ? -1.0 : 1.0) * oracle::sph_i(l, z) / oracle::sph_k(l, z);
      CHECK(t_scalar_imag(SphereSpec::dirichlet(1.0), l, z) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("T scales with kappa R only") {
  for (auto spec : {SphereSpec::robin(1.0, 0.7), SphereSpec::neumann(1.0)}) {
    SphereSpec big = spec;
    big.radius = 3.0;
    CHECK(t_scalar_imag(big, 3, 0.4) == doctest::Approx(t_scalar_imag(spec, 3, 1.2)).epsilon(1e-13));
  }
  const EmT a = t_em_imag(SphereSpec::dielectric(2.0, 3.0, 1.5), 2, 0.5);
  const EmT b = t_em_imag(SphereSpec::dielectric(1.0, 3.0, 1.5), 2, 1.0);
  CHECK(a.tm == doctest::Approx(b.tm).epsilon(1e-13));
  CHECK(a.te == doctest::Approx(b.te).epsilon(1e-13));
}

TEST_CASE("vacuum sphere does not scatter; strong contrast approaches the conductor") {
  const EmT v = t_em_imag(SphereSpec::dielectric(1.0, 1.0, 1.0), 3, 0.9);
  CHECK(v.tm == 0.0);
  CHECK(v.te == 0.0);
  const TDiagonal td = t_diagonal(SphereSpec::dielectric(1.0, 1.0, 1.0), 0.9, 5);
  for (int l = td.l_min; l <= 5; ++l) CHECK(td.at(l, 0).sign == 0);
  for (int l : {1, 2, 6}) {
    const EmT p = t_em_imag(SphereSpec::pec(1.0), l, 0.7);
    const EmT d = t_em_imag(SphereSpec::dielectric(1.0, 1e9, 1e-9), l, 0.7);
    CHECK(d.tm == doctest::Approx(p.tm).epsilon(1e-7));
    CHECK(d.te == doctest::Approx(p.te).epsilon(1e-7));
  }
}

TEST_CASE("T diagonal in log form agrees with direct evaluation") {
  for (auto spec : {SphereSpec::dirichlet(1.0), SphereSpec::robin(1.0, 2.0), SphereSpec::neumann(1.0)}) {
    const TDiagonal t = t_diagonal(spec, 1.7, 12);
    for (int l = t.l_min; l <= 12; ++l)
      CHECK(t.at(l, 0).value() == doctest::Approx(t_scalar_imag(spec, l, 1.7)).epsilon(1e-11));
  }
  const TDiagonal t = t_diagonal(SphereSpec::dielectric(1.0, 4.0, 1.0), 0.6, 8);
  CHECK(t.l_min == 1);
  for (int l = 1; l <= 8; ++l) {
    const EmT e = t_em_imag(SphereSpec::dielectric(1.0, 4.0, 1.0), l, 0.6);
    CHECK(t.at(l, 0).value() == doctest::Approx(e.tm).epsilon(1e-11));
    CHECK(t.at(l, 1).value() == doctest::Approx(e.te).epsilon(1e-11));
  }
  // deep in the evanescent regime the log form stays finite
  const TDiagonal far = t_diagonal(SphereSpec::dirichlet(1.0), 1e-5, 60);
  CHECK(std::isfinite(far.at(60, 0).log_abs));
  const TDiagonal high = t_diagonal(SphereSpec::pec(1.0), 800.0, 40);
  CHECK(std::isfinite(high.at(40, 1).log_abs));
}

TEST_CASE("low-frequency leading term is fixed by the static polarizability") {
  for (double eps : {2.0, 5.0, 40.0})
    for (double mu : {1.0, 1.8})
      for (int l : {1, 2, 3}) {
        const SphereSpec s = SphereSpec::dielectric(1.0, eps, mu);
        const LowKappaSeries ser = t_low_kappa_series(s, l, 2);
        const double norm = (l % 2 ? 1.0 : -1.0) * (l + 1) / (l * dfact(2 * l + 1) * dfact(2 * l - 1));
        CHECK(ser.leading(0) == doctest::Approx(norm * polarizability(mu, l, 1.0)).epsilon(1e-12));
        CHECK(ser.leading(1) == doctest::Approx(norm * polarizability(eps, l, 1.0)).epsilon(1e-12));
      }
}

TEST_CASE("next-to-leading dipole coefficients gamma_13 and gamma_14") {
  for (double eps : {2.0, 2.5, 7.0})
    for (double mu : {1.0, 1.7, 0.5}) {
      const LowKappaSeries ser = t_low_kappa_series(SphereSpec::dielectric(1.0, eps, mu), 1, 3);
      CHECK(ser.coeff[0][1] == doctest::Approx(0.0));
      CHECK(ser.coeff[0][2] == doctest::Approx(gamma13(mu, eps)).epsilon(1e-12));
      CHECK(ser.coeff[0][3] == doctest::Approx(gamma14(mu)).epsilon(1e-12));
      CHECK(ser.coeff[1][2] == doctest::Approx(gamma13(eps, mu)).epsilon(1e-12));
      CHECK(ser.coeff[1][3] == doctest::Approx(gamma14(eps)).epsilon(1e-12));
    }
}

TEST_CASE("low-frequency series converges to the exact T") {
  for (auto spec : {SphereSpec::dirichlet(1.0), SphereSpec::robin(1.0, 0.3), SphereSpec::neumann(1.0)})
    for (int l : {0, 1, 3}) {
      const LowKappaSeries ser = t_low_kappa_series(spec, l, 4);
      const double k1 = 1e-2, k2 = 2e-2;
      const double e1 = std::fabs(ser.evaluate(0, k1) / t_scalar_imag(spec, l, k1) - 1.0);
      const double e2 = std::fabs(ser.evaluate(0, k2) / t_scalar_imag(spec, l, k2) - 1.0);
      CHECK(e1 < 1e-6);  // Neumann l = 0 starts at kappa^3, fewer nonzero terms
      CHECK(e2 < 64.0 * e1 + 1e-12);  // error shrinks at least like kappa^2
    }
}

TEST_CASE("exact rational series for the conductor") {
  using Q = boost::multiprecision::mpq_rational;
  LawParams<Q> p;
  p.law = Law::PerfectConductor;
  // magnetic dipole: T = -(1/3) z^3 + ... is -alpha_M(mu=0)*2/3
  const auto tm = t_series(p, 1, TChannel::M, 6);
  CHECK(tm.coeff(3) == Q(-1, 3));
  const auto te = t_series(p, 1, TChannel::E, 6);
  CHECK(te.coeff(3) == Q(2, 3));
  CHECK(te.coeff(4) == Q(0));
}

TEST_CASE("real-frequency phase shifts") {
  const PhaseShift d = phase_shift(SphereSpec::dirichlet(1.0), 0, 0.3);
  CHECK(d.delta == doctest::Approx(-0.3).epsilon(1e-12));  // hard sphere s-wave
  const PhaseShift n = phase_shift(SphereSpec::neumann(1.0), 0, 1e-3);
  CHECK(std::fabs(n.delta) < 1e-8);
  CHECK(std::abs(d.t() - (std::exp(std::complex<double>(0, -0.6)) - 1.0) / 2.0) < 1e-12);
}

TEST_CASE("invalid sphere parameters") {
  CHECK_THROWS_AS(SphereSpec::robin(1.0, -0.5), BoundStateError);
  CHECK_THROWS_AS(SphereSpec::robin(1.0, -2.0), ConfigError);
  CHECK_THROWS_AS(SphereSpec::dirichlet(0.0), ConfigError);
  CHECK_THROWS_AS(SphereSpec::dielectric(1.0, -1.0, 1.0), ConfigError);
  CHECK(SphereSpec::robin(1.0, 0.5).describe() == "robin:0.5");
}
