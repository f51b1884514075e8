#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "casimir/asymptotics.hpp"
#include "casimir/energy.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

void check_same(const SeriesExpansion& computed, const SeriesExpansion& table) {
  for (const auto& [j, t] : table.coeffs) {
    CAPTURE(j);
    REQUIRE(computed.coeffs.count(j) == 1);
    const SeriesTerm& c = computed.coeffs.at(j);
    CHECK(c.exact == t.exact);
    CHECK(c.value == doctest::Approx(t.value).epsilon(1e-12));
  }
}

const SphereSpec D = SphereSpec::dirichlet(1.0);
const SphereSpec N = SphereSpec::neumann(1.0);
const SphereSpec P = SphereSpec::pec(1.0);

}  // namespace

TEST_CASE("published scalar tables come out exactly") {
  check_same(expand_scalar_to(D, D, 8), published_dd());
  check_same(expand_scalar_to(N, N, 10), published_nn());
  check_same(expand_scalar_to(D, N, 8), published_dn());
  check_same(expand_scalar_to(N, D, 8), published_dn());
  CHECK(expand_scalar(D, D).coeffs.rbegin()->first == 8);  // p <= 3, l <= 2 reaches d^-8
}

TEST_CASE("published conductor coefficients c_0..c_9 come out exactly") {
  const SeriesExpansion s = expand_em(P, P, 9);
  check_same(s, published_metal());
  CHECK(s.coeffs.at(1).exact == "0");
}

TEST_CASE("truncation bookkeeping") {
  const SeriesExpansion a = expand_scalar(D, D, 1, 2);
  CHECK(a.coeffs.rbegin()->first == 4);
  const SeriesExpansion b = expand_scalar(D, D, 3, 0);
  CHECK(b.coeffs.rbegin()->first == 4);
  // lowering the cutoffs never changes the coefficients that are complete
  const SeriesExpansion c = expand_scalar(D, D, 2, 1);
  for (const auto& [j, t] : c.coeffs) CHECK(t.exact == published_dd().coeffs.at(j).exact);
  CHECK_THROWS_AS(expand_scalar(D, D, 5, 2), ConfigError);
  CHECK_THROWS_AS(expand_scalar(D, SphereSpec::dirichlet(2.0), 2, 2), ConfigError);
  CHECK_THROWS_AS(expand_scalar(D, P, 2, 2), ConfigError);
  CHECK_THROWS_AS(expand_em(P, P, 10), ConfigError);
}

TEST_CASE("Robin continuity towards Dirichlet and Neumann") {
  const SphereSpec rd = SphereSpec::robin(1.0, 1e-6), rn = SphereSpec::robin(1.0, 1e6);
  const SeriesExpansion sd = expand_scalar_to(rd, rd, 8);
  CHECK(sd.coeffs.at(3).value == doctest::Approx(-0.25).epsilon(1e-4));
  CHECK(sd.coeffs.at(4).value == doctest::Approx(-0.25).epsilon(1e-4));
  CHECK(sd.coeffs.at(3).exact.empty());
  const SeriesExpansion sn = expand_scalar_to(rn, rn, 8);
  CHECK(sn.coeffs.at(7).value == doctest::Approx(-161.0 / 96.0).epsilon(1e-3));
  // general Robin beyond d^-8 is flagged
  const SeriesExpansion s10 = expand_scalar_to(SphereSpec::robin(1.0, 0.5), SphereSpec::robin(1.0, 0.5), 10);
  CHECK(s10.coeffs.at(8).certified);
  CHECK_FALSE(s10.coeffs.at(9).certified);
  CHECK(s10.provenance == Provenance::Computed);
}

TEST_CASE("dielectric series: engine versus the printed formula") {
  for (double eps : {1.5, 2.0, 6.0})
    for (double mu : {1.0, 1.3}) {
      const SphereSpec s = SphereSpec::dielectric(1.0, eps, mu);
      const SeriesExpansion printed = expand_em_dielectric(s, s);
      const SeriesExpansion engine = expand_em(s, s, 3);
      for (int n : {0, 2, 3})
        CHECK(engine.coeffs.at(n).value == doctest::Approx(printed.coeffs.at(n).value).epsilon(1e-9));
      // no d^-8 term
      CHECK(std::fabs(engine.coeffs.at(1).value) < 1e-10 * std::fabs(engine.coeffs.at(0).value));
      CHECK(printed.coeffs.at(1).value == 0.0);
    }
  const SphereSpec vac = SphereSpec::dielectric(1.0, 1.0, 1.0);
  for (const auto& [n, t] : expand_em_dielectric(vac, vac).coeffs) CHECK(t.value == 0.0);
  // strong-contrast limit of the printed formula tends to the conductor
  const SphereSpec hard = SphereSpec::dielectric(1.0, 1e9, 1e-9);
  const SeriesExpansion h = expand_em_dielectric(hard, hard);
  CHECK(h.coeffs.at(0).value == doctest::Approx(143.0 / 16.0).epsilon(1e-6));
  CHECK(h.coeffs.at(2).value == doctest::Approx(7947.0 / 160.0).epsilon(1e-6));
}

TEST_CASE("Casimir-Polder bracket in exact arithmetic") {
  // alpha_E = R^3, alpha_M = -R^3/2: 23/4 (1 + 1/4) + 7/4 = 143/16
  CHECK(casimir_polder_bracket("1", "-1/2") == "143/16");
  // no magnetic response: pure 23/4 alpha_E^2
  CHECK(casimir_polder_bracket("1/4", "0") == "23/64");
}

TEST_CASE("series evaluation and the divergence guard") {
  const SeriesExpansion m = published_metal();
  CHECK(eval_series(m, 1.0, 10.0, 0).value == 0.0);
  const SeriesValue v1 = eval_series(m, 1.0, 100.0, 1);
  CHECK(v1.value == doctest::Approx(-(143.0 / 16.0) / M_PI * 1e-14).epsilon(1e-12));
  const SeriesValue v10 = eval_series(m, 1.0, 10.0, 10);
  CHECK(v10.terms.size() == 10);
  CHECK(v10.divergence_index > 0);
  const SeriesExpansion dd = published_dd();
  const double two = eval_series(dd, 1.0, 100.0, 2).value, six = eval_series(dd, 1.0, 100.0, 6).value;
  CHECK(std::fabs(two - six) < 1e-3 * std::fabs(six));
  CHECK_THROWS_AS(eval_series(dd, 1.0, 2.0, 3), ConfigError);
}

TEST_CASE("complex and real fields: series unit") {
  // b_j are for the real scalar field; the leading term against numerics at d = 40 R
  const double e = casimir_energy(Geometry::pair(D, D, 40.0), FieldKind::RealScalar, 3).value;
  const double s = eval_series(published_dd(), 1.0, 40.0, 6).value;
  CHECK(e == doctest::Approx(s).epsilon(1e-6));
}
