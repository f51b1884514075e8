#include "casimir/asymptotics.hpp"

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;

template <class S>
S from_q(const Q& q) {
  if constexpr (std::is_same_v<S, double>) return q.convert_to<double>();
  else return q;
}

Z factorial(int n) {
  Z f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Racah single sum of (j1 j2 j3; m1 m2 -m1-m2) without the square roots.
Q racah_sum(int j1, int j2, int j3, int m1, int m2) {
  Q s = 0;
  for (int k = 0; k <= j1 + j2 - j3; ++k) {
    const int a = j3 - j2 + k + m1, b = j3 - j1 + k - m2;
    const int c = j1 + j2 - j3 - k, d = j1 - k - m1, e = j2 - k + m2;
    if (a < 0 || b < 0 || c < 0 || d < 0 || e < 0) continue;
    Q term(Z(1), factorial(k) * factorial(a) * factorial(b) * factorial(c) *
                     factorial(d) * factorial(e));
    if (k % 2) s -= term;
    else s += term;
  }
  return s;
}

// Rational part R of the translation coefficient:
//   c = (-1)^m sqrt((2l+1)(2l'+1)) (2l''+1) 3j(000) 3j(m,-m,0) = h_l h_l' R
// with h_l^2 = (2l+1)(l+m)!(l-m)!.
Q rational_coefficient(int m, int l, int lp, int l2) {
  const Q delta(factorial(l + lp - l2) * factorial(l - lp + l2) *
                    factorial(-l + lp + l2),
                factorial(l + lp + l2 + 1));
  Q r = delta * Q(factorial(l) * factorial(lp) * factorial(l2) * factorial(l2));
  r *= Q(2 * l2 + 1);
  r *= racah_sum(l, lp, l2, 0, 0) * racah_sum(l, lp, l2, m, -m);
  if (m % 2) r = -r;
  return r;
}

Q h_squared(int l, int m, bool em) {
  Q h(Z(2 * l + 1) * factorial(l + m) * factorial(l - m));
  if (em) h /= Q(l * (l + 1));
  return h;
}

// Polynomial in (rho, kappa), truncated at rho^J; c[n][e].
template <class S>
struct BiPoly {
  std::vector<std::vector<S>> c;
  explicit BiPoly(int J = 0) : c(J + 1) {}
  int J() const { return static_cast<int>(c.size()) - 1; }
  void add(int n, int e, const S& v) {
    if (n > J()) return;
    auto& row = c[n];
    if (static_cast<int>(row.size()) <= e) row.resize(e + 1, S(0));
    row[e] += v;
  }
  bool empty() const {
    for (auto& r : c)
      for (auto& v : r)
        if (v != S(0)) return false;
    return true;
  }
};

template <class S>
void add_product(BiPoly<S>& r, const BiPoly<S>& a, const BiPoly<S>& b) {
  const int J = r.J();
  for (int n1 = 0; n1 <= J; ++n1) {
    const auto& ra = a.c[n1];
    if (ra.empty()) continue;
    for (int n2 = 0; n1 + n2 <= J; ++n2) {
      const auto& rb = b.c[n2];
      if (rb.empty()) continue;
      auto& out = r.c[n1 + n2];
      if (out.size() < ra.size() + rb.size() - 1)
        out.resize(ra.size() + rb.size() - 1, S(0));
      for (std::size_t e1 = 0; e1 < ra.size(); ++e1) {
        if (ra[e1] == S(0)) continue;
        for (std::size_t e2 = 0; e2 < rb.size(); ++e2) {
          if (rb[e2] == S(0)) continue;
          out[e1 + e2] += ra[e1] * rb[e2];
        }
      }
    }
  }
}

template <class S>
using BiMatrix = std::vector<std::vector<BiPoly<S>>>;

template <class S>
BiMatrix<S> bimatrix(std::size_t n, int J) {
  return BiMatrix<S>(n, std::vector<BiPoly<S>>(n, BiPoly<S>(J)));
}

template <class S>
BiMatrix<S> matmul(const BiMatrix<S>& a, const BiMatrix<S>& b, int J) {
  const std::size_t n = a.size();
  BiMatrix<S> r = bimatrix<S>(n, J);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].empty()) continue;
      for (std::size_t j = 0; j < n; ++j) add_product(r[i][j], a[i][k], b[k][j]);
    }
  return r;
}

// tr(A B)
template <class S>
BiPoly<S> trace_product(const BiMatrix<S>& a, const BiMatrix<S>& b, int J) {
  BiPoly<S> r(J);
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) add_product(r, a[i][j], b[j][i]);
  return r;
}

// kappa-polynomial of e^{kappa} kappa^{l+l'+1} U_{l'l} after the rational
// similarity (d = 1).  pol: 0 = diagonal (MM/EE or scalar), 1 = cross (ME).
template <class S>
std::vector<S> u_poly(int m, int li, int lo, int side, bool em, int pol) {
  const int top = li + lo;
  std::vector<S> out(top + 3, S(0));
  const S h2 = from_q<S>(h_squared(lo, m, em));
  const double sgn = (side > 0 && top % 2 == 1) ? -1.0 : 1.0;
  for (int l2 = std::abs(li - lo); l2 <= top; l2 += 2) {
    const S r = from_q<S>(rational_coefficient(m, lo, li, l2));
    if (r == S(0)) continue;
    S weight;
    int lift = 0;
    if (!em) {
      weight = S(-sgn);
    } else if (pol == 0) {
      weight = S(-sgn) *
               S(lo * (lo + 1) + li * (li + 1) - l2 * (l2 + 1)) / S(2);
    } else {
      weight = S(sgn * side * m);
      lift = 1;
    }
    const TruncSeries<S> q = sph_k_poly<S>(l2, l2 + 1);
    for (int k = 0; k <= l2; ++k) {
      const S qk = q.coeff(k);
      if (qk == S(0)) continue;
      out[top - l2 + k + lift] += h2 * r * weight * qk;
    }
  }
  return out;
}

// sum_p (1/p) sum_m w_m int dk tr N^p e^{-2 p kappa}, coefficient of rho^n,
// n = 0..J.  Energy = -(1/2pi) * this.
template <class S>
std::vector<S> trace_log(const LawParams<S>& p1, const LawParams<S>& p2,
                         bool em, int J, int p_max, int l_cut) {
  if (p_max < 1 || p_max > 4)
    throw ConfigError("series engine implements scattering orders p = 1..4");
  std::vector<S> total(J + 1, S(0));
  const int nc = em ? 2 : 1;
  const std::array<TChannel, 2> chans =
      em ? std::array<TChannel, 2>{TChannel::M, TChannel::E}
         : std::array<TChannel, 2>{TChannel::Scalar, TChannel::Scalar};
  // T-hat entries: t_n rho^n kappa^{n-2l-1}
  auto that = [&](const LawParams<S>& p, int l, int c) {
    BiPoly<S> b(J);
    const TruncSeries<S> t = t_series(p, l, chans[c], J + 1);
    for (int n = 2 * l + 1; n <= J; ++n) b.add(n, n - 2 * l - 1, t.coeff(n));
    return b;
  };
  for (int m = 0; m <= l_cut; ++m) {
    const int lmin = std::max(m, em ? 1 : 0);
    if (lmin > l_cut) break;
    const std::size_t n = static_cast<std::size_t>(l_cut - lmin + 1) * nc;
    std::vector<BiPoly<S>> t1, t2;
    for (int l = lmin; l <= l_cut; ++l)
      for (int c = 0; c < nc; ++c) {
        t1.push_back(that(p1, l, c));
        t2.push_back(that(p2, l, c));
      }
    BiMatrix<S> a = bimatrix<S>(n, J), b = bimatrix<S>(n, J);
    for (int li = lmin; li <= l_cut; ++li)
      for (int lo = lmin; lo <= l_cut; ++lo)
        for (int pi = 0; pi < nc; ++pi)
          for (int po = 0; po < nc; ++po) {
            const int pol = pi == po ? 0 : 1;
            if (pol == 1 && m == 0) continue;
            const std::size_t r = (li - lmin) * nc + pi, c = (lo - lmin) * nc + po;
            BiPoly<S> u12(J), u21(J);
            const auto c12 = u_poly<S>(m, li, lo, +1, em, pol);
            const auto c21 = u_poly<S>(m, li, lo, -1, em, pol);
            for (std::size_t e = 0; e < c12.size(); ++e) {
              if (c12[e] != S(0)) u12.add(0, static_cast<int>(e), c12[e]);
              if (c21[e] != S(0)) u21.add(0, static_cast<int>(e), c21[e]);
            }
            add_product(a[r][c], t1[r], u12);
            add_product(b[r][c], t2[r], u21);
          }
    const BiMatrix<S> nmat = matmul(a, b, J);
    std::vector<BiPoly<S>> traces;
    BiPoly<S> tr1(J);
    for (std::size_t i = 0; i < n; ++i) {
      BiPoly<S> one(J);
      one.add(0, 0, S(1));
      add_product(tr1, nmat[i][i], one);
    }
    traces.push_back(tr1);
    if (p_max >= 2) traces.push_back(trace_product(nmat, nmat, J));
    if (p_max >= 3) {
      const BiMatrix<S> n2 = matmul(nmat, nmat, J);
      traces.push_back(trace_product(n2, nmat, J));
      if (p_max >= 4) traces.push_back(trace_product(n2, n2, J));
    }
    const S weight = S(m == 0 ? 1 : 2);
    for (int p = 1; p <= p_max; ++p) {
      const BiPoly<S>& tr = traces[p - 1];
      for (int k = 0; k <= J; ++k) {
        S acc(0);
        S fact(1);  // e!
        S pw = S(1) / S(2 * p);  // 1/(2p)^{e+1}
        for (std::size_t e = 0; e < tr.c[k].size(); ++e) {
          if (e > 0) {
            fact *= S(static_cast<int>(e));
            pw /= S(2 * p);
          }
          if (tr.c[k][e] != S(0)) acc += tr.c[k][e] * fact * pw;
        }
        total[k] += weight * acc / S(p);
      }
    }
  }
  return total;
}

std::string q_string(const Q& q) { return q.str(); }

bool exact_scalar(const SphereSpec& s) {
  const double z = s.robin_zeta();
  return z == 0.0 || std::isinf(z);
}

template <class S>
LawParams<S> scalar_params(const SphereSpec& s) {
  LawParams<S> p;
  const double z = s.robin_zeta();
  if (z == 0.0) p.law = Law::Dirichlet;
  else if (std::isinf(z)) p.law = Law::Neumann;
  else {
    p.law = Law::Robin;
    p.zeta = S(z);
  }
  return p;
}

void require_pair(const SphereSpec& a, const SphereSpec& b, bool em) {
  validate(a);
  validate(b);
  if (a.scalar() == em || b.scalar() == em)
    throw ConfigError(em ? "EM expansion needs dielectric or PEC spheres"
                         : "scalar expansion needs scalar boundary laws");
  if (a.radius != b.radius)
    throw ConfigError("series engine supports equal radii only");
}

}  // namespace

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Computed:
      return "computed";
    case Provenance::PublishedTable:
      return "published-table";
    case Provenance::PrintedFormula:
      return "printed-formula";
  }
  return "?";
}

SeriesExpansion expand_scalar(const SphereSpec& a, const SphereSpec& b,
                              int p_max, int l_cut) {
  require_pair(a, b, false);
  if (p_max < 1 || p_max > 4 || l_cut < 0 || l_cut > 6)
    throw ConfigError(
        "requested order beyond implemented truncation (p_max 1..4, l_cut 0..6)");
  const int j_max = std::min(2 * p_max + 2, 2 * l_cut + 4);
  const int J = j_max - 1;
  SeriesExpansion s;
  s.kind = SeriesKind::ScalarB;
  s.prefactor_power = 1;
  s.provenance = Provenance::Computed;
  if (exact_scalar(a) && exact_scalar(b)) {
    const auto e = trace_log<Q>(scalar_params<Q>(a), scalar_params<Q>(b), false,
                                J, p_max, l_cut);
    for (int j = 3; j <= j_max; ++j) {
      const Q bj = -e[j - 1] / 2;
      s.coeffs[j] = {bj.convert_to<double>(), q_string(bj), true};
    }
  } else {
    const auto e = trace_log<double>(scalar_params<double>(a),
                                     scalar_params<double>(b), false, J, p_max,
                                     l_cut);
    for (int j = 3; j <= j_max; ++j) s.coeffs[j] = {-e[j - 1] / 2, "", j <= 8};
  }
  return s;
}

SeriesExpansion expand_scalar_to(const SphereSpec& a, const SphereSpec& b,
                                 int j_max) {
  if (j_max < 3) throw ConfigError("scalar series starts at j = 3");
  const int p_max = std::max(1, (j_max - 1) / 2);
  const int l_cut = std::max(0, (j_max - 3) / 2);
  return expand_scalar(a, b, p_max, l_cut);
}

SeriesExpansion expand_em(const SphereSpec& a, const SphereSpec& b, int n_max) {
  require_pair(a, b, true);
  if (n_max < 0 || n_max > 9)
    throw ConfigError("EM series engine supports c_0..c_9");
  const int J = n_max + 6;
  const int l_cut = std::max(1, (J - 4) / 2);
  const int p_max = std::max(1, J / 6);
  SeriesExpansion s;
  s.kind = SeriesKind::EmC;
  s.prefactor_power = 7;
  s.provenance = Provenance::Computed;
  const bool pec = a.law == Law::PerfectConductor && b.law == Law::PerfectConductor;
  if (pec) {
    LawParams<Q> p;
    p.law = Law::PerfectConductor;
    const auto e = trace_log<Q>(p, p, true, J, p_max, l_cut);
    for (int n = 0; n <= n_max; ++n) {
      const Q c = e[n + 6] / 2;
      s.coeffs[n] = {c.convert_to<double>(), q_string(c), true};
    }
    return s;
  }
  auto params = [](const SphereSpec& x) {
    LawParams<double> p;
    p.law = x.law;
    if (x.law == Law::Dielectric) {
      const auto [eps, mu] = x.eps_mu(0.0);
      p.eps = eps;
      p.mu = mu;
    }
    return p;
  };
  const auto e = trace_log<double>(params(a), params(b), true, J, p_max, l_cut);
  for (int n = 0; n <= n_max; ++n) s.coeffs[n] = {e[n + 6] / 2, "", true};
  return s;
}

SeriesExpansion expand_em_dielectric(const SphereSpec& a, const SphereSpec& b) {
  validate(a);
  validate(b);
  if (a.law != Law::Dielectric || b.law != Law::Dielectric)
    throw ConfigError("dielectric series needs two dielectric spheres");
  if (a.radius != b.radius) throw ConfigError("equal radii required");
  // both spheres identical in the printed formula; for unlike materials the
  // symmetric combination is used (alpha1 alpha2 products)
  struct Pol {
    double ae1, am1, ae2, am2, ge3, gm3, ge4, gm4;
  };
  auto pol = [](const SphereSpec& s) {
    const auto [eps, mu] = s.eps_mu(0.0);
    auto g3 = [](double x, double y) {  // gamma_13 for channel variable x
      return -(4.0 + x * (x * y + x - 6.0)) / (5.0 * (x + 2.0) * (x + 2.0));
    };
    auto g4 = [](double x) {
      const double r = (x - 1.0) / (x + 2.0);
      return 4.0 / 9.0 * r * r;
    };
    return Pol{polarizability(eps, 1, 1.0), polarizability(mu, 1, 1.0),
               polarizability(eps, 2, 1.0), polarizability(mu, 2, 1.0),
               g3(eps, mu), g3(mu, eps), g4(eps), g4(mu)};
  };
  const Pol p = pol(a), q = pol(b);
  // symmetric form: for identical spheres reduces to the printed brackets
  const double c0 = 23.0 / 4.0 * (p.ae1 * q.ae1 + p.am1 * q.am1) -
                    7.0 / 4.0 * (p.ae1 * q.am1 + p.am1 * q.ae1);
  auto b9 = [](const Pol& x, const Pol& y) {
    return y.ae1 * (59 * x.ae2 - 11 * x.am2 + 86 * x.ge3 - 54 * x.gm3) +
           y.am1 * (59 * x.am2 - 11 * x.ae2 + 86 * x.gm3 - 54 * x.ge3);
  };
  auto b10 = [](const Pol& x, const Pol& y) {
    return y.ae1 * (7 * x.ge4 - 5 * x.gm4) + y.am1 * (7 * x.gm4 - 5 * x.ge4);
  };
  const double c2 = 9.0 / 16.0 * 0.5 * (b9(p, q) + b9(q, p));
  const double c3 = 315.0 / 16.0 * 0.5 * (b10(p, q) + b10(q, p));
  SeriesExpansion s;
  s.kind = SeriesKind::EmC;
  s.prefactor_power = 7;
  s.provenance = Provenance::PrintedFormula;
  s.coeffs[0] = {c0, "", true};
  s.coeffs[1] = {0.0, "0", true};
  s.coeffs[2] = {c2, "", true};
  s.coeffs[3] = {c3, "", true};
  return s;
}

std::string casimir_polder_bracket(const std::string& alpha_e,
                                   const std::string& alpha_m) {
  const Q ae(alpha_e), am(alpha_m);
  const Q v = Q(23, 4) * (ae * ae + am * am) - Q(7, 2) * ae * am;
  return v.str();
}

namespace {

SeriesExpansion table(SeriesKind kind, int first,
                      const std::vector<std::string>& values) {
  SeriesExpansion s;
  s.kind = kind;
  s.prefactor_power = kind == SeriesKind::ScalarB ? 1 : 7;
  s.provenance = Provenance::PublishedTable;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Q q(values[i]);
    s.coeffs[first + static_cast<int>(i)] = {q.convert_to<double>(), values[i],
                                             true};
  }
  return s;
}

}  // namespace

SeriesExpansion published_dd() {
  return table(SeriesKind::ScalarB, 3,
               {"-1/4", "-1/4", "-77/48", "-25/16", "-29837/2880", "-6491/1152"});
}

SeriesExpansion published_nn() {
  return table(SeriesKind::ScalarB, 3,
               {"0", "0", "0", "0", "-161/96", "0", "-3011/192", "-175/128"});
}

SeriesExpansion published_dn() {
  return table(SeriesKind::ScalarB, 3,
               {"0", "0", "17/48", "11/32", "663/160", "235/144"});
}

SeriesExpansion published_metal() {
  return table(SeriesKind::EmC, 0,
               {"143/16", "0", "7947/160", "2065/32", "27705347/100800",
                "-55251/64", "1373212550401/144506880", "-7583389/320",
                "-2516749144274023/44508119040", "274953589659739/275251200"});
}

SeriesValue eval_series(const SeriesExpansion& s, double radius, double d,
                        int n_terms) {
  if (!(d > 2.0 * radius)) throw ConfigError("series needs d > 2R");
  SeriesValue out;
  const double x = radius / d;
  int used = 0;
  double prev = -1.0;
  for (const auto& [idx, term] : s.coeffs) {
    if (used >= n_terms) break;
    ++used;
    double v;
    if (s.kind == SeriesKind::ScalarB) v = term.value * std::pow(x, idx) / std::numbers::pi;
    else v = -term.value * std::pow(x, 7 + idx) / std::numbers::pi;
    out.terms.push_back(v);
    out.indices.push_back(idx);
    out.value += v;
    if (v == 0.0) continue;
    if (out.divergence_index < 0) {
      if (prev >= 0.0 && std::fabs(v) > prev) out.divergence_index = idx;
      else out.value_before_divergence += v;
      prev = std::fabs(v);
    }
  }
  return out;
}

}  // namespace casimir
