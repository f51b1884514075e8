#include "casimir/pfa_sign.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

double gap2(double radius, double d) {
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  if (!(d > 2.0 * radius)) throw ConfigError("spheres overlap or touch (d <= 2R)");
  return (d - 2.0 * radius) * (d - 2.0 * radius);
}

}  // namespace

PfaCase pfa_case(const SphereSpec& a, const SphereSpec& b) {
  if (!a.scalar() || !b.scalar())
    throw ConfigError("scalar PFA needs scalar boundary laws");
  const bool da = a.robin_zeta() == 0.0, db = b.robin_zeta() == 0.0;
  return da != db ? PfaCase::Unlike : PfaCase::Like;
}

double pfa_energy(double radius, double d, PfaCase c) {
  const double phi = c == PfaCase::Like ? kPhi0Like : kPhi0Unlike;
  return phi * std::numbers::pi / 2.0 * radius / gap2(radius, d);
}

double pfa_energy_em(double radius, double d) {
  const double pi = std::numbers::pi;
  return -pi * pi * pi / 1440.0 * radius / gap2(radius, d);
}

double pfa_energy_for(FieldKind kind, const SphereSpec& a, const SphereSpec& b,
                      double d) {
  if (a.radius != b.radius) throw ConfigError("PFA needs equal radii");
  switch (kind) {
    case FieldKind::Electromagnetic:
      return pfa_energy_em(a.radius, d);
    case FieldKind::RealScalar:
      return pfa_energy(a.radius, d, pfa_case(a, b));
    case FieldKind::ComplexScalar:
      return 2.0 * pfa_energy(a.radius, d, pfa_case(a, b));
  }
  return 0.0;
}

const char* force_sign_name(ForceSign s) {
  return s == ForceSign::Attractive ? "attractive" : "repulsive";
}

char force_sign_symbol(ForceSign s) { return s == ForceSign::Attractive ? '-' : '+'; }

NaturalSpline::NaturalSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) throw ConfigError("spline needs >= 3 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw ConfigError("spline abscissae must increase");
  // tridiagonal system for interior second derivatives (Thomas algorithm)
  std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    const double lower = h0 / 6.0;
    diag[i] = (h0 + h1) / 3.0;
    upper[i] = h1 / 6.0;
    rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 1; i-- > 1;) m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
}

std::size_t NaturalSpline::segment(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double NaturalSpline::operator()(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalSpline::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[i] +
         (3.0 * b * b - 1.0) / 6.0 * h * m_[i + 1];
}

SignProfile find_zero_force(const std::vector<double>& d,
                            const std::vector<double>& ratio, double radius,
                            double e_pfa_sign) {
  if (d.size() < 8 || ratio.size() != d.size())
    throw ConfigError("zero-force search needs >= 8 samples of E/E_PFA");
  std::vector<double> x = d, y = ratio;
  if (x.front() > x.back()) {
    std::reverse(x.begin(), x.end());
    std::reverse(y.begin(), y.end());
  }
  if (!(x.front() > 2.0 * radius)) throw ConfigError("grid touches contact d = 2R");
  const NaturalSpline s(x, y);
  // residual of the tangency condition; force = -E_PFA * g
  auto g = [&](double t) { return s.derivative(t) - 2.0 * s(t) / (t - 2.0 * radius); };
  auto sign_at = [&](double t) {
    return -e_pfa_sign * g(t) > 0.0 ? ForceSign::Repulsive : ForceSign::Attractive;
  };

  SignProfile out;
  constexpr int kSub = 10;
  double lo = x.front();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = (x[i + 1] - x[i]) / kSub;
    for (int k = 0; k < kSub; ++k) {
      double a = x[i] + k * h, b = a + h;
      double ga = g(a), gb = g(b);
      if (ga == 0.0 || (ga > 0.0) == (gb > 0.0)) continue;
      for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
        const double mid = 0.5 * (a + b), gm = g(mid);
        if ((gm > 0.0) == (ga > 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      ZeroForce z;
      z.d0 = 0.5 * (a + b);
      z.tau = s(z.d0) / std::pow(z.d0 / radius - 2.0, 2);
      z.resolution = (x[i + 1] - x[i]) / kSub;
      const double probe = z.resolution;
      z.minus_to_plus = sign_at(std::min(z.d0 + probe, x.back())) == ForceSign::Attractive;
      z.unresolved = z.d0 - x.front() < z.resolution || x.back() - z.d0 < z.resolution;
      Regime r;
      r.d_lo = lo;
      r.d_hi = z.d0;
      r.sign = z.minus_to_plus ? ForceSign::Repulsive : ForceSign::Attractive;
      out.regimes.push_back(r);
      out.zeros.push_back(z);
      lo = z.d0;
    }
  }
  Regime last;
  last.d_lo = lo;
  last.d_hi = x.back();
  last.sign = out.zeros.empty() ? sign_at(0.5 * (x.front() + x.back()))
                                : (out.zeros.back().minus_to_plus ? ForceSign::Attractive
                                                                  : ForceSign::Repulsive);
  out.regimes.push_back(last);
  return out;
}

ForceSign small_separation_sign(const SphereSpec& a, const SphereSpec& b) {
  return pfa_case(a, b) == PfaCase::Unlike ? ForceSign::Repulsive : ForceSign::Attractive;
}

ForceSign large_separation_sign(const SphereSpec& a, const SphereSpec& b) {
  SphereSpec ua = a, ub = b;
  ua.radius = ub.radius = 1.0;
  const SeriesExpansion s = expand_scalar_to(ua, ub, 10);
  double scale = 0.0;
  for (const auto& [j, t] : s.coeffs) scale = std::max(scale, std::fabs(t.value));
  for (const auto& [j, t] : s.coeffs)
    if (std::fabs(t.value) > 1e-10 * scale)
      return t.value > 0.0 ? ForceSign::Repulsive : ForceSign::Attractive;
  throw DomainError("no nonvanishing large-distance coefficient");
}

}  // namespace casimir
