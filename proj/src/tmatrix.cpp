#include "casimir/tmatrix.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

const double kLogHalfPi = std::log(std::numbers::pi / 2.0);

SignedLog make_log(double log_abs, double factor) {
  if (factor == 0.0 || !std::isfinite(log_abs)) return {};
  return {log_abs + std::log(std::fabs(factor)), factor > 0 ? 1 : -1};
}

// (pi/2)(I/K)(z) * ratio, with the ratio given as num/den factors.
SignedLog t_from_parts(const BesselLogTable& t, int l, double num, double den) {
  if (num == 0.0) return {};
  SignedLog r = make_log(kLogHalfPi + t.log_i[l] - t.log_k[l], num / den);
  if (l % 2 == 1) r.sign = -r.sign;
  return r;
}

SignedLog scalar_entry(const BesselLogTable& t, int l, double zeta) {
  const double z = t.z;
  if (zeta == 0.0) return t_from_parts(t, l, 1.0, 1.0);
  const double a = std::isinf(zeta) ? 0.5 : 1.0 / zeta + 0.5;
  return t_from_parts(t, l, a - z * t.di_over_i[l], a - z * t.dk_over_k[l]);
}

}  // namespace

SphereSpec SphereSpec::dirichlet(double radius) {
  SphereSpec s;
  s.radius = radius;
  s.law = Law::Dirichlet;
  validate(s);
  return s;
}

SphereSpec SphereSpec::neumann(double radius) {
  SphereSpec s;
  s.radius = radius;
  s.law = Law::Neumann;
  s.zeta = std::numeric_limits<double>::infinity();
  validate(s);
  return s;
}

SphereSpec SphereSpec::robin(double radius, double zeta) {
  SphereSpec s;
  s.radius = radius;
  s.law = Law::Robin;
  s.zeta = zeta;
  validate(s);
  return s;
}

SphereSpec SphereSpec::dielectric(double radius, double eps, double mu) {
  SphereSpec s;
  s.radius = radius;
  s.law = Law::Dielectric;
  s.eps = eps;
  s.mu = mu;
  validate(s);
  return s;
}

SphereSpec SphereSpec::dispersive(double radius, MaterialModel model) {
  SphereSpec s;
  s.radius = radius;
  s.law = Law::Dielectric;
  s.material = std::move(model);
  validate(s);
  return s;
}

SphereSpec SphereSpec::pec(double radius) {
  SphereSpec s;
  s.radius = radius;
  s.law = Law::PerfectConductor;
  validate(s);
  return s;
}

double SphereSpec::robin_zeta() const {
  switch (law) {
    case Law::Dirichlet:
      return 0.0;
    case Law::Neumann:
      return std::numeric_limits<double>::infinity();
    case Law::Robin:
      return zeta;
    default:
      throw ConfigError("robin_zeta() on an electromagnetic sphere");
  }
}

std::pair<double, double> SphereSpec::eps_mu(double kappa) const {
  if (material) return material(kappa);
  return {eps, mu};
}

std::string SphereSpec::describe() const {
  switch (law) {
    case Law::Dirichlet:
      return "dirichlet";
    case Law::Neumann:
      return "neumann";
    case Law::Robin:
      return "robin:" + fmt(zeta);
    case Law::Dielectric:
      if (material) return "dielectric:dispersive";
      return "dielectric:" + fmt(eps) + "," + fmt(mu);
    case Law::PerfectConductor:
      return "pec";
  }
  return "?";
}

void validate(const SphereSpec& s) {
  if (!(s.radius > 0.0) || !std::isfinite(s.radius))
    throw ConfigError("sphere radius must be positive and finite, got " +
                      fmt(s.radius));
  if (s.law == Law::Robin) {
    if (std::isnan(s.zeta)) throw ConfigError("Robin zeta is NaN");
    if (s.zeta < 0.0 && s.zeta > -1.0)
      throw BoundStateError(
          "Robin zeta=" + fmt(s.zeta) +
          " lies in (-1, 0): the sphere has bound states (poles of T), "
          "which are not supported; use zeta >= 0 or inf");
    if (s.zeta < 0.0)
      throw ConfigError("Robin zeta=" + fmt(s.zeta) +
                        " is negative; only zeta >= 0 or inf is supported");
  }
  if (s.law == Law::Dielectric && !s.material) {
    if (!(s.eps > 0.0) || !(s.mu > 0.0) || !std::isfinite(s.eps) ||
        !std::isfinite(s.mu))
      throw ConfigError("dielectric needs eps > 0 and mu > 0, got eps=" +
                        fmt(s.eps) + " mu=" + fmt(s.mu));
  }
}

double SignedLog::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

std::complex<double> PhaseShift::t() const {
  return (std::exp(std::complex<double>(0.0, 2.0 * delta)) - 1.0) / 2.0;
}

PhaseShift phase_shift(const SphereSpec& spec, int l, double k) {
  validate(spec);
  if (!spec.scalar()) throw ConfigError("phase shifts are for scalar laws");
  if (!(k > 0.0)) throw DomainError("phase_shift needs k > 0");
  if (l < 0) throw DomainError("negative multipole order");
  const double xi = k * spec.radius;
  const double zeta = spec.robin_zeta();
  auto j = [&](int n) { return std::sph_bessel(n, xi); };
  auto y = [&](int n) { return std::sph_neumann(n, xi); };
  const double jl = j(l), yl = y(l);
  const double dj = l == 0 ? -j(1) : j(l - 1) - (l + 1) / xi * jl;
  const double dy = l == 0 ? -y(1) : y(l - 1) - (l + 1) / xi * yl;
  double num, den;
  if (zeta == 0.0) {
    num = yl;
    den = jl;
  } else if (std::isinf(zeta)) {
    num = dy;
    den = dj;
  } else {
    num = yl - zeta * xi * dy;
    den = jl - zeta * xi * dj;
  }
  PhaseShift p;
  if (den == 0.0) {
    p.pole = true;
    p.cot_delta = num >= 0 ? INFINITY : -INFINITY;
    p.delta = 0.0;
    return p;
  }
  p.cot_delta = num / den;
  p.delta = num == 0.0 ? std::numbers::pi / 2 : std::atan(den / num);
  return p;
}

double t_scalar_imag(const SphereSpec& spec, int l, double kappa) {
  validate(spec);
  if (!spec.scalar()) throw ConfigError("t_scalar_imag needs a scalar law");
  if (!(kappa > 0.0)) throw DomainError("t_scalar_imag needs kappa > 0");
  const BesselLogTable t = bessel_log_table(l, kappa * spec.radius);
  return scalar_entry(t, l, spec.robin_zeta()).value();
}

EmT t_em_imag(const SphereSpec& spec, int l, double kappa) {
  if (l < 1) throw ConfigError("electromagnetic multipoles start at l = 1");
  const TDiagonal d = t_diagonal(spec, kappa, l);
  return {d.at(l, 0).value(), d.at(l, 1).value()};
}

TDiagonal t_diagonal(const SphereSpec& spec, double kappa, int l_max) {
  validate(spec);
  if (!(kappa > 0.0)) throw DomainError("T-matrix needs kappa > 0");
  TDiagonal d;
  d.kappa = kappa;
  const double z = kappa * spec.radius;
  if (spec.scalar()) {
    d.l_min = 0;
    d.channels = 1;
    if (l_max < 0) return d;
    const BesselLogTable t = bessel_log_table(l_max, z);
    const double zeta = spec.robin_zeta();
    for (int l = 0; l <= l_max; ++l) d.entries[0].push_back(scalar_entry(t, l, zeta));
    return d;
  }
  d.l_min = 1;
  d.channels = 2;
  if (l_max < 1) return d;
  const BesselLogTable t = bessel_log_table(l_max, z);
  if (spec.law == Law::PerfectConductor) {
    for (int l = 1; l <= l_max; ++l) {
      d.entries[0].push_back(t_from_parts(t, l, 1.0, 1.0));
      d.entries[1].push_back(t_from_parts(t, l, 1.0 + 2.0 * z * t.di_over_i[l],
                                          1.0 + 2.0 * z * t.dk_over_k[l]));
    }
    return d;
  }
  const auto [eps, mu] = spec.eps_mu(kappa);
  if (!(eps > 0.0) || !(mu > 0.0))
    throw ConfigError("material model returned non-positive eps or mu");
  const double n = std::sqrt(eps * mu);
  const BesselLogTable tn = bessel_log_table(l_max, n * z);
  for (int l = 1; l <= l_max; ++l) {
    const double p = 1.0 + 2.0 * n * z * tn.di_over_i[l];
    const double ai = 1.0 + 2.0 * z * t.di_over_i[l];
    const double ak = 1.0 + 2.0 * z * t.dk_over_k[l];
    d.entries[0].push_back(t_from_parts(t, l, p - mu * ai, p - mu * ak));
    d.entries[1].push_back(t_from_parts(t, l, p - eps * ai, p - eps * ak));
  }
  return d;
}

double LowKappaSeries::evaluate(int channel, double kappa) const {
  double s = 0.0;
  const auto& c = coeff[channel];
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) s = s * kappa + c[k];
  return s * std::pow(kappa, 2 * l + 1);
}

LowKappaSeries t_low_kappa_series(const SphereSpec& spec, int l, int order) {
  validate(spec);
  if (order < 0 || order > 4)
    throw ConfigError("low-frequency series supports orders 0..4 beyond leading");
  LowKappaSeries out;
  out.l = l;
  LawParams<double> p;
  p.law = spec.law;
  std::array<TChannel, 2> ch{TChannel::Scalar, TChannel::Scalar};
  if (spec.scalar()) {
    if (l < 0) throw ConfigError("negative multipole order");
    out.channels = 1;
    const double zeta = spec.robin_zeta();
    if (zeta == 0.0) p.law = Law::Dirichlet;
    else if (std::isinf(zeta)) p.law = Law::Neumann;
    else {
      p.law = Law::Robin;
      p.zeta = zeta;
    }
  } else {
    if (l < 1) throw ConfigError("electromagnetic multipoles start at l = 1");
    out.channels = 2;
    ch = {TChannel::M, TChannel::E};
    if (spec.law == Law::Dielectric) {
      const auto [eps, mu] = spec.eps_mu(0.0);
      p.eps = eps;
      p.mu = mu;
    }
  }
  const int lead = 2 * l + 1;
  for (int c = 0; c < out.channels; ++c) {
    const TruncSeries<double> s = t_series(p, l, ch[c], lead + order + 1);
    for (int k = 0; k <= order; ++k)
      out.coeff[c].push_back(s.coeff(lead + k) * std::pow(spec.radius, lead + k));
  }
  return out;
}

double polarizability(double x, int l, double radius) {
  if (std::isinf(x)) return std::pow(radius, 2 * l + 1);
  return (x - 1.0) / (x + (l + 1.0) / l) * std::pow(radius, 2 * l + 1);
}

}  // namespace casimir
