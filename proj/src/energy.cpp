#include "casimir/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/linalg.hpp"
#include "casimir/specfun.hpp"
#include "casimir/translation.hpp"

namespace casimir {

double prefactor(FieldKind kind) {
  switch (kind) {
    case FieldKind::ComplexScalar:
      return 1.0 / std::numbers::pi;
    case FieldKind::RealScalar:
    case FieldKind::Electromagnetic:
      return 0.5 / std::numbers::pi;
  }
  return 0.0;
}

const char* field_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::ComplexScalar:
      return "scalar-complex";
    case FieldKind::RealScalar:
      return "scalar-real";
    case FieldKind::Electromagnetic:
      return "em";
  }
  return "?";
}

Geometry Geometry::pair(const SphereSpec& a, const SphereSpec& b, double d) {
  Geometry g;
  g.spheres = {a, b};
  g.centers = {0.0, d};
  return g;
}

double Geometry::distance(std::size_t i, std::size_t j) const {
  return std::fabs(centers[j] - centers[i]);
}

double Geometry::min_gap() const {
  double gap = INFINITY;
  for (std::size_t i = 0; i + 1 < size(); ++i)
    gap = std::min(gap, centers[i + 1] - centers[i] - spheres[i].radius -
                            spheres[i + 1].radius);
  return gap;
}

void validate(const Geometry& g, FieldKind kind) {
  if (g.spheres.size() < 2) throw ConfigError("need at least two spheres");
  if (g.centers.size() != g.spheres.size())
    throw ConfigError("one center per sphere required");
  for (std::size_t i = 0; i < g.size(); ++i) {
    validate(g.spheres[i]);
    if (!std::isfinite(g.centers[i])) throw ConfigError("center is not finite");
    const bool em = kind == FieldKind::Electromagnetic;
    if (em != g.spheres[i].electromagnetic())
      throw ConfigError(std::string("sphere law '") + g.spheres[i].describe() +
                        "' does not match field '" + field_name(kind) + "'");
  }
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (!(g.centers[i + 1] > g.centers[i]))
      throw ConfigError("sphere centers must be strictly increasing in z");
  }
  // all pairs, not only neighbours (large spheres may reach past one)
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!(g.distance(i, j) > g.spheres[i].radius + g.spheres[j].radius))
        throw ConfigError("spheres overlap or touch: d=" +
                          std::to_string(g.distance(i, j)) +
                          " <= R1+R2=" +
                          std::to_string(g.spheres[i].radius +
                                         g.spheres[j].radius));
}

namespace {

int first_l(FieldKind kind) { return kind == FieldKind::Electromagnetic ? 1 : 0; }

std::vector<double> signs_of(const TDiagonal& t, int m, int l_max) {
  std::vector<double> s;
  for (int l = std::max(m, t.l_min); l <= l_max; ++l)
    for (int c = 0; c < t.channels; ++c) s.push_back(t.at(l, c).sign);
  return s;
}

void scale_rows(Matrix& a, const std::vector<double>& s) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= s[i];
}

}  // namespace

std::vector<double> integrand_history(const Geometry& g, FieldKind kind,
                                      double kappa, int l_max) {
  if (g.size() != 2) throw ConfigError("two-body integrand needs two spheres");
  const int l0 = first_l(kind);
  if (l_max < l0) throw ConfigError("l_max below the first multipole");
  if (!(kappa > 0.0)) throw DomainError("integrand needs kappa > 0");
  const double d = g.distance(0, 1);
  const TDiagonal t1 = t_diagonal(g.spheres[0], kappa, l_max);
  const TDiagonal t2 = t_diagonal(g.spheres[1], kappa, l_max);
  const BesselLogTable kd = bessel_log_table(2 * l_max, kappa * d);
  const auto table = TranslationTable::shared(l_max);
  const int nc = t1.channels;
  std::vector<double> hist(l_max - l0 + 1, 0.0);
  for (int m = 0; m <= l_max; ++m) {
    // sphere 2 sits at larger z than sphere 1
    Matrix a = balanced_block(*table, m, l_max, kd, +1, t1, t2);
    Matrix b = balanced_block(*table, m, l_max, kd, -1, t2, t1);
    scale_rows(a, signs_of(t1, m, l_max));
    scale_rows(b, signs_of(t2, m, l_max));
    const double weight = m == 0 ? 1.0 : 2.0;
    const int lm = std::max(m, l0);
    for (int l = lm; l <= l_max; ++l) {
      const std::size_t k = static_cast<std::size_t>(l - lm + 1) * nc;
      const Matrix n = (l == l_max) ? multiply(a, b)
                                    : multiply(a.leading(k, k), b.leading(k, k));
      hist[l - l0] += weight * log_det_one_minus(n);
    }
  }
  // history is cumulative in m: truncation l includes all |m| <= l, which
  // the loop above already respects since blocks with m > l are empty.
  return hist;
}

double integrand(const Geometry& g, FieldKind kind, double kappa, int l_max) {
  return integrand_history(g, kind, kappa, l_max).back();
}

std::vector<double> integrand_history_nbody(const Geometry& g, FieldKind kind,
                                            double kappa, int l_max) {
  const int l0 = first_l(kind);
  if (l_max < l0) throw ConfigError("l_max below the first multipole");
  if (!(kappa > 0.0)) throw DomainError("integrand needs kappa > 0");
  const std::size_t ns = g.size();
  std::vector<TDiagonal> t;
  for (const auto& s : g.spheres) t.push_back(t_diagonal(s, kappa, l_max));
  const auto table = TranslationTable::shared(l_max);
  std::vector<std::vector<BesselLogTable>> kd(ns, std::vector<BesselLogTable>(ns));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = i + 1; j < ns; ++j)
      kd[i][j] = kd[j][i] = bessel_log_table(2 * l_max, kappa * g.distance(i, j));
  const int nc = t[0].channels;
  std::vector<double> hist(l_max - l0 + 1, 0.0);
  for (int m = 0; m <= l_max; ++m) {
    const int lm = std::max(m, l0);
    std::vector<std::vector<Matrix>> blocks(ns, std::vector<Matrix>(ns));
    for (std::size_t i = 0; i < ns; ++i) {
      const auto sig = signs_of(t[i], m, l_max);
      for (std::size_t j = 0; j < ns; ++j) {
        if (i == j) continue;
        const int side = g.centers[j] > g.centers[i] ? +1 : -1;
        blocks[i][j] = balanced_block(*table, m, l_max, kd[i][j], side, t[i], t[j]);
        scale_rows(blocks[i][j], sig);
      }
    }
    const double weight = m == 0 ? 1.0 : 2.0;
    for (int l = lm; l <= l_max; ++l) {
      const std::size_t k = static_cast<std::size_t>(l - lm + 1) * nc;
      Matrix kmat(ns * k, ns * k);
      for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
          if (i == j) continue;
          for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
              kmat(i * k + r, j * k + c) = blocks[i][j](r, c);
        }
      hist[l - l0] += weight * log_det_one_minus(kmat);
    }
  }
  return hist;
}

Extrapolation extrapolate(const std::vector<std::pair<int, double>>& history,
                          const Geometry& g) {
  if (history.size() < 4)
    throw ConfigError("extrapolation needs at least 4 history points");
  const std::size_t n = history.size();
  Extrapolation ex;
  const double last = history[n - 1].second;
  const double last_diff = last - history[n - 2].second;
  ex.value = last;
  ex.uncertainty = std::fabs(last_diff);
  double dl[3], lx[3];
  for (int i = 0; i < 3; ++i) {
    const auto& p = history[n - 3 + i];
    const auto& q = history[n - 4 + i];
    dl[i] = p.second - q.second;
    lx[i] = p.first;
  }
  const bool same_sign = (dl[0] > 0 && dl[1] > 0 && dl[2] > 0) ||
                         (dl[0] < 0 && dl[1] < 0 && dl[2] < 0);
  if (!same_sign || !(std::fabs(dl[1]) < std::fabs(dl[0])) ||
      !(std::fabs(dl[2]) < std::fabs(dl[1])))
    return ex;
  // least squares of ln|diff| against l
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    const double y = std::log(std::fabs(dl[i]));
    sx += lx[i];
    sy += y;
    sxx += lx[i] * lx[i];
    sxy += lx[i] * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  const double rate = -slope;
  if (!(rate > 0.0) || !std::isfinite(rate)) return ex;
  const double step = lx[2] - lx[1];  // history spacing (normally 1)
  const double q = std::exp(-rate * step);
  const double correction = dl[2] * q / (1.0 - q);
  ex.value = last + correction;
  ex.rate = rate;
  ex.delta = rate / (g.min_gap() / g.spheres[0].radius);
  ex.uncertainty = std::fabs(correction);
  ex.fitted = true;
  return ex;
}

namespace {

template <class Hist>
EnergyEstimate run_energy(const Geometry& g, FieldKind kind, int l_max,
                          const QuadOptions& quad, Hist hist_fn) {
  validate(g, kind);
  if (!(quad.rel_tol > 0.0)) throw ConfigError("quadrature tolerance must be > 0");
  const int l0 = first_l(kind);
  if (l_max < l0) throw ConfigError("l_max below the first multipole");
  if (l_max > 100) throw ConfigError("l_max above the supported ceiling 100");
  const double gap = g.min_gap();
  const std::size_t dim = static_cast<std::size_t>(l_max - l0 + 1);
  const QuadResult q = integrate_half_line(
      [&](double t) { return hist_fn(t / (2.0 * gap)); }, dim, quad);
  if (!q.converged)
    throw DomainError("kappa quadrature did not converge within " +
                      std::to_string(quad.max_evaluations) + " evaluations");
  const double scale = prefactor(kind) * g.spheres[0].radius / (2.0 * gap);
  EnergyEstimate e;
  e.l_max = l_max;
  e.evaluations = q.evaluations;
  for (std::size_t i = 0; i < dim; ++i)
    e.history.emplace_back(l0 + static_cast<int>(i), scale * q.value[i]);
  e.truncated = e.history.back().second;
  e.quad_error = scale * q.error.back();
  e.value = e.truncated;
  if (e.history.size() >= 4) {
    const Extrapolation ex = extrapolate(e.history, g);
    e.value = ex.value;
    e.delta_fit = ex.delta;
    e.uncertainty = ex.uncertainty;
    e.extrapolated = ex.fitted;
  }
  return e;
}

}  // namespace

EnergyEstimate casimir_energy(const Geometry& g, FieldKind kind, int l_max,
                              const QuadOptions& quad) {
  if (g.size() != 2) throw ConfigError("casimir_energy takes two spheres");
  return run_energy(g, kind, l_max, quad, [&](double kappa) {
    return integrand_history(g, kind, kappa, l_max);
  });
}

EnergyEstimate casimir_energy_nbody(const Geometry& g, FieldKind kind,
                                    int l_max, const QuadOptions& quad) {
  return run_energy(g, kind, l_max, quad, [&](double kappa) {
    return integrand_history_nbody(g, kind, kappa, l_max);
  });
}

EnergyEstimate casimir_energy_auto(const Geometry& g, FieldKind kind,
                                   const QuadOptions& quad, double target,
                                   int cap) {
  const int l0 = first_l(kind);
  int l = std::min(cap, l0 + 7);
  EnergyEstimate best;
  for (;;) {
    best = casimir_energy(g, kind, l, quad);
    const double goal = target * std::fabs(best.value);
    if (l >= cap) break;
    if (best.extrapolated && best.uncertainty <= goal) break;
    if (best.value == 0.0 && best.truncated == 0.0) break;
    // convergence law: correction ~ exp(-rate l); estimate the l needed
    int next = l + 6;
    if (best.extrapolated && best.delta_fit > 0 && goal > 0) {
      const double rate = best.delta_fit * g.min_gap() / g.spheres[0].radius;
      const double need = std::log(best.uncertainty / goal) / rate;
      next = l + std::max(3, static_cast<int>(std::ceil(need)) + 2);
    }
    l = std::min(cap, next);
  }
  return best;
}

}  // namespace casimir
