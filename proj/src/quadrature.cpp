#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "casimir/parallel.hpp"

namespace casimir {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on kXgk[1], [3], [5], [7]
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

std::vector<double> gk_nodes(double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::vector<double> x(15);
  for (int j = 0; j < 7; ++j) {
    x[2 * j] = c - h * kXgk[j];
    x[2 * j + 1] = c + h * kXgk[j];
  }
  x[14] = c;
  return x;
}

struct Panel {
  double a, b;
  std::vector<double> value, error;
  double peak = 0.0;  // max |f| over the nodes (all components)
};

Panel combine(double a, double b, const std::vector<std::vector<double>>& f,
              std::size_t dim) {
  Panel p{a, b, std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  const double h = 0.5 * (b - a);
  for (std::size_t c = 0; c < dim; ++c) {
    double k = kWgk[7] * f[14][c];
    double g = kWg[3] * f[14][c];
    for (int j = 0; j < 7; ++j) {
      const double s = f[2 * j][c] + f[2 * j + 1][c];
      k += kWgk[j] * s;
      if (j % 2 == 1) g += kWg[j / 2] * s;
    }
    p.value[c] = h * k;
    p.error[c] = std::fabs(h * (k - g));
    for (int i = 0; i < 15; ++i) p.peak = std::max(p.peak, std::fabs(f[i][c]));
  }
  return p;
}

}  // namespace

QuadResult integrate_half_line(const VectorIntegrand& f, std::size_t dim,
                               const QuadOptions& opt) {
  QuadResult res;
  const double rel = std::max(opt.rel_tol, 1e-14);

  auto evaluate = [&](const std::vector<std::pair<double, double>>& spans) {
    std::vector<double> nodes;
    for (auto [a, b] : spans) {
      auto x = gk_nodes(a, b);
      nodes.insert(nodes.end(), x.begin(), x.end());
    }
    std::vector<std::vector<double>> vals(nodes.size());
    parallel_for(nodes.size(), opt.workers, [&](std::size_t i) {
      vals[i] = f(nodes[i]);
      vals[i].resize(dim, 0.0);
    });
    res.evaluations += static_cast<int>(nodes.size());
    std::vector<Panel> out;
    for (std::size_t s = 0; s < spans.size(); ++s) {
      std::vector<std::vector<double>> fv(vals.begin() + 15 * s,
                                          vals.begin() + 15 * (s + 1));
      out.push_back(combine(spans[s].first, spans[s].second, fv, dim));
    }
    return out;
  };

  std::vector<std::pair<double, double>> init{{0.0, 0.5}, {0.5, 1.0}};
  for (double a = 1.0; a < 64.0; a *= 2) init.push_back({a, 2 * a});
  std::vector<Panel> panels = evaluate(init);

  // tail: extend while the last panel still matters
  double peak = 0.0;
  for (auto& p : panels) peak = std::max(peak, p.peak);
  while (panels.back().b < 1048576.0 &&
         panels.back().peak > 1e-16 * peak && peak > 0.0) {
    const double a = panels.back().b;
    auto more = evaluate({{a, 2 * a}});
    panels.push_back(more[0]);
    peak = std::max(peak, panels.back().peak);
  }

  auto totals = [&](std::vector<double>& v, std::vector<double>& e) {
    v.assign(dim, 0.0);
    e.assign(dim, 0.0);
    for (auto& p : panels)  // panels kept sorted: deterministic order
      for (std::size_t c = 0; c < dim; ++c) {
        v[c] += p.value[c];
        e[c] += p.error[c];
      }
  };

  std::vector<double> v, e;
  while (true) {
    totals(v, e);
    std::vector<double> tol(dim);
    bool ok = true;
    for (std::size_t c = 0; c < dim; ++c) {
      tol[c] = std::max({opt.abs_tol, rel * std::fabs(v[c]), 1e-300});
      if (e[c] > tol[c]) ok = false;
    }
    // the budget is hard: the initial panels alone may already exceed it
    if (res.evaluations > opt.max_evaluations) break;
    if (ok) {
      res.converged = true;
      break;
    }
    if (res.evaluations + 30 > opt.max_evaluations) break;
    std::size_t worst = 0;
    double worst_score = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < dim; ++c)
        s = std::max(s, panels[i].error[c] / tol[c]);
      if (s > worst_score) {
        worst_score = s;
        worst = i;
      }
    }
    const double a = panels[worst].a, b = panels[worst].b;
    const double m = 0.5 * (a + b);
    if (!(m > a && m < b)) break;  // cannot split further
    auto halves = evaluate({{a, m}, {m, b}});
    panels[worst] = halves[0];
    panels.insert(panels.begin() + static_cast<long>(worst) + 1, halves[1]);
  }
  res.value = v;
  res.error = e;
  return res;
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, double rel_tol) {
  struct Seg {
    double a, b, v, e;
  };
  auto eval = [&](double x0, double x1) {
    auto nodes = gk_nodes(x0, x1);
    std::vector<std::vector<double>> fv(15, std::vector<double>(1));
    for (int i = 0; i < 15; ++i) fv[i][0] = f(nodes[i]);
    Panel p = combine(x0, x1, fv, 1);
    return Seg{x0, x1, p.value[0], p.error[0]};
  };
  std::vector<Seg> segs{eval(a, b)};
  for (int it = 0; it < 2000; ++it) {
    double v = 0.0, e = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      v += segs[i].v;
      e += segs[i].e;
      if (segs[i].e > segs[worst].e) worst = i;
    }
    if (e <= std::max(rel_tol * std::fabs(v), 1e-300)) return v;
    const Seg s = segs[worst];
    const double m = 0.5 * (s.a + s.b);
    segs[worst] = eval(s.a, m);
    segs.insert(segs.begin() + static_cast<long>(worst) + 1, eval(m, s.b));
  }
  double v = 0.0;
  for (auto& s : segs) v += s.v;
  return v;
}

}  // namespace casimir
