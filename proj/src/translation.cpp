#include "casimir/translation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

// (l, l', l'') products for one (m, l_in, l_out), l'' ascending by 2.
std::vector<double> coefficient_list(int m, int l_in, int l_out) {
  const ThreeJColumn z = wigner3j_column(l_out, l_in, 0, 0);
  const ThreeJColumn c = m == 0 ? z : wigner3j_column(l_out, l_in, m, -m);
  const int lo = std::abs(l_out - l_in);
  const int count = std::min(l_out, l_in) + 1;
  const double pre = ((m % 2 == 0) ? 1.0 : -1.0) *
                     std::sqrt((2.0 * l_out + 1.0) * (2.0 * l_in + 1.0));
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) {
    const int l2 = lo + 2 * k;
    out[k] = pre * (2.0 * l2 + 1.0) * z.at(l2) * c.at(l2);
  }
  return out;
}

void check_args(int l_out, int l_in, double kappa_d) {
  if (!(kappa_d > 0.0) || !std::isfinite(kappa_d))
    throw DomainError("translation needs kappa*d > 0, got " +
                      std::to_string(kappa_d));
  if (l_out < 0 || l_in < 0) throw ConfigError("negative multipole order");
}

}  // namespace

TranslationTable::TranslationTable(int l_max) : l_max_(l_max) {
  if (l_max < 0) throw ConfigError("translation table needs l_max >= 0");
  const int n = l_max + 1;
  offset_.assign(static_cast<std::size_t>(n) * n * n + 1, 0);
  std::size_t pos = 0;
  for (int m = 0; m <= l_max; ++m)
    for (int a = 0; a <= l_max; ++a)
      for (int b = 0; b <= l_max; ++b) {
        offset_[index(m, a, b)] = pos;
        if (a >= m && b >= m) pos += std::min(a, b) + 1;
      }
  offset_.back() = pos;
  data_.assign(pos, 0.0);
  for (int a = 0; a <= l_max; ++a)
    for (int b = a; b <= l_max; ++b) {
      const ThreeJColumn z = wigner3j_column(b, a, 0, 0);
      const int lo = b - a;
      const double root = std::sqrt((2.0 * a + 1.0) * (2.0 * b + 1.0));
      for (int m = 0; m <= a; ++m) {
        const ThreeJColumn c = m == 0 ? z : wigner3j_column(b, a, m, -m);
        const double pre = (m % 2 == 0 ? 1.0 : -1.0) * root;
        double* dst = data_.data() + offset_[index(m, a, b)];
        double* mirror = data_.data() + offset_[index(m, b, a)];
        for (int k = 0; k <= a; ++k) {
          const int l2 = lo + 2 * k;
          dst[k] = pre * (2.0 * l2 + 1.0) * z.at(l2) * c.at(l2);
          mirror[k] = dst[k];
        }
      }
    }
}

std::size_t TranslationTable::index(int m, int l_in, int l_out) const {
  const std::size_t n = static_cast<std::size_t>(l_max_) + 1;
  return (static_cast<std::size_t>(m) * n + l_in) * n + l_out;
}

TranslationTable::Span TranslationTable::coefficients(int m, int l_in,
                                                      int l_out) const {
  m = std::abs(m);
  if (l_in > l_max_ || l_out > l_max_ || m > l_in || m > l_out) return {};
  return {data_.data() + offset_[index(m, l_in, l_out)], std::abs(l_in - l_out),
          std::min(l_in, l_out) + 1};
}

std::shared_ptr<const TranslationTable> TranslationTable::shared(int l_max) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const TranslationTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.lower_bound(l_max);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const TranslationTable>(l_max);
  cache.emplace(l_max, t);
  return t;
}

double u_scalar(int l_out, int l_in, int m, double kappa_d, Direction dir) {
  check_args(l_out, l_in, kappa_d);
  m = std::abs(m);
  if (m > l_out || m > l_in) return 0.0;
  const std::vector<double> c = coefficient_list(m, l_in, l_out);
  const BesselLogTable kd = bessel_log_table(l_out + l_in, kappa_d);
  const int lo = std::abs(l_out - l_in);
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    s += c[k] * std::exp(kd.log_sph_k(lo + 2 * static_cast<int>(k)));
  const bool flip = source_side(dir) > 0 && (l_out + l_in) % 2 == 1;
  return flip ? s : -s;
}

EmBlock u_em(int l_out, int l_in, int m, double kappa_d, Direction dir) {
  check_args(l_out, l_in, kappa_d);
  if (l_out < 1 || l_in < 1)
    throw ConfigError("electromagnetic translation needs l >= 1");
  m = std::abs(m);
  if (m > l_out || m > l_in) return {};
  const std::vector<double> c = coefficient_list(m, l_in, l_out);
  const BesselLogTable kd = bessel_log_table(l_out + l_in, kappa_d);
  const int lo = std::abs(l_out - l_in);
  const double lo1 = l_out * (l_out + 1.0), li1 = l_in * (l_in + 1.0);
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int l2 = lo + 2 * static_cast<int>(k);
    const double v = c[k] * std::exp(kd.log_sph_k(l2));
    s0 += v;
    s1 += v * 0.5 * (lo1 + li1 - l2 * (l2 + 1.0));
  }
  const int side = source_side(dir);
  const double sgn = (side > 0 && (l_out + l_in) % 2 == 1) ? -1.0 : 1.0;
  const double norm = 1.0 / std::sqrt(lo1 * li1);
  EmBlock b;
  b.mm = b.ee = -sgn * s1 * norm;
  b.me = b.em = sgn * side * m * kappa_d * s0 * norm;
  return b;
}

Matrix u_block(int m, int l_max, double kappa_d, Direction dir, bool em) {
  m = std::abs(m);
  const int l_min = std::max(m, em ? 1 : 0);
  const int nc = em ? 2 : 1;
  const int n = std::max(l_max - l_min + 1, 0) * nc;
  Matrix u(n, n);
  for (int li = l_min; li <= l_max; ++li)
    for (int lo = l_min; lo <= l_max; ++lo) {
      const int r = (li - l_min) * nc, c = (lo - l_min) * nc;
      if (!em) {
        u(r, c) = u_scalar(lo, li, m, kappa_d, dir);
      } else {
        const EmBlock b = u_em(lo, li, m, kappa_d, dir);
        u(r, c) = b.mm;
        u(r, c + 1) = b.me;
        u(r + 1, c) = b.em;
        u(r + 1, c + 1) = b.ee;
      }
    }
  return u;
}

Matrix balanced_block(const TranslationTable& table, int m, int l_max,
                      const BesselLogTable& kd, int side, const TDiagonal& ta,
                      const TDiagonal& tb) {
  if (ta.channels != tb.channels || ta.l_min != tb.l_min)
    throw ConfigError("spheres must share the field kind");
  if (table.l_max() < l_max) throw ConfigError("translation table too small");
  if (kd.l_max() < 2 * l_max) throw ConfigError("Bessel table too small");
  const bool em = ta.channels == 2;
  const int nc = ta.channels;
  const int l_min = std::max(m, ta.l_min);
  const int n = std::max(l_max - l_min + 1, 0) * nc;
  Matrix w(n, n);
  if (n == 0) return w;
  const double x = kd.z;

  std::vector<double> lk(2 * l_max + 1), rr(2 * l_max + 1, 0.0);
  for (int j = 0; j <= 2 * l_max; ++j) lk[j] = kd.log_sph_k(j);
  for (int j = 0; j + 2 <= 2 * l_max; ++j) rr[j] = std::exp(lk[j] - lk[j + 2]);

  for (int li = l_min; li <= l_max; ++li) {
    for (int lo = l_min; lo <= l_max; ++lo) {
      const TranslationTable::Span sp = table.coefficients(m, li, lo);
      const int top = li + lo;
      // sum from the largest K downwards, scaled by k_top
      double s0 = 0.0, s1 = 0.0, f = 1.0;
      const double a1 = li * (li + 1.0) + lo * (lo + 1.0);
      for (int k = sp.count - 1; k >= 0; --k) {
        const int l2 = sp.l2_min + 2 * k;
        const double v = sp.c[k] * f;
        s0 += v;
        if (em) s1 += v * 0.5 * (a1 - l2 * (l2 + 1.0));
        if (l2 >= 2) f *= rr[l2 - 2];
      }
      const double sgn = (side > 0 && top % 2 == 1) ? -1.0 : 1.0;
      const int r = (li - l_min) * nc, c = (lo - l_min) * nc;
      if (!em) {
        const SignedLog& tl = ta.at(li, 0);
        const SignedLog& tr = tb.at(lo, 0);
        if (tl.sign == 0 || tr.sign == 0) continue;
        w(r, c) = -sgn * s0 * std::exp(0.5 * (tl.log_abs + tr.log_abs) + lk[top]);
        continue;
      }
      const double norm = 1.0 / std::sqrt(li * (li + 1.0) * lo * (lo + 1.0));
      const double diag = -sgn * s1 * norm;
      const double cross = sgn * side * m * x * s0 * norm;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const SignedLog& tl = ta.at(li, p);
          const SignedLog& tr = tb.at(lo, q);
          if (tl.sign == 0 || tr.sign == 0) continue;
          const double u = p == q ? diag : cross;
          if (u == 0.0) continue;
          w(r + p, c + q) =
              u * std::exp(0.5 * (tl.log_abs + tr.log_abs) + lk[top]);
        }
    }
  }
  return w;
}

}  // namespace casimir
