#pragma once

// Truncated Laurent series in one variable, generic over the coefficient
// field (double or an exact rational type).  Used for the low-frequency
// expansion of the T-matrix and by the large-distance engine.

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace casimir {

template <class S>
struct TruncSeries {
  int val = 0;        // exponent of a[0]
  std::vector<S> a;   // known through z^{val + a.size() - 1}

  TruncSeries() = default;
  TruncSeries(int v, std::vector<S> c) : val(v), a(std::move(c)) {}

  int prec() const { return val + static_cast<int>(a.size()); }
  S coeff(int power) const {
    const int k = power - val;
    return (k < 0 || k >= static_cast<int>(a.size())) ? S(0) : a[k];
  }

  static TruncSeries constant(S c, int prec) {
    TruncSeries s;
    s.val = 0;
    s.a.assign(std::max(prec, 0), S(0));
    if (!s.a.empty()) s.a[0] = c;
    return s;
  }
};

template <class S>
TruncSeries<S> truncate(TruncSeries<S> s, int prec) {
  if (s.prec() > prec) s.a.resize(std::max(prec - s.val, 0));
  return s;
}

template <class S>
TruncSeries<S> operator+(const TruncSeries<S>& x, const TruncSeries<S>& y) {
  const int lo = std::min(x.val, y.val);
  const int hi = std::min(x.prec(), y.prec());
  TruncSeries<S> r;
  r.val = lo;
  r.a.assign(std::max(hi - lo, 0), S(0));
  for (int p = lo; p < hi; ++p) r.a[p - lo] = x.coeff(p) + y.coeff(p);
  return r;
}

template <class S>
TruncSeries<S> operator*(const S& c, TruncSeries<S> x) {
  for (auto& v : x.a) v *= c;
  return x;
}

template <class S>
TruncSeries<S> operator-(const TruncSeries<S>& x, const TruncSeries<S>& y) {
  return x + (S(-1) * y);
}

template <class S>
TruncSeries<S> operator*(const TruncSeries<S>& x, const TruncSeries<S>& y) {
  TruncSeries<S> r;
  r.val = x.val + y.val;
  const int n = static_cast<int>(std::min(x.a.size(), y.a.size()));
  r.a.assign(n, S(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) r.a[i + j] += x.a[i] * y.a[j];
  return r;
}

// Multiply by z^k.
template <class S>
TruncSeries<S> shift(TruncSeries<S> x, int k) {
  x.val += k;
  return x;
}

// Drop leading coefficients that are exactly zero.
template <class S>
TruncSeries<S> normalized(TruncSeries<S> x) {
  std::size_t k = 0;
  while (k < x.a.size() && x.a[k] == S(0)) ++k;
  x.a.erase(x.a.begin(), x.a.begin() + static_cast<long>(k));
  x.val += static_cast<int>(k);
  return x;
}

template <class S>
TruncSeries<S> operator/(const TruncSeries<S>& xin, const TruncSeries<S>& yin) {
  const TruncSeries<S> y = normalized(yin);
  if (y.a.empty()) throw std::domain_error("series division by zero");
  const TruncSeries<S>& x = xin;
  TruncSeries<S> r;
  r.val = x.val - y.val;
  const int n = static_cast<int>(std::min(x.a.size(), y.a.size()));
  r.a.assign(n, S(0));
  for (int k = 0; k < n; ++k) {
    S s = x.a[k];
    for (int j = 1; j <= k; ++j) s -= y.a[j] * r.a[k - j];
    r.a[k] = s / y.a[0];
  }
  return r;
}

// Derivative-like operator z d/dz.
template <class S>
TruncSeries<S> z_ddz(TruncSeries<S> x) {
  for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] *= S(x.val + static_cast<int>(k));
  return x;
}

// e^{z} through z^{prec-1}
template <class S>
TruncSeries<S> exp_series(int prec) {
  TruncSeries<S> r;
  r.val = 0;
  r.a.assign(std::max(prec, 0), S(0));
  S term(1);
  for (int k = 0; k < prec; ++k) {
    r.a[k] = term;
    term = term / S(k + 1);
  }
  return r;
}

// Modified spherical Bessel i_l(z) = sum_k z^{l+2k} / (2^k k! (2l+2k+1)!!),
// with z^{2k} scaled by w^k (w = n^2 for i_l(nz)/n^l).  Known through z^{prec-1}.
template <class S>
TruncSeries<S> sph_i_series(int l, int prec, const S& w = S(1)) {
  TruncSeries<S> r;
  r.val = l;
  r.a.assign(std::max(prec - l, 0), S(0));
  S dfact(1);  // (2l+1)!!
  for (int j = 1; j <= 2 * l + 1; j += 2) dfact *= S(j);
  S c = S(1) / dfact;
  for (int k = 0; 2 * k < static_cast<int>(r.a.size()); ++k) {
    r.a[2 * k] = c;
    c = c * w / (S(2 * (k + 1)) * S(2 * l + 2 * k + 3));
  }
  return r;
}

// Q_l(z) with k_l(z) = e^{-z} z^{-l-1} Q_l(z):
// Q_l(z) = sum_{k=0}^{l} (l+k)!/(k!(l-k)! 2^k) z^{l-k}.  Exact polynomial.
template <class S>
TruncSeries<S> sph_k_poly(int l, int prec) {
  TruncSeries<S> r;
  r.val = 0;
  r.a.assign(std::max(prec, 0), S(0));
  S c(1);  // k = 0 coefficient of z^l
  std::vector<S> coef(l + 1);
  coef[0] = c;
  for (int k = 1; k <= l; ++k)
    coef[k] = coef[k - 1] * S((l + k) * (l - k + 1)) / S(2 * k);
  for (int k = 0; k <= l; ++k) {
    const int p = l - k;
    if (p < prec) r.a[p] = coef[k];
  }
  return r;
}

}  // namespace casimir
