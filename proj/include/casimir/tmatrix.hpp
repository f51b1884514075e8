#pragma once

#include <array>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "casimir/series.hpp"

namespace casimir {

enum class Law { Robin, Dirichlet, Neumann, Dielectric, PerfectConductor };

// kappa -> (eps, mu).  Extension point for dispersive materials; the core
// only ever calls it, never inspects it.
using MaterialModel = std::function<std::pair<double, double>(double kappa)>;

struct SphereSpec {
  double radius = 1.0;
  Law law = Law::Dirichlet;
  double zeta = 0.0;  // Robin only
  double eps = 1.0;   // Dielectric only
  double mu = 1.0;
  MaterialModel material;  // optional override of (eps, mu)

  static SphereSpec dirichlet(double radius);
  static SphereSpec neumann(double radius);
  // zeta = 0 and zeta = +inf are kept as Robin but evaluate through the
  // Dirichlet / Neumann forms.
  static SphereSpec robin(double radius, double zeta);
  static SphereSpec dielectric(double radius, double eps, double mu);
  static SphereSpec dispersive(double radius, MaterialModel model);
  static SphereSpec pec(double radius);

  bool scalar() const {
    return law == Law::Robin || law == Law::Dirichlet || law == Law::Neumann;
  }
  bool electromagnetic() const { return !scalar(); }
  // Effective Robin parameter: 0 for Dirichlet, +inf for Neumann.
  double robin_zeta() const;
  std::pair<double, double> eps_mu(double kappa) const;
  std::string describe() const;
};

// Throws ConfigError / BoundStateError for unphysical parameters.
void validate(const SphereSpec& spec);

struct PhaseShift {
  double delta = 0.0;      // in (-pi/2, pi/2]
  double cot_delta = 0.0;  // +-inf when pole
  bool pole = false;       // j_l - zeta xi j'_l vanished
  std::complex<double> t() const;  // (e^{2i delta} - 1)/2
};

PhaseShift phase_shift(const SphereSpec& spec, int l, double k);

double t_scalar_imag(const SphereSpec& spec, int l, double kappa);

struct EmT {
  double tm = 0.0;  // magnetic multipole channel
  double te = 0.0;  // electric multipole channel
};
EmT t_em_imag(const SphereSpec& spec, int l, double kappa);

// T = sign * exp(log_abs); sign 0 means T == 0 exactly.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;
  double value() const;
};

// Diagonal T at one kappa for l = l_min..l_max; channel 0 is scalar or M,
// channel 1 is E.  Entries are m-independent.
struct TDiagonal {
  double kappa = 0.0;
  int l_min = 0;
  int channels = 1;
  std::array<std::vector<SignedLog>, 2> entries;
  const SignedLog& at(int l, int channel) const {
    return entries[channel][l - l_min];
  }
};

TDiagonal t_diagonal(const SphereSpec& spec, double kappa, int l_max);

// Low-frequency expansion: coeff[c][k] multiplies kappa^{2l+1+k}, k = 0..order.
struct LowKappaSeries {
  int l = 0;
  int channels = 1;
  std::array<std::vector<double>, 2> coeff;
  double leading(int channel = 0) const { return coeff[channel][0]; }
  double evaluate(int channel, double kappa) const;
};

LowKappaSeries t_low_kappa_series(const SphereSpec& spec, int l, int order);

// Static polarizabilities alpha_l = (x-1)/(x+(l+1)/l) R^{2l+1}.
double polarizability(double x, int l, double radius);

// ----- generic low-frequency T series (used by the asymptotics engine) -----

enum class TChannel { Scalar, M, E };

template <class S>
struct LawParams {
  Law law = Law::Dirichlet;
  S zeta = S(0);
  S eps = S(1);
  S mu = S(1);
};

// T(z), z = kappa R, known through z^{prec-1}.
template <class S>
TruncSeries<S> t_series(const LawParams<S>& p, int l, TChannel ch, int prec) {
  const int P = prec + 2 * l + 8;
  const TruncSeries<S> e = exp_series<S>(P);
  const TruncSeries<S> i = sph_i_series<S>(l, P);
  const TruncSeries<S> q = sph_k_poly<S>(l, P);
  const TruncSeries<S> zq = shift(q, 1);
  const TruncSeries<S> zdq = z_ddz(q);
  TruncSeries<S> num, den;
  const bool scalar = ch == TChannel::Scalar;
  if (scalar) {
    // i - zeta z i' over Q - zeta (-zQ - (l+1)Q + zQ')
    const TruncSeries<S> zk = (zdq - zq) - S(l + 1) * q;
    const TruncSeries<S> zi = z_ddz(i);
    switch (p.law) {
      case Law::Dirichlet:
        num = i;
        den = q;
        break;
      case Law::Neumann:
        num = zi;
        den = zk;
        break;
      case Law::Robin:
        num = i - p.zeta * zi;
        den = q - p.zeta * zk;
        break;
      default:
        throw std::invalid_argument("scalar channel needs a scalar law");
    }
  } else {
    const TruncSeries<S> dpsi = i + z_ddz(i);           // (z i)'
    const TruncSeries<S> dchi = (zdq - zq) - S(l) * q;  // e^{z} z^{l+1} (z k)'
    if (p.law == Law::PerfectConductor) {
      if (ch == TChannel::M) {
        num = i;
        den = q;
      } else {
        num = dpsi;
        den = dchi;
      }
    } else if (p.law == Law::Dielectric) {
      const S n2 = p.eps * p.mu;
      const S x = ch == TChannel::M ? p.mu : p.eps;
      const TruncSeries<S> in = sph_i_series<S>(l, P, n2);
      const TruncSeries<S> dpsin = in + z_ddz(in);
      num = i * dpsin - x * (in * dpsi);
      den = q * dpsin - x * (in * dchi);
    } else {
      throw std::invalid_argument("EM channel needs a dielectric or PEC law");
    }
  }
  TruncSeries<S> t = shift(e * (num / den), l + 1);
  if (l % 2 == 1) t = S(-1) * t;
  if (t.prec() < prec) throw std::logic_error("T series lost precision");
  return truncate(t, prec);
}

}  // namespace casimir
