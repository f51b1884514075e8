#pragma once

#include <memory>
#include <vector>

#include "casimir/linalg.hpp"
#include "casimir/specfun.hpp"
#include "casimir/tmatrix.hpp"

namespace casimir {

// Label of a translation between two spheres on the z axis.  OneTwo carries
// the (+1)^{l''} pattern: it re-expands an outgoing wave centred at -d z_hat
// (relative to the expansion centre) as regular waves, i.e. the coefficients
// of h_l(i kappa |x + d z_hat|) Y_lm.  TwoOne is the mirror image, (-1)^{l''}.
enum class Direction { OneTwo, TwoOne };

// +1 when the source centre lies at +d z_hat from the expansion centre.
inline int source_side(Direction d) { return d == Direction::OneTwo ? -1 : +1; }

// U_{l_in, l_out}(m): coefficient of the regular wave of order l_in produced
// by the outgoing wave of order l_out.  Normalised so that U_{00} = -e^{-x}/x.
double u_scalar(int l_out, int l_in, int m, double kappa_d, Direction dir);

// Polarisation block, first letter = incoming (regular) polarisation.
// M = magnetic multipole wave, E = electric multipole wave (rephased so the
// block is real and symmetric).
struct EmBlock {
  double mm = 0.0, me = 0.0, em = 0.0, ee = 0.0;
};
EmBlock u_em(int l_out, int l_in, int m, double kappa_d, Direction dir);

// Geometric coefficients
//   c = (-1)^m sqrt((2l+1)(2l'+1)) (2l''+1) (l l' l''; 0 0 0)(l l' l''; m -m 0)
// for l, l' <= l_max, m >= 0 and l'' = |l-l'|, |l-l'|+2, ..., l+l'.
class TranslationTable {
 public:
  explicit TranslationTable(int l_max);
  int l_max() const { return l_max_; }
  // Coefficients for l'' = |l-l'| + 2k, k = 0..count-1.
  struct Span {
    const double* c = nullptr;
    int l2_min = 0;
    int count = 0;
  };
  Span coefficients(int m, int l_in, int l_out) const;

  // Shared, lazily built table covering at least l_max.  Thread safe.
  static std::shared_ptr<const TranslationTable> shared(int l_max);

 private:
  std::size_t index(int m, int l_in, int l_out) const;
  int l_max_;
  std::vector<std::size_t> offset_;
  std::vector<double> data_;
};

// Dense block of U for one m (rows l_in, columns l_out, l from max(m, l_min)
// to l_max; EM indices interleave (l, M), (l, E)).
Matrix u_block(int m, int l_max, double kappa_d, Direction dir, bool em);

// Balanced block W = |T_a|^{1/2} U |T_b|^{1/2} for one m, evaluated in log
// form so that e^{2 kappa R} growth of T and e^{-kappa d} decay of U cancel
// before anything is exponentiated.  side = +1 if sphere b sits at larger z
// than sphere a.  Rows index sphere a (regular waves), columns sphere b.
Matrix balanced_block(const TranslationTable& table, int m, int l_max,
                      const BesselLogTable& kd, int side, const TDiagonal& ta,
                      const TDiagonal& tb);

}  // namespace casimir
