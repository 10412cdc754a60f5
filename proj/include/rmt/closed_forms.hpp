#pragma once

#include <optional>
#include <vector>

#include "rmt/nlaurent.hpp"
#include "rmt/rational.hpp"

namespace rmt::closed {

/// (1/N) <tr M^{2k}> either as a Laurent polynomial in nu = 1/N or, when N is
/// given, as the exact rational at that N.
struct MomentFormulaResult {
  int k;
  std::optional<long> n;
  NLaurent symbolic;  // always populated
  std::optional<Rational> numeric;
};

/// Gamma-ratio sum for the GUE moment, with Gamma(N)/Gamma(N-k+l) taken as the
/// falling factorial (N-1)...(N-k+l). Exact for every N >= 1, including N <= k.
MomentFormulaResult exact_one_point_moment(int k, std::optional<long> n = std::nullopt);

/// Coefficients of U(t) = <(1/N) tr e^{itM}> as a power series in (it); entry
/// p is the Laurent polynomial multiplying (it)^p. Odd entries are zero.
struct USeries {
  std::vector<NLaurent> coeffs;
  const NLaurent& coeff(int power) const;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};
USeries u_series(int order);

/// Bracketed 1/N^{2g} coefficient relative to the Catalan prefactor, g <= 2.
Rational genus_coefficient(int k, int g);

Integer catalan(int k);

/// J_1(2t)/t from the Bessel power series, in double precision.
double bessel_u_limit(double t, int terms = 60);
/// Taylor coefficient of t^{2k} in J_1(2t)/t: (-1)^k Catalan(k)/(2k)!.
Rational bessel_u_coefficient(int k);

/// Exact three-index sum over (l1, l2, l3) >= 0 of the reciprocal factorial
/// products; terms with a negative factorial argument are omitted.
Rational triple_sum_I(int k1, int k2, int k3);
/// (2k1)!(2k2)!(2k3)! * triple_sum_I.
Rational triple_sum_scaled(int k1, int k2, int k3);

}  // namespace rmt::closed
