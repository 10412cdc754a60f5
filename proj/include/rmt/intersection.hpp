#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmt/multi_series.hpp"
#include "rmt/rational.hpp"

namespace rmt::intersect {

/// Sorted multiset of tau indices d_1 <= ... <= d_n.
using TauIndices = std::vector<int>;

/// <tau_{d_1} ... tau_{d_n}>_g. Entries obey sum d_i = 3g - 3 + n unless they
/// are one of the normalization conventions <tau_0>_0 = <tau_0^2>_0 = 1.
class IntersectionTable {
 public:
  struct Key {
    TauIndices tau;
    int genus;
    auto operator<=>(const Key&) const = default;
  };

  /// Inserts a positive value; rejects entries violating the dimension
  /// constraint (unless `convention`) and conflicting duplicates.
  void insert(TauIndices tau, int genus, const Rational& value, bool convention = false);
  bool contains(TauIndices tau, int genus) const;
  Rational at(TauIndices tau, int genus) const;
  const std::map<Key, Rational>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  static bool dimension_ok(const TauIndices& tau, int genus);
  /// Genus implied by the dimension constraint, or -1 if none.
  static int genus_for(const TauIndices& tau);

 private:
  std::map<Key, Rational> entries_;
};

/// [{"tau":[...],"genus":g,"num":"...","den":"..."}, ...]
nlohmann::json to_json(const IntersectionTable& t);

/// 1/(24^g g!), with the convention <tau_0>_0 = 1 at g = 0.
Rational one_point_tau(int g);

/// exp(x^3 nu^2 / 24) in variables (x, nu); the generating function is x^{-2}
/// times this series, so x^{3g-2} nu^{2g} is read at x^{3g} nu^{2g}.
struct OnePointSeries {
  MultiSeries body;
  /// Coefficient of x^{x_power} nu^{nu_power} in F(x); x_power >= -2.
  Rational coefficient(int x_power, int nu_power) const;
};
OnePointSeries f_one_point(int max_genus);

/// Genus >= 1 part of (x1+x2)^{-1} exp((x1+x2)^3 nu^2/24) sum_l (-1)^l [x1 x2 (x1+x2)]^l nu^{2l} / (8^l (2l+1) l!)
/// in variables (x1, x2, nu). The genus-0 term 1/(x1+x2) is not a power
/// series and enters only through the <tau_0^2>_0 = 1 convention.
struct TwoPointSeries {
  MultiSeries body;
  Rational coefficient(int l1, int l2, int nu_power) const;
};
TwoPointSeries f_two_point(int max_genus);

/// All <tau_{l1} tau_{l2}>_g with l1 + l2 = 3g - 1 for 1 <= g <= g_max, plus the
/// <tau_0^2>_0 = 1 convention.
IntersectionTable two_point_table(int g_max);

struct CheckReport {
  bool ok = true;
  int checked = 0;
  std::vector<std::string> failures;
  void expect_equal(const std::string& what, const Rational& a, const Rational& b);
};

/// F(x1, 0) = x1 * F(x1) coefficient by coefficient through genus g_max, and
/// <tau_{3g-1} tau_0>_g = <tau_{3g-2}>_g.
CheckReport string_equation_check(int g_max);

/// Exponents m_l of the moduli parameters t_l = (2l-1)!! sum_j lambda_j^{-(2l+1)}.
struct ModuliMonomial {
  std::vector<int> m;  // m[l]; no trailing zeros
  auto operator<=>(const ModuliMonomial&) const = default;

  static ModuliMonomial from_indices(const TauIndices& tau);
  TauIndices indices() const;
  int inverse_degree() const;  // sum (2l+1) m_l
  std::string str() const;     // e.g. "t0^3 t1"
};

struct KontsevichResult {
  int max_inverse_degree;
  MultiSeries log_z;  // in q1 = 1/lambda1, q2 = 1/lambda2
  std::map<ModuliMonomial, Rational> coefficients;
  IntersectionTable table() const;
};

/// log Z for the 2x2 Airy matrix model, from the face-weighted Wick expansion
/// of <exp(c tr M^3)> under exp(-tr Lambda M^2 / 2) with tr M^3 vertices of
/// order 2, 4, 6, ..., rewritten on moduli monomials.
KontsevichResult kontsevich_n2_logz(int max_inverse_degree = 11, int threads = 1);

/// Rewrites a polynomial in (q1, q2, s), symmetric in q and graded by the face
/// count s^n, on the monomials prod t_l^{m_l} with n factors allowed by the
/// dimension constraint; here t_l = (2l-1)!! (q1^{2l+1} + q2^{2l+1}). Terms of
/// q-degree above max_inverse_degree are ignored. Throws InternalError on a
/// residual or a degenerate basis.
std::map<ModuliMonomial, Rational> rewrite_in_moduli_basis(const MultiSeries& graded, int max_inverse_degree);

/// Ratio of the cubic-deformed to the plain one-dimensional Gaussian integral,
/// as a series in w = lambda^{-3}.
MultiSeries z_airy_series(int order);

/// Compares every overlapping n <= 2 entry between the vertex-correlator
/// routes and the Kontsevich route.
CheckReport cross_route_check(const KontsevichResult& kontsevich, int g_max = 2);

}  // namespace rmt::intersect
