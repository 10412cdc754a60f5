#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "rmt/nlaurent.hpp"
#include "rmt/rational.hpp"

namespace rmt {

using Exponents = std::vector<int>;

/// Truncated multivariate power series over the rationals.
///
/// Every stored monomial has total degree <= cutoff and a non-zero coefficient.
/// Terms are keyed by dense exponent vectors in lexicographic order, so
/// iteration and serialization are deterministic. Binary operations require
/// identical variable lists and cutoffs; nothing ever extends the cutoff.
class MultiSeries {
 public:
  using Terms = std::map<Exponents, Rational>;

  MultiSeries(std::vector<std::string> vars, int cutoff);

  static MultiSeries constant(std::vector<std::string> vars, int cutoff, const Rational& c);
  /// The series consisting of the single variable `var` (coefficient 1).
  static MultiSeries variable(std::vector<std::string> vars, int cutoff, std::size_t var);

  const std::vector<std::string>& vars() const { return vars_; }
  int cutoff() const { return cutoff_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * monomial; monomials above the cutoff are dropped.
  void add_term(const Exponents& e, const Rational& c);

  /// Coefficient of a monomial; throws UsageError if the monomial exceeds the
  /// cutoff (its coefficient is unknown, not zero).
  Rational coeff(const Exponents& e) const;
  Rational constant_term() const;

  MultiSeries& operator+=(const MultiSeries& other);
  MultiSeries& operator-=(const MultiSeries& other);
  MultiSeries& operator*=(const Rational& s);
  friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
  friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }
  friend MultiSeries operator*(MultiSeries a, const Rational& s) { return a *= s; }
  friend bool operator==(const MultiSeries& a, const MultiSeries& b);

  /// Same series under a different cutoff: terms above the new cutoff are
  /// discarded. Raising the cutoff is a usage error.
  MultiSeries truncated(int new_cutoff) const;

  /// Substitute var_i -> scale_i * var_i.
  MultiSeries scaled_variables(const std::vector<Rational>& scales) const;

  /// Part of total degree exactly d.
  MultiSeries homogeneous_part(int d) const;

  /// Evaluate all variables at rational points (polynomial evaluation of the stored terms).
  Rational eval(const std::vector<Rational>& point) const;

  static int degree(const Exponents& e);

 private:
  void check_compatible(const MultiSeries& other, const char* op) const;

  std::vector<std::string> vars_;
  int cutoff_;
  Terms terms_;
};

/// Truncated exact product; variable sets and cutoffs must match.
MultiSeries series_mul(const MultiSeries& a, const MultiSeries& b);
/// exp(f) for f with zero constant term.
MultiSeries series_exp(const MultiSeries& f);
/// log(f) for f with constant term 1.
MultiSeries series_log(const MultiSeries& f);
/// Coefficient extraction with the cutoff contract of MultiSeries::coeff.
Rational coeff(const MultiSeries& f, const Exponents& monomial);

/// Exact quotient p / (x_a + x_b) for a polynomial p divisible by x_a + x_b.
/// The quotient carries cutoff - 1. A non-zero remainder throws InternalError.
MultiSeries divide_by_sum(const MultiSeries& p, std::size_t var_a, std::size_t var_b);

/// Canonical JSON: {"vars":[...],"cutoff":n,"terms":[{"exp":[...],"num":"...","den":"..."}]}.
nlohmann::json to_json(const MultiSeries& s);
MultiSeries multi_series_from_json(const nlohmann::json& j);

/// NLaurent in the same schema with the single variable "nu"; "cutoff" is the
/// largest exponent present (0 for the zero polynomial).
nlohmann::json to_json(const NLaurent& p);
NLaurent nlaurent_from_json(const nlohmann::json& j);

}  // namespace rmt
