#pragma once

#include <map>
#include <string>

#include "rmt/rational.hpp"

namespace rmt {

/// Finite Laurent polynomial in nu = 1/N with exact rational coefficients.
/// Zero coefficients are never stored.
class NLaurent {
 public:
  using Terms = std::map<int, Rational>;

  NLaurent() = default;
  explicit NLaurent(const Rational& constant);
  static NLaurent monomial(int exponent, const Rational& coeff);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(int exponent) const;
  int min_exponent() const;
  int max_exponent() const;

  /// Value at nu = nu0 (nu0 != 0 when negative exponents are present).
  Rational eval(const Rational& nu0) const;
  /// Value at integer matrix size N, i.e. nu = 1/N.
  Rational at_n(long n) const;

  NLaurent& operator+=(const NLaurent& other);
  NLaurent& operator-=(const NLaurent& other);
  NLaurent& operator*=(const Rational& scalar);
  friend NLaurent operator+(NLaurent a, const NLaurent& b) { return a += b; }
  friend NLaurent operator-(NLaurent a, const NLaurent& b) { return a -= b; }
  friend NLaurent operator*(NLaurent a, const Rational& s) { return a *= s; }
  friend NLaurent operator*(const NLaurent& a, const NLaurent& b);
  friend bool operator==(const NLaurent& a, const NLaurent& b) { return a.terms_ == b.terms_; }

  /// Multiply by nu^shift.
  NLaurent shifted(int shift) const;

  /// Human-readable form such as "2 + nu^2".
  std::string str() const;

 private:
  void add_term(int exponent, const Rational& c);
  Terms terms_;
};

}  // namespace rmt
