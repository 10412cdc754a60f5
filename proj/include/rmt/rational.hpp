#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include <json.hpp>

namespace rmt {

// GMP keeps mpq_class canonical after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(unsigned n);

/// Exact n!! for odd n (and 1 for n <= 0).
Integer double_factorial(int n);

Integer binomial(unsigned n, unsigned k);

Rational make_rational(long num, long den = 1);

/// Rational to double with correct rounding of huge numerators/denominators.
double to_double(const Rational& q);

/// Natural log of |q| to double accuracy for q != 0, valid far outside the double range.
double log_abs(const Rational& q);

/// {"num": "...", "den": "..."} with decimal strings.
nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

std::string to_string(const Rational& q);

}  // namespace rmt
