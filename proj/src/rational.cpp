#include "rmt/rational.hpp"

#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer double_factorial(int n) {
  if (n <= 0) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational make_rational(long num, long den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

double log_abs_integer(const Integer& z) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace

double to_double(const Rational& q) {
  if (q == 0) return 0.0;
  // 256-bit intermediate keeps the quotient exact to double precision.
  mpf_class f(0, 256);
  f = q;
  long exp2 = 0;
  const double mant = mpf_get_d_2exp(&exp2, f.get_mpf_t());
  return std::ldexp(mant, static_cast<int>(exp2));
}

double log_abs(const Rational& q) {
  if (q == 0) throw DomainError("log of zero rational");
  return log_abs_integer(q.get_num()) - log_abs_integer(q.get_den());
}

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  Rational q(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
  if (q.get_den() == 0) throw UsageError("rational with zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace rmt
