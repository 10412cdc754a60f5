#include "rmt/nlaurent.hpp"

#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

NLaurent::NLaurent(const Rational& constant) { add_term(0, constant); }

NLaurent NLaurent::monomial(int exponent, const Rational& coeff) {
  NLaurent r;
  r.add_term(exponent, coeff);
  return r;
}

void NLaurent::add_term(int exponent, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational NLaurent::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

int NLaurent::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int NLaurent::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

Rational NLaurent::eval(const Rational& nu0) const {
  if (nu0 == 0) {
    if (!terms_.empty() && min_exponent() < 0) throw DomainError("NLaurent: negative power at nu = 0");
    return coeff(0);
  }
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational p = 1;
    mpz_pow_ui(p.get_num_mpz_t(), nu0.get_num_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpz_pow_ui(p.get_den_mpz_t(), nu0.get_den_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    p.canonicalize();
    if (e < 0) sum += c / p; else sum += c * p;
  }
  return sum;
}

Rational NLaurent::at_n(long n) const {
  if (n <= 0) throw UsageError("NLaurent::at_n requires N >= 1");
  return eval(Rational(1, n));
}

NLaurent& NLaurent::operator+=(const NLaurent& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

NLaurent& NLaurent::operator-=(const NLaurent& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

NLaurent& NLaurent::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

NLaurent operator*(const NLaurent& a, const NLaurent& b) {
  NLaurent r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

NLaurent NLaurent::shifted(int shift) const {
  NLaurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + shift, c);
  return r;
}

std::string NLaurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) mag = -c;
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "nu";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace rmt
