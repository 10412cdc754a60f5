#include "rmt/closed_forms.hpp"

#include <algorithm>
#include <mutex>

#include "rmt/errors.hpp"

namespace rmt::closed {

namespace {

// Grows on demand; guarded because closed-form calls may run concurrently.
class FactorialTable {
 public:
  Integer get(int n) {
    std::lock_guard lock(mu_);
    if (table_.empty()) table_.push_back(1);
    while (static_cast<int>(table_.size()) <= n) table_.push_back(table_.back() * static_cast<unsigned long>(table_.size()));
    return table_[n];
  }

 private:
  std::mutex mu_;
  std::vector<Integer> table_;
};

Integer fact(int n) {
  static FactorialTable table;
  return table.get(n);
}

// (N-1)(N-2)...(N-m) as a polynomial in N, returned as coefficients c[p] of N^p.
std::vector<Integer> falling_poly(int m) {
  std::vector<Integer> c{1};
  for (int i = 1; i <= m; ++i) {
    std::vector<Integer> next(c.size() + 1, 0);
    for (std::size_t p = 0; p < c.size(); ++p) {
      next[p + 1] += c[p];
      next[p] -= c[p] * i;
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

MomentFormulaResult exact_one_point_moment(int k, std::optional<long> n) {
  if (k < 0) throw UsageError("exact_one_point_moment: k must be non-negative");
  if (n && *n < 1) throw UsageError("exact_one_point_moment: N must be positive");
  // (2k)!/N^k * sum_l P_{k-l}(N) / ((k-l)!(k-l+1)! l! 2^l), P_m(N) = (N-1)...(N-m)
  NLaurent sym;
  const Rational pref(fact(2 * k));
  for (int l = 0; l <= k; ++l) {
    const int m = k - l;
    const Rational denom(fact(m) * fact(m + 1) * fact(l) * (Integer(1) << l));
    const auto poly = falling_poly(m);
    for (std::size_t p = 0; p < poly.size(); ++p) {
      if (poly[p] == 0) continue;
      // N^p / N^k = nu^{k-p}
      sym += NLaurent::monomial(k - static_cast<int>(p), pref * Rational(poly[p]) / denom);
    }
  }
  MomentFormulaResult r{k, n, sym, std::nullopt};
  if (n) r.numeric = sym.at_n(*n);
  return r;
}

const NLaurent& USeries::coeff(int power) const {
  if (power < 0 || power > order()) throw UsageError("u_series: power outside the computed order");
  return coeffs[power];
}

USeries u_series(int order) {
  if (order < 0) throw UsageError("u_series: negative order");
  USeries s;
  s.coeffs.resize(order + 1);
  for (int p = 0; p <= order; p += 2) {
    const int k = p / 2;
    s.coeffs[p] = exact_one_point_moment(k).symbolic * Rational(Integer(1), fact(2 * k));
  }
  return s;
}

Rational genus_coefficient(int k, int g) {
  if (k < 0) throw UsageError("genus_coefficient: k must be non-negative");
  const Integer K = k;
  Rational r;
  switch (g) {
    case 0:
      return 1;
    case 1:
      r = Rational(K * (K - 1) * (K + 1), 12);
      break;
    case 2:
      r = Rational(K * (K + 1) * (K - 1) * (K - 2) * (K - 3) * (5 * K - 2), 1440);
      break;
    default:
      throw UsageError("genus_coefficient: closed forms exist only for g <= 2");
  }
  r.canonicalize();
  return r;
}

Integer catalan(int k) {
  if (k < 0) throw UsageError("catalan: k must be non-negative");
  return fact(2 * k) / (fact(k) * fact(k + 1));
}

double bessel_u_limit(double t, int terms) {
  // J_1(2t)/t = sum_m (-1)^m t^{2m} / (m! (m+1)!)
  double term = 1.0;
  double sum = 1.0;
  const double t2 = t * t;
  for (int m = 1; m < terms; ++m) {
    term *= -t2 / (static_cast<double>(m) * (m + 1));
    sum += term;
  }
  return sum;
}

Rational bessel_u_coefficient(int k) {
  Rational c(Integer(1), fact(k) * fact(k + 1));
  return k % 2 == 0 ? c : Rational(-c);
}

Rational triple_sum_scaled(int k1, int k2, int k3) {
  if (k1 < 0 || k2 < 0 || k3 < 0) throw UsageError("triple_sum_I: k must be non-negative");
  // The factorial pairs in each summand add up to 2k1, 2k2 and 2k3, so after
  // scaling every term is a product of three binomial coefficients.
  // Non-negative arguments force l1 + l3 <= k1 - 1, l2 + l3 <= k3 - 1, |l1 - l2| <= k2.
  Integer sum = 0;
  for (int l3 = 0; l3 <= k1 - 1 && l3 <= k3 - 1; ++l3) {
    for (int l1 = 0; l1 + l3 <= k1 - 1; ++l1) {
      const Integer b1 = binomial(2 * k1, k1 - l1 - l3 - 1);
      const int l2_lo = std::max(0, l1 - k2);
      const int l2_hi = std::min(k3 - 1 - l3, l1 + k2);
      for (int l2 = l2_lo; l2 <= l2_hi; ++l2)
        sum += b1 * binomial(2 * k2, k2 - l1 + l2) * binomial(2 * k3, k3 - l2 - l3 - 1);
    }
  }
  return Rational(sum);
}

Rational triple_sum_I(int k1, int k2, int k3) {
  Rational r = triple_sum_scaled(k1, k2, k3);
  r /= Rational(fact(2 * k1) * fact(2 * k2) * fact(2 * k3));
  return r;
}

}  // namespace rmt::closed
