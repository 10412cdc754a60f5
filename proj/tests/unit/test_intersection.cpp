#include <doctest.h>

#include <algorithm>
#include <map>

#include "rmt/errors.hpp"
#include "rmt/intersection.hpp"

using namespace rmt;
using namespace rmt::intersect;

namespace {

Rational frac(const Integer& a, const Integer& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Intersection numbers from the string equation and the
// Dijkgraaf-Verlinde-Verlinde recursion, memoized on sorted index lists.
class Dvv {
 public:
  Rational operator()(TauIndices s) {
    std::sort(s.begin(), s.end());
    if (s.empty() || s.front() < 0) return 0;
    const int n = static_cast<int>(s.size());
    int sum = 0;
    for (int d : s) sum += d;
    if ((sum - n + 3) % 3 != 0 || sum - n + 3 < 0) return 0;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    Rational r = compute(s);
    r.canonicalize();
    memo_[s] = r;
    return r;
  }

 private:
  Rational compute(const TauIndices& s) {
    if (s == TauIndices{0, 0, 0}) return 1;
    if (s == TauIndices{1}) return Rational(1, 24);
    if (s.front() == 0) {
      const TauIndices rest(s.begin() + 1, s.end());
      Rational r = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        TauIndices t = rest;
        --t[j];
        r += (*this)(t);
      }
      return r;
    }
    const int k = s.back() - 1;
    const TauIndices rest(s.begin(), s.end() - 1);
    Rational r = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      TauIndices t = rest;
      t[j] = k + rest[j];
      r += frac(double_factorial(2 * k + 2 * rest[j] + 1), double_factorial(2 * rest[j] - 1)) * (*this)(t);
    }
    for (int a = 0; a <= k - 1; ++a) {
      const int b = k - 1 - a;
      const Rational w = frac(double_factorial(2 * a + 1) * double_factorial(2 * b + 1), 2);
      TauIndices t = rest;
      t.push_back(a);
      t.push_back(b);
      Rational split = (*this)(t);
      const std::size_t m = rest.size();
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        TauIndices left{a}, right{b};
        for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? left : right).push_back(rest[i]);
        split += (*this)(left) * (*this)(right);
      }
      r += w * split;
    }
    return r / Rational(double_factorial(2 * k + 3));
  }

  std::map<TauIndices, Rational> memo_;
};

}  // namespace

TEST_SUITE("intersection-numbers") {
  TEST_CASE("recursion oracle sanity") {
    Dvv dvv;
    CHECK(dvv({1, 1}) == Rational(1, 24));
    CHECK(dvv({0, 2}) == Rational(1, 24));
    CHECK(dvv({4}) == Rational(1, 1152));
    CHECK(dvv({0, 0, 0, 0, 2}) == 1);
    CHECK(dvv({0, 0, 0, 1, 1}) == 2);
    CHECK(dvv({0, 0, 0, 1}) == 1);
  }

  TEST_CASE("one-point numbers") {
    Dvv dvv;
    CHECK(one_point_tau(1) == Rational(1, 24));
    CHECK(one_point_tau(2) == Rational(1, 1152));
    CHECK(one_point_tau(0) == 1);
    for (int g = 1; g <= 6; ++g) CHECK(one_point_tau(g) == dvv({3 * g - 2}));
    const OnePointSeries f = f_one_point(6);
    for (int g = 0; g <= 6; ++g) CHECK(f.coefficient(3 * g - 2, 2 * g) == one_point_tau(g));
    CHECK(f.coefficient(1, 2) == one_point_tau(1));
    CHECK(f.coefficient(2, 2) == 0);
  }

  TEST_CASE("two-point table") {
    const IntersectionTable t = two_point_table(4);
    CHECK(t.at({0, 2}, 1) == Rational(1, 24));
    CHECK(t.at({1, 1}, 1) == Rational(1, 24));
    CHECK(t.at({0, 5}, 2) == Rational(1, 1152));
    CHECK(t.at({1, 4}, 2) == Rational(1, 384));
    CHECK(t.at({2, 3}, 2) == Rational(29, 5760));
    CHECK(t.at({0, 0}, 0) == 1);
    Dvv dvv;
    for (const auto& [key, value] : t.entries())
      if (key.genus >= 1) CHECK(value == dvv(key.tau));
    CHECK(to_json(t).size() == t.size());
  }

  TEST_CASE("string equation") {
    const CheckReport r = string_equation_check(3);
    CHECK(r.ok);
    CHECK(r.failures.empty());
    CHECK(r.checked > 0);
  }

  TEST_CASE("table validation") {
    IntersectionTable t;
    CHECK_THROWS_AS(t.insert({1, 2}, 1, 1), UsageError);
    CHECK_THROWS_AS(t.insert({1}, 1, -1), UsageError);
    t.insert({2, 0}, 1, Rational(1, 24));
    CHECK(t.contains({0, 2}, 1));
    CHECK_NOTHROW(t.insert({0, 2}, 1, Rational(1, 24)));
    CHECK_THROWS_AS(t.insert({0, 2}, 1, Rational(1, 12)), InternalError);
    CHECK(IntersectionTable::genus_for({0, 0, 0}) == 0);
    CHECK(IntersectionTable::genus_for({4}) == 2);
    CHECK(IntersectionTable::genus_for({2}) == -1);
  }

  TEST_CASE("moduli monomials") {
    const ModuliMonomial m = ModuliMonomial::from_indices({1, 0, 0, 0});
    CHECK(m.str() == "t0^3 t1");
    CHECK(m.inverse_degree() == 6);
    CHECK(m.indices() == TauIndices{0, 0, 0, 1});
  }

  TEST_CASE("cubic Gaussian integral") {
    const MultiSeries z = z_airy_series(3);
    CHECK(z.coeff({0}) == 1);
    CHECK(z.coeff({1}) == Rational(-5, 24));
    CHECK(z.coeff({2}) == Rational(385, 1152));
  }

  TEST_CASE("Kontsevich model through inverse degree 7") {
    const KontsevichResult r = kontsevich_n2_logz(7, 2);
    auto coef = [&](TauIndices tau) { return r.coefficients.at(ModuliMonomial::from_indices(tau)); };
    CHECK(coef({0, 0, 0}) == Rational(1, 6));
    CHECK(coef({1}) == Rational(1, 24));
    CHECK(coef({0, 0, 0, 1}) == Rational(1, 6));
    CHECK(coef({1, 1}) == Rational(1, 48));
    CHECK(coef({0, 2}) == Rational(1, 24));
    Dvv dvv;
    const IntersectionTable table = r.table();
    for (const auto& [key, value] : table.entries()) CHECK(value == dvv(key.tau));
    const CheckReport cross = cross_route_check(r, 2);
    CHECK(cross.ok);
    CHECK_THROWS_AS(kontsevich_n2_logz(0), UsageError);
  }
}
