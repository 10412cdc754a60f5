#include <doctest.h>

#include <cmath>

#include "rmt/closed_forms.hpp"
#include "rmt/errors.hpp"
#include "rmt/wick.hpp"

using namespace rmt;
using namespace rmt::closed;

namespace {

Integer catalan_recurrence(int k) {
  std::vector<Integer> c{1};
  for (int n = 0; n < k; ++n) {
    Integer next = 0;
    for (int i = 0; i <= n; ++i) next += c[i] * c[n - i];
    c.push_back(next);
  }
  return c[k];
}

// Plain sum of the reciprocal factorial products over a box large enough to
// hold every non-zero term.
Rational triple_sum_brute(int k1, int k2, int k3) {
  auto inv_fact = [](int n) -> Rational { return n < 0 ? Rational(0) : Rational(Integer(1), factorial(n)); };
  Rational sum = 0;
  const int box = k1 + k2 + k3 + 1;
  for (int l1 = 0; l1 <= box; ++l1)
    for (int l2 = 0; l2 <= box; ++l2)
      for (int l3 = 0; l3 <= box; ++l3) {
        if (k1 - l1 - l3 - 1 < 0 || k2 - l1 + l2 < 0 || k2 + l1 - l2 < 0 || k3 - l2 - l3 - 1 < 0) continue;
        sum += inv_fact(k1 - l1 - l3 - 1) * inv_fact(k1 + l1 + l3 + 1) * inv_fact(k2 - l1 + l2) *
               inv_fact(k2 + l1 - l2) * inv_fact(k3 - l2 - l3 - 1) * inv_fact(k3 + l2 + l3 + 1);
      }
  sum.canonicalize();
  return sum;
}

NLaurent nl(std::initializer_list<std::pair<int, long>> terms) {
  NLaurent p;
  for (const auto& [e, c] : terms) p += NLaurent::monomial(e, c);
  return p;
}

}  // namespace

TEST_SUITE("closed-forms") {
  TEST_CASE("one-point examples") {
    CHECK(exact_one_point_moment(1).symbolic == nl({{0, 1}}));
    CHECK(exact_one_point_moment(2).symbolic == nl({{0, 2}, {2, 1}}));
    CHECK(exact_one_point_moment(3).symbolic == nl({{0, 5}, {2, 10}}));
    CHECK(exact_one_point_moment(0).symbolic == nl({{0, 1}}));
    const auto r = exact_one_point_moment(2, 3);
    REQUIRE(r.numeric.has_value());
    CHECK(*r.numeric == make_rational(19, 9));
  }

  TEST_CASE("agrees with pair enumeration for k <= 6") {
    for (int k = 1; k <= 6; ++k) CHECK(exact_one_point_moment(k).symbolic == wick::vertex_moment({2 * k}));
  }

  TEST_CASE("symbolic and numeric paths agree, including N <= k") {
    for (int k = 0; k <= 8; ++k)
      for (long n = 1; n <= 10; ++n) {
        const auto r = exact_one_point_moment(k, n);
        CHECK(*r.numeric == r.symbolic.at_n(n));
      }
    // N = 1: the moment of a standard Gaussian, (2k-1)!!
    CHECK(*exact_one_point_moment(4, 1).numeric == Rational(105));
  }

  TEST_CASE("genus coefficients") {
    CHECK(genus_coefficient(2, 1) == make_rational(1, 2));
    CHECK(genus_coefficient(3, 1) == 2);
    CHECK(genus_coefficient(1, 1) == 0);
    CHECK(genus_coefficient(5, 0) == 1);
    CHECK_THROWS_AS(genus_coefficient(3, 3), UsageError);
    for (int k = 0; k <= 8; ++k) {
      const NLaurent m = exact_one_point_moment(k).symbolic;
      const Rational c = catalan(k);
      CHECK(m.coeff(0) == c);
      CHECK(m.coeff(2) == c * genus_coefficient(k, 1));
      CHECK(m.coeff(4) == c * genus_coefficient(k, 2));
    }
  }

  TEST_CASE("Catalan numbers") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(3) == 5);
    CHECK(catalan(10) == 16796);
    for (int k = 0; k <= 25; ++k) CHECK(catalan(k) == catalan_recurrence(k));
  }

  TEST_CASE("U series") {
    const USeries u = u_series(12);
    CHECK(u.coeff(0) == nl({{0, 1}}));
    CHECK(u.coeff(2) == NLaurent(make_rational(1, 2)));
    CHECK(u.coeff(4) == NLaurent(make_rational(1, 12)) + NLaurent::monomial(2, make_rational(1, 24)));
    CHECK(u.coeff(3).is_zero());
    for (int k = 0; k <= 6; ++k) {
      CHECK(u.coeff(2 * k).coeff(0) * Rational(factorial(2 * k)) == Rational(catalan(k)));
      Rational expected = bessel_u_coefficient(k);
      if (k % 2 == 1) expected = -expected;  // (it)^{2k} = (-1)^k t^{2k}
      CHECK(u.coeff(2 * k).coeff(0) == expected);
    }
  }

  TEST_CASE("Bessel limit") {
    CHECK(bessel_u_limit(0.0) == doctest::Approx(1.0));
    for (double t : {0.3, 1.0, 2.5, 4.0}) CHECK(bessel_u_limit(t) == doctest::Approx(std::cyl_bessel_j(1.0, 2.0 * t) / t).epsilon(1e-12));
    for (int k = 0; k <= 10; ++k) {
      Rational expected(catalan(k), factorial(2 * k));
      expected.canonicalize();
      if (k % 2 == 1) expected = -expected;
      CHECK(bessel_u_coefficient(k) == expected);
    }
    // finite N = 500 at t = 1
    const USeries u = u_series(40);
    double at_n = 0.0;
    for (int k = 0; k <= 20; ++k) at_n += (k % 2 == 0 ? 1.0 : -1.0) * to_double(u.coeff(2 * k).at_n(500));
    CHECK(std::fabs(at_n - bessel_u_limit(1.0)) < 1e-3);
  }

  TEST_CASE("triple sum against brute force") {
    CHECK(triple_sum_I(1, 1, 1) == make_rational(1, 4));
    for (int k1 = 0; k1 <= 4; ++k1)
      for (int k2 = 0; k2 <= 4; ++k2)
        for (int k3 = 0; k3 <= 4; ++k3) CHECK(triple_sum_I(k1, k2, k3) == triple_sum_brute(k1, k2, k3));
    CHECK(triple_sum_I(7, 3, 9) == triple_sum_brute(7, 3, 9));
  }

  TEST_CASE("triple sum symmetry and vanishing") {
    CHECK(triple_sum_I(0, 3, 4) == 0);
    for (int a = 1; a <= 6; ++a)
      for (int b = 0; b <= 5; ++b)
        for (int c = 1; c <= 6; ++c) CHECK(triple_sum_I(a, b, c) == triple_sum_I(c, b, a));
  }

  TEST_CASE("triple sum large example") {
    const double scaled = to_double(triple_sum_scaled(30, 15, 50));
    CHECK(std::fabs(scaled / 1e55 - 7.4632) < 0.005);
    CHECK_THROWS_AS(triple_sum_I(-1, 2, 2), UsageError);
  }
}
