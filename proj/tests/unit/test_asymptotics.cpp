#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmt/asymptotics.hpp"
#include "rmt/closed_forms.hpp"
#include "rmt/errors.hpp"
#include "rmt/intersection.hpp"

using namespace rmt;
using namespace rmt::asym;

namespace {

constexpr double kPi = std::numbers::pi;

// Abel sum of the Chebyshev expansion at r = 1 - h, extrapolated to h -> 0.
double bulk_r2_chebyshev(double x, double y) {
  const double a = std::acos(x / 2.0), b = std::acos(y / 2.0);
  auto abel = [&](double h) {
    const double r = 1.0 - h;
    double sum = 0.0, rk = 1.0;
    for (int k = 1; k < 100000; ++k) {
      rk *= r;
      sum += k * std::cos(k * a) * std::cos(k * b) * rk;
      if (rk < 1e-18) break;
    }
    return sum / (kPi * kPi * std::sqrt((4.0 - x * x) * (4.0 - y * y)));
  };
  const double v1 = abel(0.004), v2 = abel(0.002), v3 = abel(0.001);
  const double r1 = (4.0 * v2 - v1) / 3.0, r2 = (4.0 * v3 - v2) / 3.0;
  return (8.0 * r2 - r1) / 7.0;
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("LogValue arithmetic") {
    const LogValue a = LogValue::from(3.0), b = LogValue::from(-5.0);
    CHECK((a * b).value() == doctest::Approx(-15.0));
    CHECK((a + b).value() == doctest::Approx(-2.0));
    CHECK((b + a).value() == doctest::Approx(-2.0));
    CHECK((a + LogValue::from(0.0)).value() == doctest::Approx(3.0));
    CHECK(LogValue::from(0.0).sign == 0);
    CHECK((a + LogValue::from(-3.0)).sign == 0);
    LogValue huge;
    huge.log_abs = 5000.0;
    CHECK((huge * huge).log_abs == doctest::Approx(10000.0));
  }

  TEST_CASE("one-point scaling against the exact moment") {
    for (const auto& [k, n] : std::vector<std::pair<int, long>>{{3, 27}, {9, 216}, {20, 400}}) {
      const double exact = to_double(*closed::exact_one_point_moment(k, n).numeric);
      const double predicted = std::pow(4.0, k) * std::pow(k, -1.5) / std::sqrt(kPi) * std::exp(std::pow(k, 3) / (12.0 * n * n));
      const ScalingComparison c = compare_one_point(k, n);
      CHECK(c.exact == doctest::Approx(exact).epsilon(1e-12));
      CHECK(c.asymptotic == doctest::Approx(predicted).epsilon(1e-12));
      CHECK(c.relative_error == doctest::Approx(std::fabs(exact - predicted) / exact).epsilon(1e-9));
    }
    CHECK(scaling_one_point(5, std::nullopt).value() == doctest::Approx(std::pow(4.0, 5) * std::pow(5.0, -1.5) / std::sqrt(kPi)));
  }

  TEST_CASE("edge transform and one-point scaling share a prefactor") {
    for (const auto& [k, n] : std::vector<std::pair<int, long>>{{4, 10}, {20, 89}, {50, 300}}) {
      const std::complex<double> u = edge_ft_closed({0.0, -double(k)}, n);
      const LogValue v = scaling_one_point(k, n);
      CHECK(std::log(2.0 * u.real()) + k * std::log(4.0) == doctest::Approx(v.log_abs).epsilon(1e-14));
      CHECK(u.imag() == doctest::Approx(0.0));
    }
    const ScalingComparison c = compare_one_point(20, 89);
    CHECK(std::fabs(c.exact / c.asymptotic - 1.0) < 0.15);
    CHECK(scaling_one_point(12, 12).log_abs - scaling_one_point(12, std::nullopt).log_abs == doctest::Approx(1.0));
  }

  TEST_CASE("scaling ray") {
    CHECK(scaling_ray_k(1.0, 27) == 9);
    CHECK(scaling_ray_k(1.0, 64) == 16);
    CHECK(scaling_ray_k(1.0, 125) == 25);
    CHECK(scaling_ray_k(1.0, 216) == 36);
    const auto rows = compare_along_ray(1.0, {27, 64, 125, 216});
    REQUIRE(rows.size() == 4);
    const double expected[] = {0.1296, 0.0723, 0.0461, 0.0319};
    for (int i = 0; i < 4; ++i) CHECK(rows[i].relative_error == doctest::Approx(expected[i]).epsilon(2e-3));
    for (int i = 1; i < 4; ++i) CHECK(rows[i].relative_error < rows[i - 1].relative_error);
  }

  TEST_CASE("edge Fourier transform closed form") {
    const auto v = edge_ft_closed({0.0, -1.0}, std::nullopt);  // it = 1
    CHECK(v.real() == doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))));
    CHECK(v.imag() == doctest::Approx(0.0));
    const auto w = edge_ft_closed({0.0, -2.0}, 1);  // it = 2, N = 1
    CHECK(w.real() == doctest::Approx(std::pow(2.0, -1.5) * std::exp(8.0 / 12.0) / (2.0 * std::sqrt(kPi))));
    CHECK_THROWS_AS(edge_ft_closed({0.0, 0.0}, std::nullopt), DomainError);
    CHECK_THROWS_AS(edge_ft_closed({0.0, 1.0}, std::nullopt), DomainError);
  }

  TEST_CASE("two-point series resummation") {
    for (double a : {0.1, 1.0, 3.0}) {
      const double resummed = two_point_series(a, -1);
      CHECK(resummed == doctest::Approx(std::sqrt(kPi) * std::erf(std::sqrt(a)) / (2.0 * std::sqrt(a))).epsilon(1e-13));
      CHECK(two_point_series(a, 60) == doctest::Approx(resummed).epsilon(1e-12));
    }
    // k_i <= 30 and N >= 100 keep the argument k1 k2 (k1 + k2) / (4 N^2) below 1.35
    for (int k1 : {1, 7, 30})
      for (int k2 : {2, 15, 30}) {
        const double a = double(k1) * k2 * (k1 + k2) / (4.0 * 100.0 * 100.0);
        CHECK(std::fabs(two_point_series(a, 60) - two_point_series(a, -1)) < 1e-12 * two_point_series(a, -1));
      }
    CHECK(two_point_series(0.5, 0) == doctest::Approx(1.0));
    CHECK(two_point_series(0.5, 1) == doctest::Approx(1.0 - 0.5 / 3.0));
  }

  TEST_CASE("two-point generating function") {
    for (double x1 : {0.5, 1.2})
      for (long n : {1L, 3L}) {
        const double g = two_point_generating(x1, 1e-9, n, 20);
        CHECK(g == doctest::Approx(one_point_string_form(x1, n)).epsilon(1e-7));
        CHECK(one_point_string_form(x1, n) == doctest::Approx(std::exp(x1 * x1 * x1 / (24.0 * n * n)) / x1));
      }
    // large-N limit is 1 / (x1 + x2)
    CHECK(two_point_generating(0.7, 0.4, std::nullopt, 5) == doctest::Approx(1.0 / 1.1));
  }

  TEST_CASE("two-point generating coefficients give the two-point table") {
    const auto table = intersect::two_point_table(2);
    // (x1+x2) F at N = 1 has the 1/N^2 part (x1+x2)^3/24 - x1 x2 (x1+x2) / 24
    const double x1 = 0.01, x2 = 0.02, s = x1 + x2;
    const double g1 = (s * two_point_generating(x1, x2, 1, 10) - 1.0);
    const double expected = s * s * s / 24.0 - x1 * x2 * s / 24.0;
    CHECK(g1 == doctest::Approx(expected).epsilon(1e-4));
    CHECK(table.at({0, 2}, 1) == make_rational(1, 24));
  }

  TEST_CASE("two-point prefactors") {
    const LogValue large = two_point_prefactor(3, 5, TwoPointPrefactor::LargeK);
    CHECK(large.value() == doctest::Approx(std::pow(4.0, 16) / (4.0 * kPi * 15.0)));
    const LogValue exact = two_point_prefactor(3, 5, TwoPointPrefactor::ExactFactorial);
    const double e = 720.0 * 3628800.0 * std::exp(16.0) / (std::sqrt(15.0) * std::pow(3.0, 6) * std::pow(5.0, 10));
    CHECK(exact.value() == doctest::Approx(e));
    CHECK(exact.sign == 1);
    CHECK(two_point_prefactor(3, 4, TwoPointPrefactor::ExactFactorial).sign == -1);
    // Stirling: (2k)! e^{2k} / k^{2k} ~ sqrt(4 pi k) 4^k
    const LogValue big = two_point_prefactor(400, 300, TwoPointPrefactor::ExactFactorial);
    CHECK(std::exp(big.log_abs - 700.0 * std::log(4.0) - std::log(4.0 * kPi)) == doctest::Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("two-point large-N form") {
    const double k1 = 40, k2 = 60;
    CHECK(two_point_large_n(k1, k2).log_abs ==
          doctest::Approx(0.5 * std::log(k1 * k2) + (k1 + k2) * std::log(4.0) - std::log(kPi * (k1 + k2))));
  }

  TEST_CASE("three-point identity") {
    for (const auto& [a, b, c] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {3, 7, 2}, {30, 15, 50}, {99, 1, 57}}) {
      const LogValue l = three_point_leading(a, b, c);
      const LogValue p = three_point_pairwise_combination(a, b, c);
      CHECK(l.sign == p.sign);
      CHECK(std::fabs(l.log_abs - p.log_abs) < 1e-12);
      const double K = a + b + c;
      const double direct = K * std::log(4.0) - std::log(2.0 * kPi * K) +
                            std::log(std::sqrt(c * (a + b)) + std::sqrt(a * (b + c)) + std::sqrt(b * (a + c)));
      CHECK(l.log_abs == doctest::Approx(direct).epsilon(1e-12));
    }
  }

  TEST_CASE("triple sum asymptotic example") {
    const double v = triple_sum_asymptotic_scaled(30, 15, 50).value();
    CHECK(std::fabs(v / 1e55 - 7.4864) < 0.005);
    const double exact = to_double(closed::triple_sum_scaled(30, 15, 50));
    CHECK(v / exact == doctest::Approx(1.0031).epsilon(1e-3));
  }

  TEST_CASE("bulk two-point density") {
    CHECK(bulk_two_point_r2(0.5, -0.3) == doctest::Approx(-0.085790).epsilon(1e-5));
    for (const auto& [x, y] : std::vector<std::pair<double, double>>{{0.5, -0.3}, {1.2, 0.1}, {-1.5, 1.0}})
      CHECK(bulk_two_point_r2(x, y) == doctest::Approx(bulk_r2_chebyshev(x, y)).epsilon(1e-6));
    CHECK(bulk_two_point_r2(0.3, -0.8) == doctest::Approx(bulk_two_point_r2(-0.8, 0.3)));
  }

  TEST_CASE("semicircle") {
    CHECK(semicircle_density(0.0) == doctest::Approx(1.0 / kPi));
    CHECK(semicircle_density(2.5) == 0.0);
    for (int k = 0; k <= 8; ++k) CHECK(std::fabs(semicircle_moment(k) - to_double(Rational(closed::catalan(k)))) < 1e-10);
  }
}
