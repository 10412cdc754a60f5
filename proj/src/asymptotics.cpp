#include "rmt/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmt/closed_forms.hpp"
#include "rmt/errors.hpp"
#include "rmt/rational.hpp"

namespace rmt::asym {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog4 = std::log(4.0);

double inv_n2(MatrixSize n) {
  if (!n) return 0.0;
  if (*n < 1) throw UsageError("matrix size must be positive");
  const double nn = static_cast<double>(*n);
  return 1.0 / (nn * nn);
}

void require_positive(int k, const char* what) {
  if (k < 1) throw UsageError(std::string(what) + ": k must be >= 1");
}

}  // namespace

double LogValue::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

LogValue LogValue::from(double x) {
  if (x == 0.0) return {0.0, 0};
  return {std::log(std::fabs(x)), x < 0 ? -1 : 1};
}

LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.sign == 0 || b.sign == 0) return {0.0, 0};
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

LogValue operator+(const LogValue& a, const LogValue& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogValue& big = a.log_abs >= b.log_abs ? a : b;
  const LogValue& small = a.log_abs >= b.log_abs ? b : a;
  const double r = std::exp(small.log_abs - big.log_abs) * (big.sign == small.sign ? 1.0 : -1.0);
  if (1.0 + r == 0.0) return {0.0, 0};
  return {big.log_abs + std::log1p(r), (1.0 + r) > 0 ? big.sign : -big.sign};
}

LogValue scaling_one_point(int k, MatrixSize n) {
  require_positive(k, "scaling_one_point");
  const double kd = k;
  return {kd * kLog4 - 1.5 * std::log(kd) - 0.5 * std::log(kPi) + kd * kd * kd * inv_n2(n) / 12.0, 1};
}

std::complex<double> edge_ft_closed(std::complex<double> t, MatrixSize n) {
  if (t == std::complex<double>(0.0, 0.0)) throw DomainError("edge_ft_closed: t = 0 is singular");
  const std::complex<double> it = std::complex<double>(0.0, 1.0) * t;
  if (it.imag() == 0.0 && it.real() < 0.0) throw DomainError("edge_ft_closed: it on the branch cut");
  const std::complex<double> power = std::exp(-1.5 * std::log(it));
  return power * std::exp(it * it * it * inv_n2(n) / 12.0) / (2.0 * std::sqrt(kPi));
}

LogValue two_point_prefactor(int k1, int k2, TwoPointPrefactor mode) {
  require_positive(k1, "two_point_prefactor");
  require_positive(k2, "two_point_prefactor");
  const double a = k1, b = k2;
  if (mode == TwoPointPrefactor::LargeK) return {(2 * a + 2 * b) * kLog4 - std::log(4 * kPi * a * b), 1};
  const double lg = std::lgamma(2 * a + 1) + std::lgamma(2 * b + 1) + (2 * a + 2 * b) - 0.5 * std::log(a * b) -
                    2 * a * std::log(a) - 2 * b * std::log(b);
  return {lg, (k1 + k2) % 2 == 0 ? 1 : -1};
}

double two_point_series(double a, int l_max) {
  if (l_max < 0) {
    if (a == 0.0) return 1.0;
    if (a > 0.0) {
      const double s = std::sqrt(a);
      return std::sqrt(kPi) * std::erf(s) / (2.0 * s);
    }
    // a < 0: integral of exp(|a| s^2) on [0,1]; no erfi in the standard library.
    double sum = 0.0, term = 1.0;
    for (int l = 0; l < 400; ++l) {
      if (l > 0) term *= -a / l;
      sum += term / (2 * l + 1);
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  double sum = 0.0, term = 1.0;
  for (int l = 0; l <= l_max; ++l) {
    if (l > 0) term *= -a / l;
    sum += term / (2 * l + 1);
  }
  return sum;
}

LogValue two_point_asymptotic(int k1, int k2, MatrixSize n, int l_max, TwoPointPrefactor mode) {
  const LogValue c = two_point_prefactor(k1, k2, mode);
  const double a = k1, b = k2, s = a + b;
  const double inv = inv_n2(n);
  const LogValue shape{0.5 * std::log(a * b) - std::log(2 * kPi * s) + s * s * s * inv / 12.0, -1};
  const double series = two_point_series(a * b * s * inv / 4.0, l_max);
  return c * shape * LogValue::from(series);
}

double two_point_generating(double x1, double x2, MatrixSize n, int l_max) {
  const double s = x1 + x2;
  if (s == 0.0) throw DomainError("two_point_generating: x1 + x2 = 0");
  const double inv = inv_n2(n);
  // sum_l (-1)^l [x1 x2 s]^l / ((8N^2)^l (2l+1) l!) with a = x1 x2 s / (8 N^2)
  return std::exp(s * s * s * inv / 24.0) * two_point_series(x1 * x2 * s * inv / 8.0, l_max) / s;
}

double one_point_string_form(double x1, MatrixSize n) {
  if (x1 == 0.0) throw DomainError("one_point_string_form: x1 = 0");
  return std::exp(x1 * x1 * x1 * inv_n2(n) / 24.0) / x1;
}

LogValue two_point_large_n(double k1, double k2) {
  if (k1 <= 0 || k2 <= 0) throw UsageError("two_point_large_n: k must be positive");
  return {0.5 * std::log(k1 * k2) + (k1 + k2) * kLog4 - std::log(kPi * (k1 + k2)), 1};
}

LogValue three_point_leading(int k1, int k2, int k3) {
  require_positive(k1, "three_point_leading");
  require_positive(k2, "three_point_leading");
  require_positive(k3, "three_point_leading");
  const double a = k1, b = k2, c = k3, K = a + b + c;
  const double bracket = std::sqrt(c * (a + b)) + std::sqrt(a * (b + c)) + std::sqrt(b * (a + c));
  return {K * kLog4 - std::log(2 * kPi * K) + std::log(bracket), 1};
}

LogValue three_point_pairwise_combination(int k1, int k2, int k3) {
  require_positive(k1, "three_point_pairwise_combination");
  require_positive(k2, "three_point_pairwise_combination");
  require_positive(k3, "three_point_pairwise_combination");
  const LogValue sum = two_point_large_n(k1 + k2, k3) + two_point_large_n(k1 + k3, k2) + two_point_large_n(k2 + k3, k1);
  return sum * LogValue{std::log(0.5), 1};
}

LogValue triple_sum_asymptotic_scaled(int k1, int k2, int k3) {
  require_positive(k1, "triple_sum_asymptotic_scaled");
  require_positive(k2, "triple_sum_asymptotic_scaled");
  require_positive(k3, "triple_sum_asymptotic_scaled");
  const double a = k1, b = k2, c = k3, K = a + b + c;
  const double bracket = std::sqrt(c * (a + b)) + std::sqrt(a * (b + c)) - std::sqrt(b * (a + c));
  return LogValue{K * kLog4 - std::log(4 * kPi * K), 1} * LogValue::from(bracket);
}

double bulk_two_point_r2(double lambda1, double lambda2) {
  if (std::fabs(lambda1) >= 2.0 || std::fabs(lambda2) >= 2.0)
    throw DomainError("bulk_two_point_r2: arguments must lie in the open bulk (-2, 2)");
  if (lambda1 == lambda2) throw DomainError("bulk_two_point_r2: coincident arguments");
  const double d = lambda1 - lambda2;
  return -(4.0 - lambda1 * lambda2) /
         (2.0 * kPi * kPi * d * d * std::sqrt((4.0 - lambda1 * lambda1) * (4.0 - lambda2 * lambda2)));
}

double semicircle_density(double x) {
  const double u = x / 2.0;
  if (std::fabs(u) >= 1.0) return 0.0;
  return std::sqrt(1.0 - u * u) / kPi;
}

double semicircle_moment(int k, int nodes) {
  if (k < 0 || nodes < 1) throw UsageError("semicircle_moment: bad arguments");
  // x = 2u: int x^{2k} rho dx = (2/pi) int_{-1}^{1} (2u)^{2k} sqrt(1-u^2) du, and
  // int f(u) sqrt(1-u^2) du = sum_i pi/(n+1) sin^2(i pi/(n+1)) f(cos(i pi/(n+1))), exact to degree 2n+1.
  double sum = 0.0;
  for (int i = 1; i <= nodes; ++i) {
    const double theta = i * kPi / (nodes + 1);
    const double s = std::sin(theta);
    sum += s * s * std::pow(2.0 * std::cos(theta), 2 * k);
  }
  return sum * (kPi / (nodes + 1)) * (2.0 / kPi);
}

ScalingComparison compare_one_point(int k, long n) {
  const Rational exact = *closed::exact_one_point_moment(k, n).numeric;
  const double log_exact = log_abs(exact);
  const LogValue a = scaling_one_point(k, n);
  ScalingComparison c{};
  c.k = k;
  c.n = n;
  c.log_exact = log_exact;
  c.log_asymptotic = a.log_abs;
  c.exact = std::exp(log_exact);
  c.asymptotic = a.value();
  c.relative_error = std::fabs(std::expm1(a.log_abs - log_exact));
  return c;
}

int scaling_ray_k(double c, long n) {
  if (c <= 0 || n < 1) throw UsageError("scaling_ray_k: c and N must be positive");
  // k <= c N^{2/3}  <=>  k^3 <= c^3 N^2, checked in long double to fix rounding at exact cubes.
  const long double target = static_cast<long double>(c) * c * c * n * n;
  int k = static_cast<int>(std::floor(c * std::cbrt(static_cast<double>(n) * n)));
  while (k > 0 && static_cast<long double>(k) * k * k > target) --k;
  while (static_cast<long double>(k + 1) * (k + 1) * (k + 1) <= target) ++k;
  return k;
}

std::vector<ScalingComparison> compare_along_ray(double c, const std::vector<long>& ns) {
  std::vector<ScalingComparison> out;
  for (long n : ns) {
    const int k = scaling_ray_k(c, n);
    if (k < 1) throw UsageError("compare_along_ray: ray gives k = 0 at this N");
    out.push_back(compare_one_point(k, n));
  }
  return out;
}

}  // namespace rmt::asym
