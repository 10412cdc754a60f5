#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace rmt::asym {

/// sign * exp(log_abs); sign is 0 for an exact zero.
struct LogValue {
  double log_abs = 0.0;
  int sign = 1;

  double value() const;
  static LogValue from(double x);
};

LogValue operator*(const LogValue& a, const LogValue& b);
LogValue operator+(const LogValue& a, const LogValue& b);

/// std::nullopt stands for the N -> infinity limit.
using MatrixSize = std::optional<long>;

/// 4^k k^{-3/2} pi^{-1/2} exp(k^3 / (12 N^2)), the edge-scaling prediction for
/// (1/N) <tr M^{2k}>.
LogValue scaling_one_point(int k, MatrixSize n);

/// (1/(2 sqrt(pi))) (it)^{-3/2} exp((it)^3 / (12 N^2)) on the principal branch.
/// Throws DomainError at t = 0 and on the branch cut (it real and negative).
std::complex<double> edge_ft_closed(std::complex<double> t, MatrixSize n);

enum class TwoPointPrefactor { LargeK, ExactFactorial };

/// C(k1, k2): LargeK is 4^{2k1+2k2} / (4 pi k1 k2); ExactFactorial is
/// (2k1)!(2k2)! e^{2k1+2k2} / ((-1)^{k1+k2} sqrt(k1 k2) k1^{2k1} k2^{2k2}).
LogValue two_point_prefactor(int k1, int k2, TwoPointPrefactor mode);

/// sum_{l <= l_max} (-a)^l / (l! (2l+1)); l_max < 0 gives the resummed value
/// sqrt(pi) erf(sqrt(a)) / (2 sqrt(a)).
double two_point_series(double a, int l_max);

/// -C(k1,k2) (1/2pi) sqrt(k1 k2)/(k1+k2) exp((k1+k2)^3/(12N^2))
///   * sum_l [-k1 k2 (k1+k2)]^l / (l! (2l+1) (4N^2)^l)
LogValue two_point_asymptotic(int k1, int k2, MatrixSize n, int l_max,
                              TwoPointPrefactor mode = TwoPointPrefactor::LargeK);

/// Two-point intersection generating function
/// (x1+x2)^{-1} exp((x1+x2)^3/(24N^2)) sum_l (-1)^l [x1 x2 (x1+x2)]^l / ((8N^2)^l (2l+1) l!).
double two_point_generating(double x1, double x2, MatrixSize n, int l_max);
/// Its x2 -> 0 reduction, (1/x1) exp(x1^3/(24N^2)).
double one_point_string_form(double x1, MatrixSize n);

/// Large-N two-point form sqrt(k1 k2) 4^{k1+k2} / (pi (k1+k2)).
LogValue two_point_large_n(double k1, double k2);

/// 4^{K} / (2 pi K) [sqrt(k3(k1+k2)) + sqrt(k1(k2+k3)) + sqrt(k2(k1+k3))], K = k1+k2+k3.
LogValue three_point_leading(int k1, int k2, int k3);
/// Half the sum of the three merged two-point forms L(k1+k2, k3) + L(k1+k3, k2) + L(k2+k3, k1).
LogValue three_point_pairwise_combination(int k1, int k2, int k3);

/// Single-sector large-k estimate of (2k1)!(2k2)!(2k3)! I^{2k1,2k2,2k3}:
/// 4^K / (4 pi K) [sqrt(k3(k1+k2)) + sqrt(k1(k2+k3)) - sqrt(k2(k1+k3))].
LogValue triple_sum_asymptotic_scaled(int k1, int k2, int k3);

/// N^2 times the connected bulk two-point density:
/// -(4 - l1 l2) / (2 pi^2 (l1-l2)^2 sqrt((4-l1^2)(4-l2^2))).
double bulk_two_point_r2(double lambda1, double lambda2);

/// (1/pi) sqrt(1 - (x/2)^2) on [-2, 2], zero outside.
double semicircle_density(double x);
/// int x^{2k} rho(x) dx by Gauss-Chebyshev (second kind) quadrature.
double semicircle_moment(int k, int nodes = 64);

struct ScalingComparison {
  int k;
  long n;
  double exact;       // may be inf for huge k; use the logs
  double asymptotic;
  double log_exact;
  double log_asymptotic;
  double relative_error;  // |exact - asymptotic| / |exact|
};

ScalingComparison compare_one_point(int k, long n);
/// Largest integer k with k <= c N^{2/3}.
int scaling_ray_k(double c, long n);
std::vector<ScalingComparison> compare_along_ray(double c, const std::vector<long>& ns);

}  // namespace rmt::asym
