#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace rmt::num {

using Matrix = Eigen::MatrixXcd;

struct SampleConfig {
  int n = 100;
  std::vector<double> source;  // a_1..a_N; empty means A = 0
  long samples = 1000;
  std::uint64_t seed = 7;
  int chunk = 256;

  /// Throws UsageError on an invalid configuration.
  void validate() const;
  /// The uniform shift A = a * identity.
  static std::vector<double> uniform_source(int n, double a);
};

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
};

/// Independent stream for one chunk, a function of (seed, chunk index) only.
std::mt19937_64 chunk_stream(std::uint64_t seed, std::uint64_t chunk_index);

/// M = H / sqrt(N) - A with H_ii ~ N(0,1) and H_ij = (x + iy)/sqrt(2) for i < j.
Matrix sample_gue(const SampleConfig& cfg, std::mt19937_64& rng);

/// Calls f(sample_index, M) for every sample. Chunks are processed in
/// parallel, but the matrices depend only on (seed, chunk).
template <class F>
void for_each_sample(const SampleConfig& cfg, int threads, F&& f);

/// Mean of prod (1/N) tr M^{k_i}. With `connected` the estimator is the sample
/// covariance of the two factors (at most two traces).
McEstimate mc_vertex_estimate(const std::vector<int>& degrees, const SampleConfig& cfg, bool connected = false,
                              int threads = 1);

/// Traces (1/N) tr M^k for k = 1..max_k.
std::vector<double> normalized_power_traces(const Matrix& m, int max_k);

double airy_fn(double x);
double airy_fn_prime(double x);

/// int_x^inf Ai(u)^2 du by adaptive quadrature.
double airy_square_tail(double x, double tol = 1e-13);

struct QuadratureResult {
  double value;
  double error_estimate;
  double lower_cutoff;  // lambda integration starts here
};

/// int dlambda e^{s lambda} int_0^inf dz Ai(lambda + z)^2 by nested adaptive
/// Gauss-Kronrod quadrature. Throws ToleranceError if the combined error
/// estimate exceeds rel_tol times the value.
QuadratureResult edge_ft_quadrature(double s, double rel_tol = 1e-9);

struct DensityBin {
  double lo, hi;
  double density;     // histogram density
  double semicircle;  // bin average of the semicircle density
};

struct DensityHistogram {
  std::vector<DensityBin> bins;
  double max_bulk_deviation;  // over bins inside |x| < bulk_edge
  double bulk_edge;
  double total_mass;
  double outside_fraction;  // eigenvalues with |x| >= 2 + 5 N^{-2/3}
  long eigenvalues;
};

/// Eigenvalue histogram on [-range, range] over all samples.
DensityHistogram density_histogram(const SampleConfig& cfg, int bins, double range = 2.5, double bulk_edge = 1.8,
                                   int threads = 1);

/// max_i ||M v_i - lambda_i v_i|| / ||M|| for one sample of the configuration.
double eigen_residual(const SampleConfig& cfg);

/// Eigenvalues of a Hermitian matrix in increasing order.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

}  // namespace rmt::num

#include "rmt/numerics_impl.hpp"
