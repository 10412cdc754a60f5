#include "rmt/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmt/errors.hpp"

namespace rmt::num {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

McEstimate summarize(const std::vector<double>& values) {
  McEstimate e;
  e.samples = static_cast<long>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / e.samples;
  if (e.samples < 2) {
    e.stderr_ = std::numeric_limits<double>::infinity();
    return e;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.stderr_ = std::sqrt(ss / (e.samples - 1) / e.samples);
  return e;
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) + std::asin(x / 2.0) / kPi;
}

template <class F>
double gk(F f, double a, double b, double tol, double* err) {
  double e = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, tol, &e);
  if (err) *err += e;
  return v;
}

}  // namespace

void SampleConfig::validate() const {
  if (n < 1) throw UsageError("SampleConfig: N must be >= 1");
  if (samples < 1) throw UsageError("SampleConfig: samples must be >= 1");
  if (chunk < 1) throw UsageError("SampleConfig: chunk must be >= 1");
  if (!source.empty() && static_cast<int>(source.size()) != n)
    throw UsageError("SampleConfig: source must have N entries");
}

std::vector<double> SampleConfig::uniform_source(int n, double a) { return std::vector<double>(n, a); }

std::mt19937_64 chunk_stream(std::uint64_t seed, std::uint64_t chunk_index) {
  std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(chunk_index + 1))};
  return std::mt19937_64(seq);
}

Matrix sample_gue(const SampleConfig& cfg, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = cfg.n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double off = scale / std::sqrt(2.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = normal(rng) * scale;
    for (int j = i + 1; j < n; ++j) {
      const double re = normal(rng), im = normal(rng);
      m(i, j) = std::complex<double>(re * off, im * off);
      m(j, i) = std::conj(m(i, j));
    }
  }
  if (!cfg.source.empty())
    for (int i = 0; i < n; ++i) m(i, i) -= cfg.source[i];
  return m;
}

std::vector<double> normalized_power_traces(const Matrix& m, int max_k) {
  const int n = static_cast<int>(m.rows());
  std::vector<double> out(max_k, 0.0);
  if (max_k < 1) return out;
  // Powers up to ceil(max_k / 2); tr M^{a+b} = sum_ij (M^a)_ij (M^b)_ji.
  const int half = (max_k + 1) / 2;
  std::vector<Matrix> pw{Matrix::Identity(n, n), m};
  for (int p = 2; p <= half; ++p) pw.push_back(pw.back() * m);
  for (int k = 1; k <= max_k; ++k) {
    const int a = k / 2, b = k - a;
    const std::complex<double> tr = (pw[a].array() * pw[b].transpose().array()).sum();
    out[k - 1] = tr.real() / n;
  }
  return out;
}

McEstimate mc_vertex_estimate(const std::vector<int>& degrees, const SampleConfig& cfg, bool connected, int threads) {
  for (int k : degrees)
    if (k < 0) throw UsageError("mc_vertex_estimate: negative degree");
  if (connected && degrees.size() > 2) throw UsageError("mc_vertex_estimate: connected mode supports at most two traces");
  const int max_k = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  std::vector<std::vector<double>> traces(cfg.samples);
  for_each_sample(cfg, threads, [&](long i, const Matrix& m) { traces[i] = normalized_power_traces(m, max_k); });

  auto factor = [&](long i, int k) { return k == 0 ? 1.0 : traces[i][k - 1]; };
  std::vector<double> values(cfg.samples);
  if (connected && degrees.size() == 2) {
    double mx = 0.0, my = 0.0;
    for (long i = 0; i < cfg.samples; ++i) {
      mx += factor(i, degrees[0]);
      my += factor(i, degrees[1]);
    }
    mx /= cfg.samples;
    my /= cfg.samples;
    const double bessel = cfg.samples > 1 ? double(cfg.samples) / (cfg.samples - 1) : 1.0;
    for (long i = 0; i < cfg.samples; ++i)
      values[i] = (factor(i, degrees[0]) - mx) * (factor(i, degrees[1]) - my) * bessel;
    return summarize(values);
  }
  for (long i = 0; i < cfg.samples; ++i) {
    double p = 1.0;
    for (int k : degrees) p *= factor(i, k);
    values[i] = p;
  }
  return summarize(values);
}

double airy_fn(double x) { return boost::math::airy_ai(x); }
double airy_fn_prime(double x) { return boost::math::airy_ai_prime(x); }

double airy_square_tail(double x, double tol) {
  auto f = [](double u) {
    const double a = airy_fn(u);
    return a * a;
  };
  // Ai^2 < 1e-30 beyond u = 14; the oscillating region is split into pieces of length 2.
  const double upper = std::max(x, 0.0) + 14.0;
  double sum = 0.0;
  for (double a = x; a < upper; a += 2.0) sum += gk(f, a, std::min(a + 2.0, upper), tol, nullptr);
  return sum;
}

namespace {

// int_x^inf Ai^2 with the integrals between integer nodes cached, so each call
// integrates only from x up to the next node.
class AiryTail {
 public:
  explicit AiryTail(double tol) : tol_(tol) {}

  double operator()(double x) {
    const double node = std::ceil(x);
    return segment(x, node) + cumulative(static_cast<int>(node));
  }

 private:
  static constexpr int kTop = 14;

  double segment(double a, double b) const {
    if (b <= a) return 0.0;
    return gk([](double u) { const double v = airy_fn(u); return v * v; }, a, b, tol_, nullptr);
  }

  // int_j^inf Ai^2 for integer j, extended downward on demand.
  double cumulative(int j) {
    if (j >= kTop) return 0.0;
    while (lowest_ > j) {
      cache_.push_back(cache_.empty() ? segment(lowest_ - 1, lowest_) : cache_.back() + segment(lowest_ - 1, lowest_));
      --lowest_;
    }
    return cache_[kTop - 1 - j];
  }

  double tol_;
  int lowest_ = kTop;
  std::vector<double> cache_;  // cache_[i] = int_{kTop-1-i}^inf
};

}  // namespace

QuadratureResult edge_ft_quadrature(double s, double rel_tol) {
  if (!(s > 0.0) || s > 8.0) throw UsageError("edge_ft_quadrature: s must lie in (0, 8]");
  double err = 0.0;
  AiryTail tail(1e-12);
  auto outer = [&](double lambda) { return std::exp(s * lambda) * tail(lambda); };
  // e^{s lambda} Ai^2 peaks near lambda = (s/2)^2 and is negligible 14 units beyond.
  const double upper = s * s / 4.0 + 14.0;
  double value = 0.0;
  for (double a = 0.0; a < upper; a += 4.0) value += gk(outer, a, std::min(a + 4.0, upper), 1e-10, &err);

  // For lambda < 0, int_lambda^inf Ai^2 <= 2 sqrt(|lambda|)/pi; the tail bound
  // int_L^inf e^{-s u} 2 sqrt(u)/pi du <= 2 e^{-s L} (sqrt(L)/s + 1/(2 s^2 sqrt(L)))/pi.
  auto tail_bound = [s](double L) {
    return 2.0 * std::exp(-s * L) * (std::sqrt(L) / s + 1.0 / (2.0 * s * s * std::sqrt(L))) / kPi;
  };
  const double width = 4.0;
  double L = 0.0;
  for (int piece = 0; piece < 400; ++piece) {
    value += gk(outer, -(L + width), -L, 1e-10, &err);
    L += width;
    if (tail_bound(L) < 1e-3 * rel_tol * std::fabs(value)) break;
  }
  const double total_err = err + tail_bound(L) + 1e-12 * std::fabs(value);
  if (!(total_err <= rel_tol * std::fabs(value)))
    throw ToleranceError("edge_ft_quadrature: tolerance not met", total_err / std::fabs(value));
  return {value, total_err, -L};
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("hermitian_eigenvalues: solver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

DensityHistogram density_histogram(const SampleConfig& cfg, int bins, double range, double bulk_edge, int threads) {
  if (bins < 1) throw UsageError("density_histogram: bins must be >= 1");
  if (!(range > 0.0)) throw UsageError("density_histogram: range must be positive");
  std::vector<std::vector<double>> evs(cfg.samples);
  for_each_sample(cfg, threads, [&](long i, const Matrix& m) { evs[i] = hermitian_eigenvalues(m); });

  DensityHistogram h{};
  h.bulk_edge = bulk_edge;
  const double width = 2.0 * range / bins;
  std::vector<long> counts(bins, 0);
  long outside = 0, total = 0;
  const double edge = 2.0 + 5.0 * std::pow(static_cast<double>(cfg.n), -2.0 / 3.0);
  for (const auto& sample : evs)
    for (double x : sample) {
      ++total;
      if (std::fabs(x) >= edge) ++outside;
      const int b = static_cast<int>(std::floor((x + range) / width));
      if (b >= 0 && b < bins) ++counts[b];
    }
  h.eigenvalues = total;
  h.outside_fraction = double(outside) / total;
  h.total_mass = 0.0;
  h.max_bulk_deviation = 0.0;
  for (int b = 0; b < bins; ++b) {
    DensityBin bin;
    bin.lo = -range + b * width;
    bin.hi = bin.lo + width;
    bin.density = double(counts[b]) / (total * width);
    bin.semicircle = (semicircle_cdf(bin.hi) - semicircle_cdf(bin.lo)) / width;
    h.total_mass += bin.density * width;
    if (std::fabs(bin.lo) < bulk_edge && std::fabs(bin.hi) < bulk_edge)
      h.max_bulk_deviation = std::max(h.max_bulk_deviation, std::fabs(bin.density - bin.semicircle));
    h.bins.push_back(bin);
  }
  return h;
}

double eigen_residual(const SampleConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng = chunk_stream(cfg.seed, 0);
  const Matrix m = sample_gue(cfg, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw InternalError("eigen_residual: solver failed");
  const double norm = m.norm();
  double worst = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    const Eigen::VectorXcd v = solver.eigenvectors().col(i);
    worst = std::max(worst, (m * v - solver.eigenvalues()(i) * v).norm());
  }
  return worst / norm;
}

}  // namespace rmt::num
