#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"
#include "rmt/numerics.hpp"

using namespace rmt;
using namespace rmt::num;

TEST_SUITE("numerics-mc") {
  TEST_CASE("Airy function values and ODE") {
    CHECK(airy_fn(0.0) == doctest::Approx(0.355028053887817).epsilon(1e-13));
    CHECK(airy_fn_prime(0.0) == doctest::Approx(-0.258819403792807).epsilon(1e-13));
    const double h = 1e-3;
    for (double x : {-6.0, -2.5, 0.0, 1.0, 3.0}) {
      const double second = (airy_fn(x + h) - 2.0 * airy_fn(x) + airy_fn(x - h)) / (h * h);
      CHECK(std::fabs(second - x * airy_fn(x)) < 1e-6);
    }
  }

  TEST_CASE("tail of Ai^2 has a closed form") {
    for (double x : {-8.0, -3.0, -0.5, 0.0, 2.0, 5.0}) {
      const double a = airy_fn(x), ap = airy_fn_prime(x);
      const double exact = ap * ap - x * a * a;
      CHECK(airy_square_tail(x) == doctest::Approx(exact).epsilon(1e-11));
    }
  }

  TEST_CASE("edge identity at s = 1") {
    const QuadratureResult r = edge_ft_quadrature(1.0, 1e-9);
    const double closed = std::exp(1.0 / 12.0) / (2.0 * std::sqrt(std::numbers::pi));
    CHECK(r.value == doctest::Approx(closed).epsilon(1e-9));
    CHECK(r.error_estimate < 1e-9 * r.value);
    CHECK(r.lower_cutoff < 0.0);
    CHECK_THROWS_AS(edge_ft_quadrature(0.0), UsageError);
    CHECK_THROWS_AS(edge_ft_quadrature(9.0), UsageError);
    CHECK_THROWS_AS(edge_ft_quadrature(1.0, 1e-17), ToleranceError);
  }

  TEST_CASE("sampled matrices are Hermitian with the right variance") {
    SampleConfig cfg;
    cfg.n = 6;
    auto rng = chunk_stream(cfg.seed, 0);
    const Matrix m = sample_gue(cfg, rng);
    CHECK((m - m.adjoint()).norm() == doctest::Approx(0.0));
  }

  TEST_CASE("power traces agree with eigenvalues") {
    SampleConfig cfg;
    cfg.n = 8;
    auto rng = chunk_stream(3, 1);
    const Matrix m = sample_gue(cfg, rng);
    const auto ev = hermitian_eigenvalues(m);
    const auto tr = normalized_power_traces(m, 7);
    for (int k = 1; k <= 7; ++k) {
      double s = 0.0;
      for (double x : ev) s += std::pow(x, k);
      CHECK(tr[k - 1] == doctest::Approx(s / cfg.n).epsilon(1e-10));
    }
  }

  TEST_CASE("small Monte Carlo moments") {
    SampleConfig cfg;
    cfg.n = 10;
    cfg.samples = 3000;
    const McEstimate m2 = mc_vertex_estimate({2}, cfg);
    CHECK(std::fabs(m2.mean - 1.0) < 5.0 * m2.stderr_);
    const McEstimate m4 = mc_vertex_estimate({4}, cfg);
    CHECK(std::fabs(m4.mean - 2.01) < 5.0 * m4.stderr_);
    const McEstimate c = mc_vertex_estimate({2, 2}, cfg, true);
    CHECK(std::fabs(c.mean - 0.02) < 5.0 * c.stderr_);
    CHECK(m4.samples == 3000);
    CHECK_THROWS_AS(mc_vertex_estimate({1, 1, 1}, cfg, true), UsageError);
  }

  TEST_CASE("results do not depend on the thread count") {
    SampleConfig cfg;
    cfg.n = 12;
    cfg.samples = 700;
    cfg.chunk = 64;
    const McEstimate a = mc_vertex_estimate({4, 2}, cfg, false, 1);
    const McEstimate b = mc_vertex_estimate({4, 2}, cfg, false, 3);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    cfg.seed = 8;
    CHECK(mc_vertex_estimate({4, 2}, cfg).mean != a.mean);
  }

  TEST_CASE("shift moves the mean trace") {
    SampleConfig cfg;
    cfg.n = 10;
    cfg.samples = 500;
    cfg.source = SampleConfig::uniform_source(10, 0.5);
    const McEstimate m1 = mc_vertex_estimate({1}, cfg);
    CHECK(std::fabs(m1.mean + 0.5) < 5.0 * m1.stderr_);
  }

  TEST_CASE("configuration validation") {
    SampleConfig cfg;
    cfg.samples = 0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.samples = 10;
    cfg.source = {1.0};
    CHECK_THROWS_AS(cfg.validate(), UsageError);
  }

  TEST_CASE("density histogram follows the semicircle") {
    SampleConfig cfg;
    cfg.n = 100;
    cfg.samples = 100;
    const DensityHistogram h = density_histogram(cfg, 50);
    CHECK(h.eigenvalues == 10000);
    CHECK(h.total_mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(h.max_bulk_deviation < 0.03);
    CHECK(h.outside_fraction < 1e-3);
    CHECK(h.bins.size() == 50);
  }

  TEST_CASE("eigen decomposition residual") {
    SampleConfig cfg;
    cfg.n = 60;
    CHECK(eigen_residual(cfg) < 1e-12);
  }
}
