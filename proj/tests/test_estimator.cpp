#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "helpers.hpp"
#include "levyest/errors.hpp"
#include "levyest/estimator.hpp"
#include "levyest/fourier.hpp"
#include "levyest/kernels.hpp"
#include "levyest/sim.hpp"
#include "levyest/spectral.hpp"

using namespace levyest;

namespace {

EstimatorConfig small_config() {
  EstimatorConfig cfg;
  cfg.kernel.bandwidth = 0.5;
  cfg.grid_points = 64;
  cfg.post_process = PostProcess::raw;
  return cfg;
}

}  // namespace

TEST_CASE("pipeline equals its brute-force composition without the fft") {
  auto s = simulate_model(testing::cpp_1d(5.0), 0.1, 50, 21);
  auto cfg = small_config();
  auto est = estimate_levy_density(s, cfg);

  const FreqGrid grid = cfg.make_grid(1);
  auto psi = psi_laplacian_hat(s, grid);
  auto fk = fk_on_grid(cfg.kernel, grid);
  ComplexField smoothed{grid, {}, {}};
  smoothed.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    smoothed.values[i] = fk.values[i].real() * psi.field.values[i];
  const SpaceGrid dual = SpaceGrid::dual_of(grid);
  std::vector<double> pts(dual.size());
  for (std::size_t i = 0; i < dual.size(); ++i) pts[i] = dual.node(0, int(i));
  auto inv = inverse_fourier_quadrature(smoothed, pts);

  REQUIRE(est.xsq_nu_hat.values.size() == dual.size());
  double scale = 0.0;
  for (const auto& v : inv) scale = std::max(scale, std::abs(v.real()));
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const double want_xsq = -inv[i].real();
    CHECK(std::abs(est.xsq_nu_hat.values[i] - want_xsq) < 1e-10 * scale);
    const double x = pts[i];
    if (!est.nu_hat.undefined(i))
      CHECK(std::abs(est.nu_hat.values[i] - want_xsq / (x * x)) <
            1e-10 * scale / (x * x));
  }
}

TEST_CASE("zero trace correction reproduces the plain estimate bitwise") {
  auto s = simulate_model(testing::cpp_standard(2, 8.0), 0.05, 400, 33);
  auto cfg = small_config();
  auto plain = estimate_levy_density(s, cfg);
  auto corrected = estimate_xsq_nu_corrected(s, cfg, 0.0);
  REQUIRE(plain.xsq_nu_hat.values.size() == corrected.xsq_nu_hat.values.size());
  CHECK(plain.xsq_nu_hat.values == corrected.xsq_nu_hat.values);
  CHECK(plain.nu_hat.values == corrected.nu_hat.values);
  CHECK(plain.nu_hat.invalid == corrected.nu_hat.invalid);
}

TEST_CASE("trace correction acts linearly through the smoothing kernel") {
  auto s = simulate_model(testing::cpp_1d(5.0), 0.1, 300, 9);
  auto cfg = small_config();
  const double t = 0.37;
  auto base = estimate_xsq_nu_corrected(s, cfg, 0.0);
  auto shifted = estimate_xsq_nu_corrected(s, cfg, t);
  auto fkinv = inverse_fourier_fft(fk_on_grid(cfg.kernel, cfg.make_grid(1)));
  double scale = 0.0;
  for (const auto& v : fkinv.values) scale = std::max(scale, std::abs(v.real()));
  for (std::size_t i = 0; i < base.xsq_nu_hat.values.size(); ++i) {
    const double want = base.xsq_nu_hat.values[i] - t * fkinv.values[i].real();
    CHECK(std::abs(shifted.xsq_nu_hat.values[i] - want) < 1e-12 * t * scale);
  }
}

TEST_CASE("positive part clamps the raw surface pointwise") {
  auto s = simulate_model(testing::cpp_1d(5.0), 0.1, 200, 14);
  auto cfg = small_config();
  cfg.post_process = PostProcess::real_positive_part;
  auto est = estimate_levy_density(s, cfg);
  bool saw_negative_raw = false;
  for (std::size_t i = 0; i < est.xsq_nu_hat.values.size(); ++i) {
    const double raw = est.xsq_nu_raw.values[i];
    saw_negative_raw = saw_negative_raw || raw < 0.0;
    CHECK(est.xsq_nu_hat.values[i] == (raw > 0.0 ? raw : 0.0));
    if (!est.nu_hat.undefined(i))
      CHECK(est.nu_hat.values[i] == (est.nu_raw.values[i] > 0.0 ? est.nu_raw.values[i] : 0.0));
  }
  CHECK(saw_negative_raw);  // a finite-sample surface always undershoots somewhere
}

TEST_CASE("origin exclusion marks exactly the configured ball") {
  auto s = simulate_model(testing::cpp_1d(5.0), 0.1, 100, 2);
  auto cfg = small_config();

  SUBCASE("explicit radius") { cfg.origin_exclusion = 0.3; }
  SUBCASE("default: one dual-grid cell") { cfg.origin_exclusion = -1.0; }

  auto est = estimate_levy_density(s, cfg);
  const SpaceGrid& g = est.nu_hat.grid;
  const double eps = cfg.origin_exclusion < 0.0 ? g.spacing(0) : cfg.origin_exclusion;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(0, int(i));
    CHECK(est.nu_hat.undefined(i) == (x * x <= eps * eps));
    if (est.nu_hat.undefined(i)) CHECK(est.nu_hat.values[i] == 0.0);
    CHECK(!est.xsq_nu_hat.undefined(i));  // the |x|^2 surface is defined everywhere
  }
}

TEST_CASE("trace estimate recovers a brownian variance and flags nothing") {
  std::vector<double> values;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto s = simulate_brownian({2.0}, {0.0}, 0.01, 50000, seed);
    EstimatorConfig cfg;
    cfg.kernel.bandwidth = 0.25;
    cfg.grid_points = 32;
    auto tr = estimate_trace_sigma(s, cfg);
    CHECK(!tr.negative);
    values.push_back(tr.value);
  }
  CHECK(std::abs(testing::median_of(values) - 2.0) < 0.2);
}

TEST_CASE("trace estimate of a pure-jump model is near zero") {
  auto s = simulate_model(testing::cpp_1d(5.0), 0.01, 100000, 6);
  EstimatorConfig cfg;
  cfg.kernel.bandwidth = 0.25;
  cfg.grid_points = 32;
  auto tr = estimate_trace_sigma(s, cfg);
  CHECK(std::abs(tr.value) < 0.3);
}

TEST_CASE("estimates are invariant under a deterministic drift shift") {
  auto s = simulate_model(testing::cpp_1d(5.0), 0.1, 2000, 27);
  IncrementSample shifted = s;
  for (std::size_t k = 0; k < shifted.count(); ++k) shifted.values[k] += 7.3;
  auto cfg = small_config();
  cfg.post_process = PostProcess::real_positive_part;
  auto a = estimate_levy_density(s, cfg);
  auto b = estimate_levy_density(shifted, cfg);
  REQUIRE(a.diagnostics.masked_fraction == 0.0);
  REQUIRE(b.diagnostics.masked_fraction == 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.nu_hat.values.size(); ++i) {
    if (a.nu_hat.undefined(i)) continue;
    worst = std::max(worst, std::abs(a.nu_hat.values[i] - b.nu_hat.values[i]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("bandwidth rules evaluate their formulas and guard their domains") {
  CHECK(bandwidth_sim_default(100.0) == doctest::Approx(0.4).epsilon(1e-15));
  const double T = 50.0, delta = 0.5, s = 2.0, alpha = 1.0, r = 1.0;
  CHECK(bandwidth_mild(s, alpha, 2, delta, T) ==
        doctest::Approx(std::pow(std::log(T) / T, 1.0 / (2.0 * s + 2.0 * delta * alpha + 2.0)))
            .epsilon(1e-14));
  CHECK(bandwidth_severe(alpha, r, delta, T) ==
        doctest::Approx(std::pow(std::log(T) / (4.0 * r * delta), -1.0 / alpha))
            .epsilon(1e-14));
  CHECK_THROWS_AS(bandwidth_mild(s, alpha, 2, delta, 2.0), config_error);   // T <= e
  CHECK_THROWS_AS(bandwidth_severe(alpha, r, delta, 1.0), config_error);    // T <= 1
  CHECK_THROWS_AS(bandwidth_sim_default(0.0), config_error);

  BandwidthSpec bw;
  bw.rule = BandwidthRule::explicit_h;
  bw.h = 0.123;
  CHECK(bw.resolve(2, delta, T) == 0.123);
  bw.rule = BandwidthRule::sim_default;
  CHECK(bw.resolve(2, delta, T) == bandwidth_sim_default(T));
  bw.rule = BandwidthRule::mild;
  bw.s = s;
  bw.alpha = alpha;
  CHECK(bw.resolve(2, delta, T) == bandwidth_mild(s, alpha, 2, delta, T));
  bw.rule = BandwidthRule::severe;
  bw.r = r;
  CHECK(bw.resolve(2, delta, T) == bandwidth_severe(alpha, r, delta, T));
}

TEST_CASE("estimator config validation") {
  auto cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.grid_points = 63;
  CHECK_THROWS_AS(bad.validate(), config_error);
  bad = cfg;
  bad.grid_u_max = 1.0;  // below 1/h = 2
  CHECK_THROWS_AS(bad.validate(), config_error);
  bad = cfg;
  bad.kernel.bandwidth = -0.5;
  CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("functional integration matches adaptive quadrature") {
  // The rectangle rule on a compactly supported smooth integrand converges
  // superalgebraically but the bump's steep flanks keep the dx = 0.05
  // error near 2e-5; halving dx must shrink it by far more than the
  // rectangle rule's generic first order.
  BumpSpec f;
  f.radial = true;
  f.center = {1.2};
  f.width = 0.7;
  auto integral_at = [&](double dx) {
    SpaceGrid grid(1, {int(std::lround(512 * 0.05 / dx))}, {dx});
    DensityField field{grid, {}, "xsq_nu", {}};
    field.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid.node(0, int(i));
      field.values[i] = std::exp(-x * x);
    }
    return integrate_against_test_function(field, f, Region::all());
  };
  auto integrand = [&](double x) { return f.value(&x, 1) * std::exp(-x * x); };
  const double want = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.5, 1.9, 10, 1e-12);
  const double coarse = integral_at(0.05), fine = integral_at(0.025);
  CHECK(coarse == doctest::Approx(want).epsilon(1e-4));
  CHECK(fine == doctest::Approx(want).epsilon(1e-7));
  CHECK(std::abs(fine - want) < 0.05 * std::abs(coarse - want));

  SpaceGrid grid(1, {512}, {0.05});
  DensityField field{grid, {}, "xsq_nu", {}};
  field.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(0, int(i));
    field.values[i] = std::exp(-x * x);
  }

  // The bump must stay inside the region.
  CHECK_THROWS_AS(
      integrate_against_test_function(field, f, Region::make_annulus(1.0, 2.0)),
      config_error);
}
