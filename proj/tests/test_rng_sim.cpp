#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "levyest/errors.hpp"
#include "levyest/rng.hpp"
#include "levyest/sim.hpp"

using namespace levyest;

TEST_CASE("derived streams are distinct and never echo the seed") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed : {1ull, 2ull, 42ull, 0xdeadbeefull}) {
    for (std::uint64_t idx = 0; idx < 64; ++idx) {
      const std::uint64_t s = rng::derive_stream(seed, idx);
      CHECK(s != seed);
      CHECK(seen.insert(s).second);
    }
  }
}

TEST_CASE("uniform01 stays strictly inside the open interval") {
  rng::Stream st(7);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double u = st.uniform01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  // 5 sigma band around 1/2, sigma = 1/sqrt(12 n).
  CHECK(std::abs(sum / n - 0.5) < 5.0 / std::sqrt(12.0 * n));
}

TEST_CASE("normal sampler matches the first two moments") {
  rng::Stream st(11);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double z = st.normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK(std::abs(s1 / n) < 5.0 / std::sqrt(double(n)));
  // Var(z^2) = 2 for a standard normal.
  CHECK(std::abs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma sampler moment oracle across the shape split") {
  // Shapes below 1 exercise the log-space power boost, shapes above the
  // plain Marsaglia-Tsang loop.
  for (double shape : {0.3, 1.0, 3.7}) {
    CAPTURE(shape);
    const double scale = 2.0;
    rng::Stream st(5);
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0, lo = 1e300;
    for (int k = 0; k < n; ++k) {
      const double g = st.gamma(shape, scale);
      lo = std::min(lo, g);
      s1 += g;
      s2 += g * g;
    }
    CHECK(lo > 0.0);
    const double mean = shape * scale;
    const double var = shape * scale * scale;
    CHECK(std::abs(s1 / n - mean) < 5.0 * std::sqrt(var / n));
    // E X^k = scale^k shape (shape+1) ... (shape+k-1).
    const double m2 = scale * scale * shape * (shape + 1.0);
    const double m4 =
        std::pow(scale, 4) * shape * (shape + 1.0) * (shape + 2.0) * (shape + 3.0);
    CHECK(std::abs(s2 / n - m2) < 5.0 * std::sqrt((m4 - m2 * m2) / n));
  }
}

TEST_CASE("poisson sampler moment oracle and capacity guard") {
  rng::Stream st(3);
  const double mean = 7.3;
  const int n = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double c = double(st.poisson(mean));
    s1 += c;
    s2 += c * c;
  }
  CHECK(std::abs(s1 / n - mean) < 5.0 * std::sqrt(mean / n));
  const double m2 = mean + mean * mean;
  // Var(N^2) = E N^4 - (E N^2)^2; for Poisson E N^4 =
  // m + 7 m^2 + 6 m^3 + m^4.
  const double en4 = mean + 7.0 * mean * mean + 6.0 * std::pow(mean, 3) + std::pow(mean, 4);
  CHECK(std::abs(s2 / n - m2) < 5.0 * std::sqrt((en4 - m2 * m2) / n));

  CHECK(st.poisson(0.0) == 0);
  CHECK_THROWS_AS(st.poisson(2e9), capacity_error);
}

TEST_CASE("brownian increments have the prescribed mean and covariance") {
  const double delta = 0.01;
  const std::vector<double> sigma = {2.0, 0.5, 0.5, 1.0};
  const std::vector<double> drift = {1.0, -2.0};
  const std::size_t n = 100000;
  auto s = simulate_brownian(sigma, drift, delta, n, 17);
  REQUIRE(s.dim == 2);
  REQUIRE(s.count() == n);
  double m[2] = {0.0, 0.0}, c[3] = {0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    m[0] += s.value(k, 0);
    m[1] += s.value(k, 1);
  }
  m[0] /= double(n);
  m[1] /= double(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = s.value(k, 0) - m[0], b = s.value(k, 1) - m[1];
    c[0] += a * a;
    c[1] += a * b;
    c[2] += b * b;
  }
  for (double* p : {&c[0], &c[1], &c[2]}) *p /= double(n - 1);
  for (int a = 0; a < 2; ++a)
    CHECK(std::abs(m[a] - delta * drift[a]) < 5.0 * std::sqrt(delta * sigma[3 * a] / double(n)));
  // 5 sigma bands from Var(xy) = sxx syy + sxy^2 for joint Gaussians.
  CHECK(std::abs(c[0] - delta * 2.0) < 5.0 * delta * std::sqrt(2.0 * 4.0 / double(n)));
  CHECK(std::abs(c[1] - delta * 0.5) <
        5.0 * delta * std::sqrt((2.0 * 1.0 + 0.25) / double(n)));
  CHECK(std::abs(c[2] - delta * 1.0) < 5.0 * delta * std::sqrt(2.0 / double(n)));
}

TEST_CASE("compound poisson increments: zero rows and jump moments") {
  const double intensity = 20.0, delta = 0.05;  // intensity * delta = 1
  const std::size_t n = 100000;
  const std::vector<double> mean = {0.5}, cov = {1.5};
  auto s = simulate_compound_poisson(intensity, mean, cov, delta, n, 23);
  const double lambda = intensity * delta;
  std::size_t zeros = 0;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double y = s.value(k, 0);
    if (y == 0.0) ++zeros;  // a step with no jumps is exactly zero
    s1 += y;
    s2 += y * y;
  }
  const double p0 = std::exp(-lambda);
  CHECK(std::abs(double(zeros) / double(n) - p0) < 5.0 * std::sqrt(p0 * (1.0 - p0) / double(n)));
  // E Y = lambda mu, E Y^2 = lambda (cov + mu^2) + (lambda mu)^2.
  const double ey = lambda * mean[0];
  const double ey2 = lambda * (cov[0] + mean[0] * mean[0]) + ey * ey;
  CHECK(std::abs(s1 / double(n) - ey) < 5.0 * std::sqrt((ey2 - ey * ey) / double(n)));
  // Fourth-moment band is loose; a 10% relative tolerance on the second
  // moment is ~14 sigma wide here and still catches scale mistakes.
  CHECK(std::abs(s2 / double(n) - ey2) < 0.1 * ey2);
}

TEST_CASE("variance gamma increments share one subordinator per step") {
  const double kappa = 0.5, delta = 0.1;
  const int d = 2;
  const std::size_t n = 200000;
  auto s = simulate_variance_gamma(kappa, d, delta, n, 29);
  double s1 = 0.0, sq = 0.0, sq2 = 0.0, cross = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = s.value(k, 0), b = s.value(k, 1);
    s1 += a + b;
    const double r2 = a * a + b * b;
    sq += r2;
    sq2 += r2 * r2;
    cross += a * a * b * b;
  }
  // E Y_i = 0, E |Y|^2 = d delta, E |Y|^4 = d (d + 2) E dG^2 with
  // E dG^2 = delta kappa + delta^2.
  const double eg2 = delta * kappa + delta * delta;
  const double er2 = d * delta, er4 = d * (d + 2) * eg2;
  CHECK(std::abs(s1 / double(2 * n)) < 5.0 * std::sqrt(delta / double(2 * n)));
  CHECK(std::abs(sq / double(n) - er2) < 5.0 * std::sqrt((er4 - er2 * er2) / double(n)));
  CHECK(std::abs(sq2 / double(n) - er4) < 0.1 * er4);
  // Coordinates are uncorrelated but not independent: the shared
  // subordinator makes E Y_1^2 Y_2^2 = E dG^2, not (E dG)^2.
  CHECK(std::abs(cross / double(n) - eg2) < 0.1 * eg2);
  CHECK(cross / double(n) > 1.5 * delta * delta);
}

TEST_CASE("block simulation keeps blocks independent with their own streams") {
  auto spec = testing::cpp_blocks_2d(10.0);
  const std::size_t n = 100000;
  auto s = simulate_model(spec, 0.05, n, 31);
  double m0 = 0.0, m1 = 0.0, c01 = 0.0, v0 = 0.0, v1 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    m0 += s.value(k, 0);
    m1 += s.value(k, 1);
  }
  m0 /= double(n);
  m1 /= double(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = s.value(k, 0) - m0, b = s.value(k, 1) - m1;
    c01 += a * b;
    v0 += a * a;
    v1 += b * b;
  }
  CHECK(std::abs(c01 / std::sqrt(v0 * v1)) < 5.0 / std::sqrt(double(n)));

  // The first block's coordinates reproduce a solo run of the sub-model
  // under the derived stream, bit for bit.
  auto solo = simulate_model(spec.blocks[0].model, 0.05, 64, rng::derive_stream(31, 0));
  auto joint = simulate_model(spec, 0.05, 64, 31);
  for (std::size_t k = 0; k < 64; ++k) CHECK(joint.value(k, 0) == solo.value(k, 0));
}

TEST_CASE("simulation is reproducible and seed-sensitive") {
  auto spec = testing::cpp_standard(2, 5.0);
  auto a = simulate_model(spec, 0.1, 500, 7);
  auto b = simulate_model(spec, 0.1, 500, 7);
  auto c = simulate_model(spec, 0.1, 500, 8);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.horizon() == doctest::Approx(50.0));
}

TEST_CASE("simulation rejects bad arguments and capacity bombs") {
  auto spec = testing::cpp_1d(5.0);
  CHECK_THROWS_AS(simulate_model(spec, 0.0, 10, 1), config_error);
  CHECK_THROWS_AS(simulate_model(spec, 0.1, 0, 1), config_error);
  CHECK_THROWS_AS(simulate_compound_poisson(2e12, {0.0}, {1.0}, 1.0, 1, 1), capacity_error);
}
