#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "helpers.hpp"
#include "levyest/errors.hpp"
#include "levyest/reference.hpp"
#include "levyest/rng.hpp"
#include "levyest/sim.hpp"
#include "levyest/spectral.hpp"

using namespace levyest;

TEST_CASE("compound poisson jump density is the rescaled normal") {
  auto spec = testing::cpp_standard(2, 100.0);
  const double zero[2] = {0.0, 0.0};
  CHECK(true_levy_density(spec, zero) ==
        doctest::Approx(100.0 / (2.0 * M_PI)).epsilon(1e-14));
  // Correlated covariance against an independently coded 2-d normal pdf.
  LevyModelSpec corr;
  corr.dimension = 2;
  CompoundPoissonPart cp;
  cp.intensity = 3.0;
  cp.jump_mean = {0.5, -1.0};
  cp.jump_cov = {2.0, 0.6, 0.6, 1.0};
  corr.cpp_parts.push_back(cp);
  const double det = 2.0 * 1.0 - 0.6 * 0.6;
  const double x[2] = {1.0, 0.25};
  const double dx0 = x[0] - 0.5, dx1 = x[1] + 1.0;
  const double quad = (1.0 * dx0 * dx0 - 2.0 * 0.6 * dx0 * dx1 + 2.0 * dx1 * dx1) / det;
  const double want = 3.0 * std::exp(-0.5 * quad) / (2.0 * M_PI * std::sqrt(det));
  CHECK(true_levy_density(corr, x) == doctest::Approx(want).epsilon(1e-13));
  // Singular covariance has no density to report.
  corr.cpp_parts[0].jump_cov = {1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(true_levy_density(corr, x), invalid_model_error);
}

TEST_CASE("variance gamma density: quadrature and bessel routes coincide") {
  for (int d : {1, 2, 3}) {
    for (double kappa : {0.3, 1.0, 2.0}) {
      for (double r : {1e-3, 0.01, 0.5, 1.0, 3.0}) {
        CAPTURE(d);
        CAPTURE(kappa);
        CAPTURE(r);
        LevyModelSpec spec;
        spec.dimension = d;
        spec.vg.push_back(VarianceGammaPart{kappa});
        std::vector<double> x(d, 0.0);
        x[0] = r;
        const double via_quad = true_levy_density(spec, x.data());
        const double via_bessel = vg_density_bessel(kappa, d, r);
        CHECK(via_quad == doctest::Approx(via_bessel).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("variance gamma singularity is reported as infinity") {
  LevyModelSpec spec;
  spec.dimension = 2;
  spec.vg.push_back(VarianceGammaPart{1.0});
  const double zero[2] = {0.0, 0.0};
  const double tiny[2] = {5e-4, 0.0};
  CHECK(std::isinf(true_levy_density(spec, zero)));
  CHECK(std::isinf(true_levy_density(spec, tiny)));  // below the 1e-3 cutoff
  CHECK(std::isinf(vg_density_bessel(1.0, 2, 0.0)));

  // |x|^2 nu stays finite: 0 in d = 1, 1/(pi kappa) in d = 2.
  CHECK(true_xsq_levy_density(spec, zero) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  LevyModelSpec one;
  one.dimension = 1;
  one.vg.push_back(VarianceGammaPart{1.0});
  const double z1 = 0.0;
  CHECK(true_xsq_levy_density(one, &z1) == 0.0);
  LevyModelSpec three;
  three.dimension = 3;
  three.vg.push_back(VarianceGammaPart{2.0});
  const double z3[3] = {0.0, 0.0, 0.0};
  CHECK(std::isinf(true_xsq_levy_density(three, z3)));
  // Near the origin the |x|^2 surface approaches its limit.
  const double near[2] = {2e-3, 0.0};
  CHECK(true_xsq_levy_density(spec, near) == doctest::Approx(1.0 / M_PI).epsilon(0.02));
}

TEST_CASE("variance gamma second jump moment integrates to the dimension") {
  // int |x|^2 nu(dx) over R^2 = 2 for kappa = 1: radial quadrature of
  // 2 pi r^3 nu(r) using the bessel-form density.
  auto integrand = [](double r) { return 2.0 * M_PI * r * r * r * vg_density_bessel(1.0, 2, r); };
  const double got = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, 60.0, 14, 1e-12);
  CHECK(got == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("block densities are evaluated per block, the joint has none") {
  auto spec = testing::cpp_blocks_2d(100.0);
  const double zero = 0.0;
  CHECK(true_block_levy_density(spec, 0, &zero) ==
        doctest::Approx(100.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));
  const double x[2] = {0.5, 0.5};
  CHECK_THROWS_AS(true_levy_density(spec, x), invalid_input_error);
  CHECK_THROWS_AS(true_block_levy_density(spec, 2, &zero), invalid_input_error);
}

TEST_CASE("characteristic function closed forms") {
  SUBCASE("any model at u = 0") {
    auto spec = testing::cpp_standard(2, 7.0);
    const double zero[2] = {0.0, 0.0};
    CHECK(true_cf(spec, 0.5, zero) == std::complex<double>(1.0, 0.0));
  }
  SUBCASE("variance gamma textbook value") {
    LevyModelSpec spec;
    spec.dimension = 2;
    spec.vg.push_back(VarianceGammaPart{1.0});
    const double u[2] = {1.0, 0.0};
    const auto got = true_cf(spec, 0.001, u);
    CHECK(got.real() == doctest::Approx(std::pow(1.5, -0.001)).epsilon(1e-12));
    CHECK(got.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("compound poisson with asymmetric jumps") {
    LevyModelSpec spec;
    spec.dimension = 1;
    CompoundPoissonPart cp;
    cp.intensity = 4.0;
    cp.jump_mean = {0.7};
    cp.jump_cov = {1.3};
    spec.cpp_parts.push_back(cp);
    const double u = 1.1, delta = 0.2;
    const std::complex<double> jump_cf =
        std::exp(std::complex<double>(-0.5 * 1.3 * u * u, 0.7 * u));
    const auto want = std::exp(delta * 4.0 * (jump_cf - 1.0));
    const auto got = true_cf(spec, delta, &u);
    CHECK(std::abs(got - want) < 1e-14);
  }
  SUBCASE("brownian factor") {
    LevyModelSpec spec;
    spec.dimension = 1;
    BrownianPart bm;
    bm.sigma = {2.25};
    bm.drift = {-1.5};
    spec.brownian.push_back(bm);
    const double u = 0.8, delta = 0.4;
    const auto want = std::exp(std::complex<double>(-0.5 * delta * 2.25 * u * u,
                                                    delta * (-1.5) * u));
    CHECK(std::abs(true_cf(spec, delta, &u) - want) < 1e-14);
  }
  SUBCASE("blocks multiply") {
    auto spec = testing::cpp_blocks_2d(10.0);
    const double u[2] = {0.9, -1.7};
    const auto joint = true_cf(spec, 0.3, u);
    const auto f0 = true_cf(spec.blocks[0].model, 0.3, &u[0]);
    const auto f1 = true_cf(spec.blocks[1].model, 0.3, &u[1]);
    CHECK(std::abs(joint - f0 * f1) < 1e-15);
  }
  SUBCASE("delta must be positive") {
    auto spec = testing::cpp_1d(1.0);
    const double u = 0.0;
    CHECK_THROWS_AS(true_cf(spec, 0.0, &u), invalid_input_error);
  }
}

TEST_CASE("true cf matches the empirical cf within monte carlo error") {
  LevyModelSpec vg;
  vg.dimension = 2;
  vg.vg.push_back(VarianceGammaPart{0.5});
  LevyModelSpec bm;
  bm.dimension = 2;
  BrownianPart part;
  part.sigma = {1.0, 0.2, 0.2, 0.5};
  part.drift = {0.3, 0.0};
  bm.brownian.push_back(part);
  const std::vector<LevyModelSpec> models = {testing::cpp_standard(2, 10.0), vg, bm,
                                             testing::cpp_blocks_2d(10.0)};
  rng::Stream ustream(77);
  for (const auto& spec : models) {
    const std::size_t n = 40000;
    auto s = simulate_model(spec, 0.05, n, 55);
    FreqGrid grid(2, 4, 2.0);  // 16 nodes with |u_j| <= 2
    auto f = ecf(s, grid);
    std::vector<double> u(2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node_point(i, u.data());
      const auto want = true_cf(spec, s.delta, u.data());
      CHECK(std::abs(f.values[i] - want) < 5.0 / std::sqrt(double(n)));
    }
  }
}

TEST_CASE("psi laplacian closed form agrees with finite differences of log cf") {
  LevyModelSpec asym;
  asym.dimension = 2;
  CompoundPoissonPart cp;
  cp.intensity = 3.0;
  cp.jump_mean = {0.4, -0.2};
  cp.jump_cov = {1.0, 0.3, 0.3, 0.8};
  asym.cpp_parts.push_back(cp);
  BrownianPart bm;
  bm.sigma = {0.5, 0.0, 0.0, 0.25};
  bm.drift = {1.0, 2.0};
  asym.brownian.push_back(bm);
  LevyModelSpec vg;
  vg.dimension = 2;
  vg.vg.push_back(VarianceGammaPart{0.7});
  for (const auto& spec : {asym, vg, testing::cpp_blocks_2d(5.0)}) {
    const double u0[2] = {0.6, -0.4};
    const double h = 1e-4;
    std::complex<double> lap_fd(0.0, 0.0);
    auto psi = [&](const double* u) { return std::log(true_cf(spec, 1.0, u)); };
    for (int a = 0; a < 2; ++a) {
      double up[2] = {u0[0], u0[1]}, um[2] = {u0[0], u0[1]};
      up[a] += h;
      um[a] -= h;
      lap_fd += (psi(up) - 2.0 * psi(u0) + psi(um)) / (h * h);
    }
    const auto got = true_psi_laplacian(spec, u0);
    CHECK(std::abs(got - lap_fd) < 1e-5 * std::max(1.0, std::abs(got)));
  }
}

TEST_CASE("gaussian trace sums across parts and blocks") {
  LevyModelSpec sub1;
  sub1.dimension = 1;
  BrownianPart b1;
  b1.sigma = {0.7};
  b1.drift = {0.0};
  sub1.brownian.push_back(b1);
  LevyModelSpec spec;
  spec.dimension = 2;
  spec.blocks.push_back(BlockPart{{0}, sub1});
  spec.blocks.push_back(BlockPart{{1}, testing::cpp_1d(2.0)});
  CHECK(true_trace_sigma(spec) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(true_trace_sigma(testing::cpp_standard(2, 5.0)) == 0.0);
}

TEST_CASE("field metrics vanish on the truth and see added noise exactly") {
  auto spec = testing::cpp_1d(10.0);
  SpaceGrid grid(1, {128}, {0.05});
  DensityField field{grid, {}, "xsq_nu", {}};
  field.values.resize(grid.size());
  std::vector<double> x(1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node_point(i, x.data());
    field.values[i] = true_xsq_levy_density(spec, x.data());
  }
  const Region ann = Region::make_annulus(0.5, 2.0);
  CHECK(sup_error(field, spec, ann) == 0.0);
  CHECK(l2_error(field, spec, ann) == 0.0);
  CHECK(l2_truth_norm(field, spec, ann) > 0.0);

  // Shift by a constant on the annulus: sup = eps, l2 = eps sqrt(vol).
  const double eps = 0.125;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node_point(i, x.data());
    if (ann.contains(x.data(), 1) && x[0] != 0.0) {
      field.values[i] += eps;
      ++inside;
    }
  }
  CHECK(sup_error(field, spec, ann) == doctest::Approx(eps).epsilon(1e-12));
  CHECK(l2_error(field, spec, ann) ==
        doctest::Approx(eps * std::sqrt(double(inside) * grid.cell_volume())).epsilon(1e-12));

  // A zero field's error equals the truth norm on the same nodes.
  DensityField zero{grid, std::vector<double>(grid.size(), 0.0), "xsq_nu", {}};
  CHECK(l2_error(zero, spec, ann) == l2_truth_norm(zero, spec, ann));
}

TEST_CASE("reference functional: block route equals the plain 1-d route") {
  // The same 1-d law evaluated through both code paths (tensor quadrature
  // over the bump box vs per-block line integrals).
  auto flat = testing::cpp_1d(100.0);
  LevyModelSpec blocked;
  blocked.dimension = 1;
  blocked.blocks.push_back(BlockPart{{0}, flat});
  BumpSpec f;
  f.radial = true;
  f.center = {1.0};
  f.width = 0.5;
  const double a = reference_xsq_functional(flat, f);
  const double b = reference_xsq_functional(blocked, f);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
  CHECK(a > 0.0);

  // A bump clear of every axis sees no mass from a block model.
  auto spec2 = testing::cpp_blocks_2d(100.0);
  BumpSpec avoid;
  avoid.radial = true;
  avoid.center = {1.0, 1.0};
  avoid.width = 0.5;
  CHECK(reference_xsq_functional(spec2, avoid) == 0.0);

  // The straddling bump only collects mass from the axis it crosses.
  BumpSpec straddle;
  straddle.radial = true;
  straddle.center = {1.0, 0.0};
  straddle.width = 0.5;
  const double joint = reference_xsq_functional(spec2, straddle);
  CHECK(joint > 0.0);
}
