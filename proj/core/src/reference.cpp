#include "levyest/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "levyest/errors.hpp"

namespace levyest {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double sqnorm(const double* x, int d) {
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += x[a] * x[a];
  return s;
}

double mvn_pdf(int d, const double* x, const std::vector<double>& mean,
               const std::vector<double>& cov) {
  Eigen::MatrixXd c(d, d);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) c(r, k) = cov[std::size_t(r) * d + k];
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success)
    throw invalid_model_error(
        "jump covariance must be positive definite to evaluate the jump density");
  Eigen::VectorXd diff(d);
  for (int a = 0; a < d; ++a) diff(a) = x[a] - mean[a];
  Eigen::VectorXd z = llt.matrixL().solve(diff);
  double log_det_half = 0.0;
  for (int a = 0; a < d; ++a) log_det_half += std::log(llt.matrixL()(a, a));
  return std::exp(-0.5 * z.squaredNorm() - log_det_half - 0.5 * d * std::log(kTwoPi));
}

//! Subordination integral for the variance gamma jump density.  With
//! t = e^s the integrand is exp(-g(s)),
//!   g(s) = (d/2) s + (r^2/2) e^{-s} + e^s / kappa,
//! which decays doubly exponentially on both sides.  Integrating
//! exp(g(s*) - g(s)) around the stationary point s* keeps the integrand
//! in range even when the density itself under- or overflows the peak.
double vg_density_quadrature(double kappa, int d, double r, double tol) {
  if (!(r > 0.0)) return std::numeric_limits<double>::infinity();
  const double half_d = 0.5 * d;
  auto g = [&](double s) {
    return half_d * s + 0.5 * r * r * std::exp(-s) + std::exp(s) / kappa;
  };
  // y = e^{s*} is the positive root of y^2/kappa + (d/2) y - r^2/2 = 0,
  // written in the cancellation-free form.
  const double ystar =
      r * r / (half_d + std::sqrt(half_d * half_d + 2.0 * r * r / kappa));
  const double sstar = std::log(ystar);
  const double gstar = g(sstar);
  double lo = sstar, hi = sstar;
  for (int it = 0; it < 200 && g(lo) - gstar < 750.0; ++it) lo -= 4.0;
  for (int it = 0; it < 200 && g(hi) - gstar < 750.0; ++it) hi += 4.0;
  auto integrand = [&](double s) { return std::exp(gstar - g(s)); };
  const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, lo, hi, 12, tol);
  return std::pow(kTwoPi, -half_d) / kappa * std::exp(-gstar) * q;
}

std::complex<double> psi_at(const LevyModelSpec& spec, const double* u) {
  const int d = spec.dimension;
  std::complex<double> acc(0.0, 0.0);
  if (!spec.blocks.empty()) {
    for (const BlockPart& b : spec.blocks) {
      std::vector<double> ub(b.coords.size());
      for (std::size_t a = 0; a < b.coords.size(); ++a) ub[a] = u[b.coords[a]];
      acc += psi_at(b.model, ub.data());
    }
    return acc;
  }
  for (const BrownianPart& bm : spec.brownian) {
    double drift_dot = 0.0, quad = 0.0;
    for (int r = 0; r < d; ++r) {
      drift_dot += bm.drift[r] * u[r];
      for (int k = 0; k < d; ++k) quad += u[r] * bm.sigma[std::size_t(r) * d + k] * u[k];
    }
    acc += std::complex<double>(-0.5 * quad, drift_dot);
  }
  for (const CompoundPoissonPart& cp : spec.cpp_parts) {
    double mean_dot = 0.0, quad = 0.0;
    for (int r = 0; r < d; ++r) {
      mean_dot += cp.jump_mean[r] * u[r];
      for (int k = 0; k < d; ++k) quad += u[r] * cp.jump_cov[std::size_t(r) * d + k] * u[k];
    }
    acc += cp.intensity * (std::exp(std::complex<double>(-0.5 * quad, mean_dot)) - 1.0);
  }
  for (const VarianceGammaPart& vg : spec.vg)
    acc -= std::log1p(0.5 * vg.kappa * sqnorm(u, d)) / vg.kappa;
  return acc;
}

double truth_value(const LevyModelSpec& spec, const std::string& quantity, const double* x,
                   int d, double tol) {
  if (quantity == "nu") return true_levy_density(spec, x, tol);
  if (quantity == "xsq_nu") return true_xsq_levy_density(spec, x, tol);
  throw invalid_input_error("unknown field quantity: " + quantity);
}

//! Shared node walk for the field metrics.  The origin node is always
//! excluded: the estimator never defines it (division by |x|^2) and some
//! jump densities are singular there.
template <typename Visit>
void for_region_nodes(const DensityField& field, const Region& region, Visit&& visit) {
  const SpaceGrid& g = field.grid;
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (field.undefined(i)) continue;
    g.node_point(i, x.data());
    if (sqnorm(x.data(), g.dim()) == 0.0) continue;
    if (!region.contains(x.data(), g.dim())) continue;
    visit(i, x.data());
  }
}

}  // namespace

double true_levy_density(const LevyModelSpec& spec, const double* x, double quad_tol) {
  if (!spec.blocks.empty())
    throw invalid_input_error(
        "block jump measures charge the coordinate cross and have no joint density; "
        "evaluate blocks individually");
  const int d = spec.dimension;
  double acc = 0.0;
  for (const CompoundPoissonPart& cp : spec.cpp_parts)
    acc += cp.intensity * mvn_pdf(d, x, cp.jump_mean, cp.jump_cov);
  // The variance gamma density diverges as x -> 0; below |x| = 1e-3 we
  // report the divergence as +infinity instead of a quadrature value.
  for (const VarianceGammaPart& vg : spec.vg) {
    const double r = std::sqrt(sqnorm(x, d));
    if (r < 1e-3) return std::numeric_limits<double>::infinity();
    acc += vg_density_quadrature(vg.kappa, d, r, quad_tol);
  }
  return acc;
}

double true_xsq_levy_density(const LevyModelSpec& spec, const double* x, double quad_tol) {
  if (!spec.blocks.empty())
    throw invalid_input_error(
        "block jump measures charge the coordinate cross and have no joint density; "
        "evaluate blocks individually");
  const int d = spec.dimension;
  const double r2 = sqnorm(x, d);
  if (r2 > 0.0) {
    // Unlike the bare density, |x|^2 nu stays finite toward the origin, so
    // the variance gamma quadrature is used at any nonzero radius.
    double acc = 0.0;
    for (const CompoundPoissonPart& cp : spec.cpp_parts)
      acc += cp.intensity * mvn_pdf(d, x, cp.jump_mean, cp.jump_cov);
    for (const VarianceGammaPart& vg : spec.vg)
      acc += vg_density_quadrature(vg.kappa, d, std::sqrt(r2), quad_tol);
    return r2 * acc;
  }
  // At the origin the compound Poisson contribution vanishes with |x|^2.
  // For variance gamma, |x|^2 nu(x) -> 0 in d = 1 and -> 1/(pi kappa) in
  // d = 2 (from K_1(z) ~ 1/z); in d >= 3 it diverges.
  double acc = 0.0;
  for (const VarianceGammaPart& vg : spec.vg) {
    if (d == 1) continue;
    if (d == 2) {
      acc += 1.0 / (3.14159265358979323846 * vg.kappa);
      continue;
    }
    return std::numeric_limits<double>::infinity();
  }
  return acc;
}

double true_block_levy_density(const LevyModelSpec& spec, std::size_t block,
                               const double* xb, double quad_tol) {
  if (block >= spec.blocks.size())
    throw invalid_input_error("block index out of range");
  return true_levy_density(spec.blocks[block].model, xb, quad_tol);
}

double vg_density_bessel(double kappa, int dim, double r) {
  if (!(r > 0.0)) return std::numeric_limits<double>::infinity();
  return std::pow(kTwoPi, -0.5 * dim) * (2.0 / kappa) *
         std::pow(0.5 * kappa * r * r, -0.25 * dim) *
         boost::math::cyl_bessel_k(0.5 * dim, r * std::sqrt(2.0 / kappa));
}

std::complex<double> true_cf(const LevyModelSpec& spec, double delta, const double* u) {
  if (!(delta > 0.0)) throw invalid_input_error("sampling step must be positive");
  return std::exp(delta * psi_at(spec, u));
}

std::complex<double> true_psi_laplacian(const LevyModelSpec& spec, const double* u) {
  const int d = spec.dimension;
  std::complex<double> acc(0.0, 0.0);
  if (!spec.blocks.empty()) {
    for (const BlockPart& b : spec.blocks) {
      std::vector<double> ub(b.coords.size());
      for (std::size_t a = 0; a < b.coords.size(); ++a) ub[a] = u[b.coords[a]];
      acc += true_psi_laplacian(b.model, ub.data());
    }
    return acc;
  }
  for (const BrownianPart& bm : spec.brownian) {
    double tr = 0.0;
    for (int a = 0; a < d; ++a) tr += bm.sigma[std::size_t(a) * d + a];
    acc -= tr;
  }
  for (const CompoundPoissonPart& cp : spec.cpp_parts) {
    double mean_dot = 0.0, quad = 0.0;
    for (int r = 0; r < d; ++r) {
      mean_dot += cp.jump_mean[r] * u[r];
      for (int k = 0; k < d; ++k) quad += u[r] * cp.jump_cov[std::size_t(r) * d + k] * u[k];
    }
    const std::complex<double> cf_jump = std::exp(std::complex<double>(-0.5 * quad, mean_dot));
    // Laplacian of the jump characteristic function:
    //   d_j cf = cf * (i m_j - (C u)_j),  d_jj cf = cf * ((i m_j - (C u)_j)^2 - C_jj).
    std::complex<double> sum(0.0, 0.0);
    for (int j = 0; j < d; ++j) {
      double cu_j = 0.0;
      for (int k = 0; k < d; ++k) cu_j += cp.jump_cov[std::size_t(j) * d + k] * u[k];
      const std::complex<double> term(-cu_j, cp.jump_mean[j]);
      sum += term * term - cp.jump_cov[std::size_t(j) * d + j];
    }
    acc += cp.intensity * cf_jump * sum;
  }
  for (const VarianceGammaPart& vg : spec.vg) {
    const double usq = sqnorm(u, d);
    const double denom = 1.0 + 0.5 * vg.kappa * usq;
    acc -= (d + vg.kappa * usq * (0.5 * d - 1.0)) / (denom * denom);
  }
  return acc;
}

double true_trace_sigma(const LevyModelSpec& spec) {
  double tr = 0.0;
  if (!spec.blocks.empty()) {
    for (const BlockPart& b : spec.blocks) tr += true_trace_sigma(b.model);
    return tr;
  }
  const int d = spec.dimension;
  for (const BrownianPart& bm : spec.brownian)
    for (int a = 0; a < d; ++a) tr += bm.sigma[std::size_t(a) * d + a];
  return tr;
}

double sup_error(const DensityField& field, const LevyModelSpec& spec, const Region& region,
                 double quad_tol) {
  double sup = 0.0;
  for_region_nodes(field, region, [&](std::size_t i, const double* x) {
    const double diff =
        field.values[i] - truth_value(spec, field.quantity, x, field.grid.dim(), quad_tol);
    sup = std::max(sup, std::abs(diff));
  });
  return sup;
}

double l2_error(const DensityField& field, const LevyModelSpec& spec, const Region& region,
                double quad_tol) {
  double acc = 0.0;
  for_region_nodes(field, region, [&](std::size_t i, const double* x) {
    const double diff =
        field.values[i] - truth_value(spec, field.quantity, x, field.grid.dim(), quad_tol);
    acc += diff * diff;
  });
  return std::sqrt(acc * field.grid.cell_volume());
}

double l2_truth_norm(const DensityField& field, const LevyModelSpec& spec,
                     const Region& region, double quad_tol) {
  double acc = 0.0;
  for_region_nodes(field, region, [&](std::size_t, const double* x) {
    const double t = truth_value(spec, field.quantity, x, field.grid.dim(), quad_tol);
    acc += t * t;
  });
  return std::sqrt(acc * field.grid.cell_volume());
}

namespace {

//! Nested adaptive quadrature of f(x) |x|^2 nu(x) over the support box
//! of the bump, innermost axis last.
double integrate_axes(const LevyModelSpec& spec, const BumpSpec& f, std::vector<double>& x,
                      int axis, double tol) {
  const int d = spec.dimension;
  const double lo = f.center[axis] - f.width;
  const double hi = f.center[axis] + f.width;
  auto one = [&](double t) {
    x[axis] = t;
    if (axis + 1 == d) {
      const double fx = f.value(x.data(), d);
      if (fx == 0.0) return 0.0;
      return fx * true_xsq_levy_density(spec, x.data(), tol);
    }
    return integrate_axes(spec, f, x, axis + 1, tol);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(one, lo, hi, 8,
                                                                       0.1 * tol);
}

}  // namespace

double reference_xsq_functional(const LevyModelSpec& spec, const BumpSpec& f,
                                double quad_tol) {
  const int d = spec.dimension;
  if (int(f.center.size()) != d)
    throw invalid_input_error("bump center dimension does not match the model");
  if (spec.blocks.empty()) {
    std::vector<double> x(d);
    return integrate_axes(spec, f, x, 0, quad_tol);
  }
  // Product model: the jump measure is a sum of per-block measures on the
  // coordinate cross, so the functional splits into per-block slice
  // integrals with the off-block coordinates pinned to zero.
  double total = 0.0;
  for (const BlockPart& b : spec.blocks) {
    if (b.coords.size() != 1)
      throw invalid_input_error("functional references are implemented for 1-d blocks");
    const int axis = b.coords[0];
    std::vector<double> x(d, 0.0);
    auto slice = [&](double t) {
      x[axis] = t;
      const double fx = f.value(x.data(), d);
      if (fx == 0.0) return 0.0;
      return fx * t * t * true_levy_density(b.model, &t, quad_tol);
    };
    const double lo = f.center[axis] - f.width;
    const double hi = f.center[axis] + f.width;
    // Split at zero: |x|^2 nu can lose smoothness there (variance gamma).
    auto piece = [&](double a, double bnd) {
      if (!(a < bnd)) return 0.0;
      return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          slice, a, bnd, 12, 0.1 * quad_tol);
    };
    if (lo < 0.0 && hi > 0.0)
      total += piece(lo, 0.0) + piece(0.0, hi);
    else
      total += piece(lo, hi);
  }
  return total;
}

}  // namespace levyest
