#pragma once

#include <complex>

#include "levyest/field.hpp"
#include "levyest/model.hpp"
#include "levyest/regions.hpp"

namespace levyest {

//! Closed-form and quadrature references for the simulation models,
//! computed independently of the estimation pipeline.

//! Jump density at x.  Compound Poisson parts contribute
//! intensity * N(jump_mean, jump_cov)(x) (nonsingular covariance
//! required); a variance gamma part contributes the subordination
//! integral evaluated by adaptive quadrature to relative tolerance
//! quad_tol.  Gaussian parts carry no jumps.  Block models charge the
//! coordinate cross and have no density on R^d: use
//! true_block_levy_density for the per-block factors.
double true_levy_density(const LevyModelSpec& spec, const double* x, double quad_tol = 1e-10);

//! |x|^2 * true_levy_density(x): the surface the estimator targets.
double true_xsq_levy_density(const LevyModelSpec& spec, const double* x,
                             double quad_tol = 1e-10);

//! Jump density of block b of a product model, in the block's own
//! (lower-dimensional) coordinates.
double true_block_levy_density(const LevyModelSpec& spec, std::size_t block,
                               const double* xb, double quad_tol = 1e-10);

//! Closed Bessel-K form of the variance gamma jump density at radius
//! r > 0: an independent route used to cross-check the quadrature one.
double vg_density_bessel(double kappa, int dim, double r);

//! Characteristic function of one increment observed at step delta.
std::complex<double> true_cf(const LevyModelSpec& spec, double delta, const double* u);

//! Laplacian of the characteristic exponent; complex when a jump law is
//! asymmetric.  Equals -tr(Sigma) minus the Fourier transform of
//! |x|^2 nu at u.
std::complex<double> true_psi_laplacian(const LevyModelSpec& spec, const double* u);

//! Trace of the Gaussian covariance (summed across blocks).
double true_trace_sigma(const LevyModelSpec& spec);

//! Metrics of a field against the model truth over the region's grid
//! nodes.  field.quantity picks the target ("nu" or "xsq_nu"); undefined
//! nodes are skipped.
double sup_error(const DensityField& field, const LevyModelSpec& spec, const Region& region,
                 double quad_tol = 1e-10);
double l2_error(const DensityField& field, const LevyModelSpec& spec, const Region& region,
                double quad_tol = 1e-10);
//! Rectangle-rule L2 norm of the truth on the same nodes, for relative errors.
double l2_truth_norm(const DensityField& field, const LevyModelSpec& spec,
                     const Region& region, double quad_tol = 1e-10);

//! int f(x) |x|^2 nu(dx) against the reference measure: adaptive 1-D
//! quadratures along the coordinate axes for product models with 1-D
//! blocks, tensor Gauss-Legendre over the bump support otherwise.
double reference_xsq_functional(const LevyModelSpec& spec, const BumpSpec& f,
                                double quad_tol = 1e-10);

}  // namespace levyest
