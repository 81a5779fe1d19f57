#include "levyest/estimator.hpp"

#include <cmath>
#include <numbers>

#include "levyest/errors.hpp"
#include "levyest/fourier.hpp"
#include "levyest/spectral.hpp"

namespace levyest {

namespace {

struct InversionOutput {
  DensityField xsq_raw;
  double imag_residual = 0.0;
};

// Shared tail of the plain and the trace-corrected estimator.  Keeping
// one code path makes "corrected with a zero trace" bit-identical to the
// plain estimate by construction.
InversionOutput invert_smoothed(const PsiLaplacianHat& psi, const ComplexField& fk,
                                double trace_shift) {
  ComplexField integrand{psi.field.grid, {}, {}};
  integrand.values.resize(psi.field.values.size());
  for (std::size_t i = 0; i < integrand.values.size(); ++i)
    integrand.values[i] = fk.values[i].real() * (psi.field.values[i] + trace_shift);

  const ComplexSpaceField inv = inverse_fourier_fft(integrand);
  double sup_re = 0.0, sup_im = 0.0;
  InversionOutput out;
  out.xsq_raw.grid = inv.grid;
  out.xsq_raw.quantity = "xsq_nu";
  out.xsq_raw.values.resize(inv.values.size());
  for (std::size_t i = 0; i < inv.values.size(); ++i) {
    const std::complex<double> v = inv.values[i];
    out.xsq_raw.values[i] = -v.real();
    sup_re = std::max(sup_re, std::fabs(v.real()));
    sup_im = std::max(sup_im, std::fabs(v.imag()));
  }
  out.imag_residual = sup_im / std::max(1.0, sup_re);
  return out;
}

DensityField divide_by_xsq(const DensityField& xsq, double origin_exclusion) {
  const SpaceGrid& g = xsq.grid;
  double eps = origin_exclusion;
  if (eps < 0.0) {
    eps = 0.0;
    for (int a = 0; a < g.dim(); ++a) eps = std::max(eps, g.spacing(a));
  }
  DensityField nu;
  nu.grid = g;
  nu.quantity = "nu";
  nu.values.assign(g.size(), 0.0);
  nu.invalid.assign(g.size(), 0);
  std::vector<double> x(static_cast<std::size_t>(g.dim()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node_point(i, x.data());
    double sq = 0.0;
    for (int a = 0; a < g.dim(); ++a) sq += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
    // The origin never carries a density value; by default its whole
    // one-cell neighbourhood is excluded as well.
    if (sq <= eps * eps) {
      nu.invalid[i] = 1;
      continue;
    }
    nu.values[i] = xsq.values[i] / sq;
  }
  return nu;
}

DensityField positive_part(const DensityField& f) {
  DensityField out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    if (!(out.values[i] > 0.0)) out.values[i] = 0.0;
  return out;
}

EstimateResult run_pipeline(const IncrementSample& sample, const EstimatorConfig& config,
                            bool corrected, std::optional<double> trace_override) {
  config.validate();
  const FreqGrid grid = config.make_grid(sample.dim);
  const ComplexField fk = fk_on_grid(config.kernel, grid);
  const PsiLaplacianHat psi = psi_laplacian_hat(sample, grid);

  EstimateResult result;
  result.diagnostics.bandwidth = config.kernel.bandwidth;
  result.diagnostics.masked_fraction = psi.masked_fraction;
  std::size_t support_nodes = 0, masked_support = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (fk.values[i].real() > 0.0) {
      ++support_nodes;
      if (psi.field.masked(i)) ++masked_support;
    }
  }
  result.diagnostics.masked_fraction_support =
      support_nodes ? static_cast<double>(masked_support) / static_cast<double>(support_nodes)
                    : 0.0;

  double shift = 0.0;
  if (corrected) {
    if (trace_override.has_value()) {
      shift = *trace_override;
      result.diagnostics.trace_sigma = shift;
    } else {
      const TraceEstimate trace = estimate_trace_sigma(sample, config);
      shift = trace.value;
      result.diagnostics.trace_sigma = trace.value;
      result.diagnostics.trace_negative = trace.negative;
    }
  }

  const InversionOutput inv = invert_smoothed(psi, fk, shift);
  result.diagnostics.imag_residual = inv.imag_residual;
  result.xsq_nu_raw = inv.xsq_raw;
  result.nu_raw = divide_by_xsq(inv.xsq_raw, config.origin_exclusion);
  if (config.post_process == PostProcess::real_positive_part) {
    result.xsq_nu_hat = positive_part(result.xsq_nu_raw);
    result.nu_hat = positive_part(result.nu_raw);
  } else {
    result.xsq_nu_hat = result.xsq_nu_raw;
    result.nu_hat = result.nu_raw;
  }
  return result;
}

}  // namespace

void EstimatorConfig::validate() const {
  kernel.validate();
  if (weight.bandwidth > 0.0) weight.validate();
  if (grid_points < 2 || grid_points % 2 != 0)
    throw config_error("estimator: grid_points must be even and >= 2");
  if (grid_u_max > 0.0 && grid_u_max < (1.0 - 1e-12) / kernel.bandwidth)
    throw config_error("estimator: grid_u_max does not cover the kernel support 1/h");
}

FreqGrid EstimatorConfig::make_grid(int dim) const {
  const double umax = grid_u_max > 0.0 ? grid_u_max : 1.0 / kernel.bandwidth;
  return FreqGrid(dim, grid_points, umax);
}

EstimateResult estimate_levy_density(const IncrementSample& sample,
                                     const EstimatorConfig& config) {
  return run_pipeline(sample, config, false, std::nullopt);
}

TraceEstimate estimate_trace_sigma(const IncrementSample& sample,
                                   const EstimatorConfig& config) {
  config.kernel.validate();
  WeightSpec w = config.weight;
  w.bandwidth = config.weight_bandwidth();
  w.validate();
  // Grid sized to the weight support; the weight needs nothing beyond
  // [-1/h_w, 1/h_w]^d and the node count follows the estimator setting.
  const FreqGrid grid(sample.dim, config.grid_points, 1.0 / w.bandwidth);
  const RealFreqField weight = weight_on_grid(w, grid);
  const PsiLaplacianHat psi = psi_laplacian_hat(sample, grid);
  const double cell = grid.cell_volume();
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double term = weight.values[i] * psi.field.values[i].real();
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  TraceEstimate out;
  out.value = -sum * cell;
  out.negative = out.value < 0.0;
  return out;
}

EstimateResult estimate_xsq_nu_corrected(const IncrementSample& sample,
                                         const EstimatorConfig& config,
                                         std::optional<double> trace_override) {
  return run_pipeline(sample, config, true, trace_override);
}

double bandwidth_mild(double s, double alpha, int dim, double delta, double T) {
  if (!(s >= 0.0) || !(alpha >= 0.0) || dim < 1 || !(delta > 0.0))
    throw config_error("bandwidth_mild: bad parameters");
  if (!(T > std::numbers::e))
    throw config_error("bandwidth_mild: requires horizon T > e");
  return std::pow(std::log(T) / T, 1.0 / (2.0 * s + 2.0 * delta * alpha + dim));
}

double bandwidth_severe(double alpha, double r, double delta, double T) {
  if (!(alpha > 0.0) || !(r > 0.0) || !(delta > 0.0))
    throw config_error("bandwidth_severe: bad parameters");
  if (!(T > 1.0)) throw config_error("bandwidth_severe: requires horizon T > 1");
  return std::pow(std::log(T) / (4.0 * r * delta), -1.0 / alpha);
}

double bandwidth_sim_default(double T) {
  if (!(T > 0.0)) throw config_error("bandwidth_sim_default: requires horizon T > 0");
  return 4.0 / std::sqrt(T);
}

double BandwidthSpec::resolve(int dim, double delta, double T) const {
  switch (rule) {
    case BandwidthRule::explicit_h:
      if (!(h > 0.0)) throw config_error("bandwidth: explicit h must be positive");
      return h;
    case BandwidthRule::sim_default:
      return bandwidth_sim_default(T);
    case BandwidthRule::mild:
      return bandwidth_mild(s, alpha, dim, delta, T);
    case BandwidthRule::severe:
      return bandwidth_severe(alpha, r, delta, T);
  }
  throw config_error("bandwidth: unknown rule");
}

double integrate_against_test_function(const DensityField& field, const BumpSpec& f,
                                       const Region& region) {
  const SpaceGrid& g = field.grid;
  if (!f.supported_inside(region, g.dim()))
    throw config_error("integrate_against_test_function: bump support leaves the region");
  const double cell = g.cell_volume();
  std::vector<double> x(static_cast<std::size_t>(g.dim()));
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (field.undefined(i)) continue;
    g.node_point(i, x.data());
    if (!region.contains(x.data(), g.dim())) continue;
    const double term = f.value(x.data(), g.dim()) * field.values[i];
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum * cell;
}

}  // namespace levyest
