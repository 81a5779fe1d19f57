#include "levyest/kernels.hpp"

#include <cmath>

#include "levyest/errors.hpp"

namespace levyest {

namespace {

void check_support_covered(const FreqGrid& grid, double bandwidth, const char* what) {
  const double support = 1.0 / bandwidth;
  for (int a = 0; a < grid.dim(); ++a) {
    if (grid.u_max(a) < support * (1.0 - 1e-12))
      throw config_error(std::string(what) + ": grid does not cover the support box [-" +
                         std::to_string(support) + ", " + std::to_string(support) + "]");
  }
}

double bump(double t) {
  const double s = 1.0 - t * t;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

// int_{-1}^{1} exp(-1/(1-t^2)) dt.  All derivatives of the integrand
// vanish at the endpoints, so the composite trapezoid rule converges
// faster than any power of the step; 1 << 14 panels is far past machine
// precision.
double bump_mass() {
  static const double mass = [] {
    const int n = 1 << 14;
    const double hstep = 2.0 / n;
    double acc = 0.0;
    for (int i = 1; i < n; ++i) acc += bump(-1.0 + i * hstep);
    return acc * hstep;
  }();
  return mass;
}

}  // namespace

void KernelSpec::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) throw config_error("kernel: b must be positive");
  if (!(c > 0.0) || !(c < 1.0)) throw config_error("kernel: need 0 < c < 1");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw config_error("kernel: bandwidth must be positive");
}

double flat_top_profile(double r, double b, double c) {
  if (r <= c) return 1.0;
  if (r >= 1.0) return 0.0;
  const double gap = r - c;
  const double taper = b * std::exp(-b / (gap * gap));
  const double edge = (r - 1.0) * (r - 1.0);
  return std::exp(-taper / edge);
}

double flat_top_fk(const KernelSpec& spec, const double* u, int dim) {
  if (spec.kind == KernelKind::flat_top_radial) {
    double sq = 0.0;
    for (int a = 0; a < dim; ++a) sq += u[a] * u[a];
    return flat_top_profile(std::sqrt(sq), spec.b, spec.c);
  }
  double prod = 1.0;
  for (int a = 0; a < dim; ++a) {
    prod *= flat_top_profile(std::fabs(u[a]), spec.b, spec.c);
    if (prod == 0.0) break;
  }
  return prod;
}

ComplexField fk_on_grid(const KernelSpec& spec, const FreqGrid& grid) {
  spec.validate();
  check_support_covered(grid, spec.bandwidth, "fk_on_grid");
  ComplexField f{grid, {}, {}};
  f.values.resize(grid.size());
  std::vector<double> u(static_cast<std::size_t>(grid.dim()));
  std::vector<double> hu(static_cast<std::size_t>(grid.dim()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node_point(i, u.data());
    for (int a = 0; a < grid.dim(); ++a)
      hu[static_cast<std::size_t>(a)] = spec.bandwidth * u[static_cast<std::size_t>(a)];
    f.values[i] = {flat_top_fk(spec, hu.data(), grid.dim()), 0.0};
  }
  return f;
}

void WeightSpec::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw config_error("weight: bandwidth must be positive");
}

RealFreqField weight_on_grid(const WeightSpec& spec, const FreqGrid& grid) {
  spec.validate();
  check_support_covered(grid, spec.bandwidth, "weight_on_grid");
  const int d = grid.dim();
  const double h = spec.bandwidth;
  double hd = 1.0;
  for (int a = 0; a < d; ++a) hd *= h;

  RealFreqField f{grid, {}};
  f.values.resize(grid.size());
  std::vector<double> u(static_cast<std::size_t>(d));
  if (spec.shape == WeightShape::indicator_box) {
    const double level = hd * std::pow(0.5, d);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node_point(i, u.data());
      bool inside = true;
      for (int a = 0; a < d; ++a) inside = inside && std::fabs(h * u[static_cast<std::size_t>(a)]) <= 1.0;
      f.values[i] = inside ? level : 0.0;
    }
  } else {
    const double norm = 1.0 / bump_mass();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node_point(i, u.data());
      double v = hd;
      for (int a = 0; a < d && v != 0.0; ++a)
        v *= norm * bump(h * u[static_cast<std::size_t>(a)]);
      f.values[i] = v;
    }
  }
  return f;
}

}  // namespace levyest
