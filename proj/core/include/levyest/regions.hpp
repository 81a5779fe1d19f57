#pragma once

#include <vector>

namespace levyest {

//! Evaluation region for metrics and functionals.
struct Region {
  enum class Kind { everywhere, annulus, box };
  Kind kind = Kind::everywhere;
  double r_min = 0.0, r_max = 0.0;  // annulus r_min <= |x| <= r_max
  std::vector<double> lo, hi;       // box, per axis

  static Region all() { return {}; }
  static Region make_annulus(double r_min, double r_max);
  static Region make_box(std::vector<double> lo, std::vector<double> hi);

  bool contains(const double* x, int dim) const;
};

//! C^inf test function: t -> exp(-1/(1-t^2)) shaped, either radially
//! (support = closed ball of the given radius around center) or as a
//! product over coordinates (support = box center +- width).
struct BumpSpec {
  bool radial = true;
  std::vector<double> center;
  double width = 1.0;

  double value(const double* x, int dim) const;
  //! True when the support of the bump lies inside the region.
  bool supported_inside(const Region& region, int dim) const;
};

}  // namespace levyest
