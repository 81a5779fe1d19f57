#pragma once

#include "levyest/field.hpp"

namespace levyest {

enum class KernelKind { flat_top_radial, flat_top_product };

//! Smoothing kernel defined through its Fourier transform FK: identically
//! 1 for |u| <= c, 0 for |u| >= 1, joined on the shell by the C^inf taper
//!   exp( -b exp(-b / (|u|-c)^2) / (|u|-1)^2 ),
//! which decreases monotonically in |u|.  The flat plateau makes every
//! kernel moment of order >= 1 vanish.  The product variant applies the
//! 1-D profile coordinate-wise.  Scaling: FK_h(u) = FK(h u).
struct KernelSpec {
  KernelKind kind = KernelKind::flat_top_radial;
  double b = 1.0;
  double c = 1.0 / 50.0;
  double bandwidth = 0.0;

  void validate() const;
};

//! The 1-D taper profile at radius r >= 0.
double flat_top_profile(double r, double b, double c);

//! FK at an arbitrary point (ignores the bandwidth).
double flat_top_fk(const KernelSpec& spec, const double* u, int dim);

//! Samples FK(h u) on the grid.  The grid must cover the support box
//! [-1/h, 1/h]^d, otherwise a configuration error is raised.
ComplexField fk_on_grid(const KernelSpec& spec, const FreqGrid& grid);

enum class WeightShape { indicator_box, smooth_bump };

//! Unit-mass weight concentrating on [-1/h, 1/h]^d as h grows:
//! W_h(u) = h^d W(h u) with W either the normalised box indicator 2^{-d}
//! or a normalised product of C^inf bumps exp(-1/(1-t^2)).
struct WeightSpec {
  WeightShape shape = WeightShape::indicator_box;
  double bandwidth = 0.0;

  void validate() const;
};

RealFreqField weight_on_grid(const WeightSpec& spec, const FreqGrid& grid);

}  // namespace levyest
