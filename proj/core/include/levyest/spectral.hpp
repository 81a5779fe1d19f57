#pragma once

#include <vector>

#include "levyest/field.hpp"
#include "levyest/sim.hpp"

namespace levyest {

//! Empirical characteristic function phi_hat(u) = (1/n) sum_k e^{i<u,Y_k>}
//! evaluated by exact direct summation on every grid node.  Per node the
//! sum runs in increment order with compensated accumulation, so the
//! result is bit-identical no matter how many threads participate.
ComplexField ecf(const IncrementSample& sample, const FreqGrid& grid);

struct EcfWithDerivatives {
  ComplexField value;
  std::vector<ComplexField> gradient;  // dim() fields, d/du_j
  ComplexField laplacian;
};

//! Same pass as ecf() but also accumulates the weighted sums
//! d_j phi_hat = (1/n) sum_k i Y_kj e^{i<u,Y_k>} and
//! lap phi_hat = -(1/n) sum_k |Y_k|^2 e^{i<u,Y_k>}.
EcfWithDerivatives ecf_derivatives(const IncrementSample& sample, const FreqGrid& grid);

struct PsiLaplacianHat {
  ComplexField field;           // mask = 1 where the value was suppressed
  double masked_fraction = 0.0; // share of suppressed nodes over the grid
};

//! Plug-in estimate of the Laplacian of the characteristic exponent,
//!   [phi_hat lap phi_hat - (grad phi_hat)^2] / (delta phi_hat^2),
//! where (grad phi)^2 = sum_j (d_j phi)^2 are complex squares.  Nodes with
//! |phi_hat(u)| < (n delta)^{-1/2} are set to 0 and masked.
PsiLaplacianHat psi_laplacian_hat(const IncrementSample& sample, const FreqGrid& grid);

//! log(e + r)^{-(1+chi)/2}: the slowly decaying weight under which the
//! uniform ECF error is O(n^{-1/2}).
double soft_log_weight(double r, double chi);

}  // namespace levyest
