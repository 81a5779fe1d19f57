#pragma once

#include <string>
#include <vector>

namespace levyest::internal {

//! Validates that m is a finite symmetric d x d matrix whose eigenvalues
//! are all >= -1e-12 * trace; throws invalid_model_error naming `what`.
void check_symmetric_psd(const std::vector<double>& m, int d, const std::string& what);

//! Factor A (d x d row-major) with A A^T = m, from the eigendecomposition
//! with negative eigenvalues clamped to zero.  Requires a PSD input.
std::vector<double> psd_factor(const std::vector<double>& m, int d);

}  // namespace levyest::internal
