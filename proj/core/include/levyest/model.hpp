#pragma once

#include <string>
#include <vector>

namespace levyest {

//! Gaussian component: covariance sigma (d x d row-major, symmetric PSD,
//! possibly singular or zero) and drift gamma.
struct BrownianPart {
  std::vector<double> sigma;
  std::vector<double> drift;
};

//! Compound Poisson component with Gaussian jump law N(jump_mean, jump_cov).
struct CompoundPoissonPart {
  double intensity = 0.0;
  std::vector<double> jump_mean;
  std::vector<double> jump_cov;
};

//! Variance gamma component: a standard Brownian motion subordinated by a
//! gamma process with unit mean rate and variance kappa per unit time.
struct VarianceGammaPart {
  double kappa = 1.0;
};

struct BlockPart;

//! Additive model built from independent components, or a product of
//! independent lower-dimensional sub-models living on disjoint coordinate
//! blocks.  When blocks is non-empty the top-level parts must be absent:
//! the law is then fully described by the per-block sub-models.
struct LevyModelSpec {
  int dimension = 0;
  std::vector<BrownianPart> brownian;        // at most one
  std::vector<CompoundPoissonPart> cpp_parts;
  std::vector<VarianceGammaPart> vg;         // at most one
  std::vector<BlockPart> blocks;

  //! Throws invalid_model_error on inconsistent sizes, non-PSD
  //! covariances, bad intensities, or a block list that is not a
  //! partition of the coordinate set.
  void validate() const;

  //! JSON round trip; parse(serialize(s)) reproduces s exactly.  Block
  //! coordinate indices are 0-based in the file format.
  static LevyModelSpec from_json_text(const std::string& text);
  std::string to_json_text(int indent = -1) const;
};

//! One factor of a product model: the coordinates it owns (0-based,
//! disjoint from all other blocks) and the sub-model living on them.
struct BlockPart {
  std::vector<int> coords;
  LevyModelSpec model;
};

}  // namespace levyest
