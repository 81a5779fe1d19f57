#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "levyest/model.hpp"

namespace levyest {

//! n equidistant increments of a d-dimensional process observed at step
//! delta, stored row-major (increment index fastest on rows).
struct IncrementSample {
  int dim = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // n x dim

  std::size_t count() const {
    return dim > 0 ? values.size() / static_cast<std::size_t>(dim) : 0;
  }
  double horizon() const { return delta * static_cast<double>(count()); }
  double value(std::size_t k, int axis) const {
    return values[k * static_cast<std::size_t>(dim) + static_cast<std::size_t>(axis)];
  }
};

//! Gaussian increments N(delta * drift, delta * sigma).
IncrementSample simulate_brownian(const std::vector<double>& sigma,
                                  const std::vector<double>& drift, double delta,
                                  std::size_t n, std::uint64_t seed);

//! Compound Poisson increments: per step, Poisson(intensity * delta) many
//! N(jump_mean, jump_cov) jumps are summed.  No drift compensation is
//! applied: the increment is exactly the sum of the jumps.
IncrementSample simulate_compound_poisson(double intensity,
                                          const std::vector<double>& jump_mean,
                                          const std::vector<double>& jump_cov, double delta,
                                          std::size_t n, std::uint64_t seed);

//! Variance gamma increments: dG ~ Gamma(delta/kappa, kappa) and
//! Y = sqrt(dG) Z with Z standard normal, one subordinator draw shared by
//! all coordinates of an increment.
IncrementSample simulate_variance_gamma(double kappa, int dim, double delta, std::size_t n,
                                        std::uint64_t seed);

//! Product model: every block simulates its sub-model with the stream
//! derive_stream(seed, block index) and owns its coordinates exclusively.
IncrementSample simulate_blocks(const LevyModelSpec& spec, double delta, std::size_t n,
                                std::uint64_t seed);

//! General entry point.  Additive components are simulated independently
//! with streams derive_stream(seed, ordinal) where ordinal 0 is the
//! brownian part, 1..#cpp the compound Poisson parts in order, #cpp+1 the
//! variance gamma part; block models delegate to simulate_blocks.
IncrementSample simulate_model(const LevyModelSpec& spec, double delta, std::size_t n,
                               std::uint64_t seed);

}  // namespace levyest
