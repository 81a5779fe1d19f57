#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "levyest/model.hpp"

namespace levyest::testing {

//! 1-D compound Poisson with standard normal jumps.
inline LevyModelSpec cpp_1d(double intensity) {
  LevyModelSpec spec;
  spec.dimension = 1;
  CompoundPoissonPart cp;
  cp.intensity = intensity;
  cp.jump_mean = {0.0};
  cp.jump_cov = {1.0};
  spec.cpp_parts.push_back(cp);
  return spec;
}

//! d-dimensional compound Poisson with standard normal jumps.
inline LevyModelSpec cpp_standard(int dim, double intensity) {
  LevyModelSpec spec;
  spec.dimension = dim;
  CompoundPoissonPart cp;
  cp.intensity = intensity;
  cp.jump_mean.assign(dim, 0.0);
  cp.jump_cov.assign(std::size_t(dim) * dim, 0.0);
  for (int a = 0; a < dim; ++a) cp.jump_cov[std::size_t(a) * dim + a] = 1.0;
  spec.cpp_parts.push_back(cp);
  return spec;
}

//! Two independent 1-D compound Poisson blocks on the two coordinates.
inline LevyModelSpec cpp_blocks_2d(double intensity) {
  LevyModelSpec spec;
  spec.dimension = 2;
  spec.blocks.push_back(BlockPart{{0}, cpp_1d(intensity)});
  spec.blocks.push_back(BlockPart{{1}, cpp_1d(intensity)});
  return spec;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

//! Standard error of the mean from the sample itself.
inline double se_of_mean(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  return std::sqrt(s2 / double(v.size() - 1) / double(v.size()));
}

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace levyest::testing
