#include "levyest/sim.hpp"

#include <cmath>
#include <limits>

#include "internal/linalg.hpp"
#include "levyest/errors.hpp"
#include "levyest/rng.hpp"

namespace levyest {

namespace {

constexpr std::size_t kMaxValues = std::size_t{1} << 33;

IncrementSample make_sample(int dim, double delta, std::size_t n, std::uint64_t seed) {
  if (dim < 1) throw invalid_model_error("simulate: dimension must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw config_error("simulate: delta must be positive and finite");
  if (n == 0) throw config_error("simulate: need at least one increment");
  if (n > kMaxValues / static_cast<std::size_t>(dim))
    throw capacity_error("simulate: sample would exceed capacity");
  IncrementSample s;
  s.dim = dim;
  s.delta = delta;
  s.seed = seed;
  s.values.assign(n * static_cast<std::size_t>(dim), 0.0);
  return s;
}

// A (d x d row-major) applied to z, accumulated into out.
void add_transformed(const std::vector<double>& a, const double* z, int d, double* out) {
  for (int i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += a[static_cast<std::size_t>(i) * d + j] * z[j];
    out[i] += acc;
  }
}

void add_brownian(const BrownianPart& part, double delta, std::size_t n, rng::Stream& stream,
                  IncrementSample& s) {
  const int d = s.dim;
  const std::vector<double> factor = internal::psd_factor(part.sigma, d);
  const double root_delta = std::sqrt(delta);
  std::vector<double> z(static_cast<std::size_t>(d));
  std::vector<double> scaled(factor.size());
  for (std::size_t i = 0; i < factor.size(); ++i) scaled[i] = root_delta * factor[i];
  for (std::size_t k = 0; k < n; ++k) {
    double* row = s.values.data() + k * static_cast<std::size_t>(d);
    for (int i = 0; i < d; ++i) {
      z[static_cast<std::size_t>(i)] = stream.normal();
      row[i] += delta * part.drift[static_cast<std::size_t>(i)];
    }
    add_transformed(scaled, z.data(), d, row);
  }
}

void add_compound_poisson(const CompoundPoissonPart& part, double delta, std::size_t n,
                          rng::Stream& stream, IncrementSample& s) {
  const int d = s.dim;
  const std::vector<double> factor = internal::psd_factor(part.jump_cov, d);
  const double mean_jumps = part.intensity * delta;
  std::vector<double> z(static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < n; ++k) {
    double* row = s.values.data() + k * static_cast<std::size_t>(d);
    const std::uint64_t jumps = stream.poisson(mean_jumps);
    for (std::uint64_t j = 0; j < jumps; ++j) {
      for (int i = 0; i < d; ++i) {
        z[static_cast<std::size_t>(i)] = stream.normal();
        row[i] += part.jump_mean[static_cast<std::size_t>(i)];
      }
      add_transformed(factor, z.data(), d, row);
    }
  }
}

void add_variance_gamma(const VarianceGammaPart& part, double delta, std::size_t n,
                        rng::Stream& stream, IncrementSample& s) {
  const int d = s.dim;
  const double shape = delta / part.kappa;
  for (std::size_t k = 0; k < n; ++k) {
    double* row = s.values.data() + k * static_cast<std::size_t>(d);
    const double dg = stream.gamma(shape, part.kappa);
    const double root = std::sqrt(dg);
    for (int i = 0; i < d; ++i) row[i] += root * stream.normal();
  }
}

}  // namespace

IncrementSample simulate_brownian(const std::vector<double>& sigma,
                                  const std::vector<double>& drift, double delta,
                                  std::size_t n, std::uint64_t seed) {
  const int d = static_cast<int>(drift.size());
  LevyModelSpec probe;
  probe.dimension = d;
  probe.brownian.push_back(BrownianPart{sigma, drift});
  probe.validate();
  IncrementSample s = make_sample(d, delta, n, seed);
  rng::Stream stream(seed);
  add_brownian(probe.brownian[0], delta, n, stream, s);
  return s;
}

IncrementSample simulate_compound_poisson(double intensity,
                                          const std::vector<double>& jump_mean,
                                          const std::vector<double>& jump_cov, double delta,
                                          std::size_t n, std::uint64_t seed) {
  const int d = static_cast<int>(jump_mean.size());
  LevyModelSpec probe;
  probe.dimension = d;
  probe.cpp_parts.push_back(CompoundPoissonPart{intensity, jump_mean, jump_cov});
  probe.validate();
  IncrementSample s = make_sample(d, delta, n, seed);
  rng::Stream stream(seed);
  add_compound_poisson(probe.cpp_parts[0], delta, n, stream, s);
  return s;
}

IncrementSample simulate_variance_gamma(double kappa, int dim, double delta, std::size_t n,
                                        std::uint64_t seed) {
  LevyModelSpec probe;
  probe.dimension = dim;
  probe.vg.push_back(VarianceGammaPart{kappa});
  probe.validate();
  IncrementSample s = make_sample(dim, delta, n, seed);
  rng::Stream stream(seed);
  add_variance_gamma(probe.vg[0], delta, n, stream, s);
  return s;
}

IncrementSample simulate_blocks(const LevyModelSpec& spec, double delta, std::size_t n,
                                std::uint64_t seed) {
  spec.validate();
  if (spec.blocks.empty()) throw invalid_model_error("simulate_blocks: model has no blocks");
  IncrementSample s = make_sample(spec.dimension, delta, n, seed);
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const BlockPart& block = spec.blocks[b];
    const IncrementSample sub =
        simulate_model(block.model, delta, n, rng::derive_stream(seed, b));
    for (std::size_t k = 0; k < n; ++k) {
      const double* src = sub.values.data() + k * block.coords.size();
      double* dst = s.values.data() + k * static_cast<std::size_t>(s.dim);
      for (std::size_t i = 0; i < block.coords.size(); ++i)
        dst[block.coords[i]] = src[i];
    }
  }
  return s;
}

IncrementSample simulate_model(const LevyModelSpec& spec, double delta, std::size_t n,
                               std::uint64_t seed) {
  spec.validate();
  if (!spec.blocks.empty()) return simulate_blocks(spec, delta, n, seed);
  IncrementSample s = make_sample(spec.dimension, delta, n, seed);
  std::uint64_t ordinal = 0;
  if (!spec.brownian.empty()) {
    rng::Stream stream(rng::derive_stream(seed, ordinal));
    add_brownian(spec.brownian[0], delta, n, stream, s);
  }
  ordinal = 1;
  for (const auto& part : spec.cpp_parts) {
    rng::Stream stream(rng::derive_stream(seed, ordinal++));
    add_compound_poisson(part, delta, n, stream, s);
  }
  if (!spec.vg.empty()) {
    rng::Stream stream(rng::derive_stream(seed, spec.cpp_parts.size() + 1));
    add_variance_gamma(spec.vg[0], delta, n, stream, s);
  }
  return s;
}

}  // namespace levyest
