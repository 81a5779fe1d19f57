#pragma once

#include <cstdint>
#include <random>

namespace levyest::rng {

//! Derives the seed of an independent substream.  The mixing is
//! splitmix64-style, so consecutive (seed, index) pairs land far apart in
//! the engine's state space.  Used to give every model component and
//! every coordinate block its own stream.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

//! Deterministic sampler stack on top of std::mt19937_64.  The engine's
//! output sequence is fixed by the standard and every distribution below
//! is implemented here, so a given seed yields the identical sample on
//! every platform and at every optimisation level.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  //! Uniform draw strictly inside (0, 1); safe to pass to log().
  double uniform01();

  //! Standard normal via the Marsaglia polar method (pairs cached).
  double normal();

  //! Gamma(shape, scale) by Marsaglia-Tsang squeeze-rejection.  Exact for
  //! every shape > 0; shapes below 1 use the power boost
  //! Gamma(a) = Gamma(a+1) * U^{1/a}, evaluated in log space so that the
  //! heavy mass near 0 keeps its full floating point gradation.
  double gamma(double shape, double scale);

  //! Poisson count with the given mean, by summing unit exponentials.
  //! Exact; cost is O(mean), and means above 1e9 raise capacity_error.
  std::uint64_t poisson(double mean);

 private:
  double gamma_at_least_one(double shape);

  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace levyest::rng
