#include "levyest/rng.hpp"

#include <cmath>

#include "levyest/errors.hpp"

namespace levyest::rng {

namespace {

std::uint64_t splitmix_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  // Step the splitmix state index+1 times from seed, like the reference
  // stream generator.  The combine must not be symmetric in (seed, index):
  // an xor of two hashes would collide across runs, e.g. (seed 1, index 1)
  // with (seed 2, index 0).
  return splitmix_mix(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

double Stream::uniform01() {
  // 53-bit mantissa, offset by half an ulp: values lie in (0, 1) strictly.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Stream::gamma_at_least_one(double shape) {
  // Marsaglia & Tsang (2000): X = d (1 + c N)^3 accepted against a
  // squeeze, exact for shape >= 1.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    const double xsq = x * x;
    if (u < 1.0 - 0.0331 * xsq * xsq) return d * v;
    if (std::log(u) < 0.5 * xsq + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Stream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale >= 0.0))
    throw invalid_input_error("gamma: need shape > 0 and scale >= 0");
  if (scale == 0.0) return 0.0;
  if (shape >= 1.0) return scale * gamma_at_least_one(shape);
  // Boost for shape < 1, in log space: tiny shapes put most mass at
  // magnitudes where U^{1/shape} would round straight to zero.
  const double g = gamma_at_least_one(shape + 1.0);
  const double log_boost = std::log(uniform01()) / shape;
  return scale * std::exp(std::log(g) + log_boost);
}

std::uint64_t Stream::poisson(double mean) {
  if (!(mean >= 0.0)) throw invalid_input_error("poisson: need mean >= 0");
  if (mean > 1e9) throw capacity_error("poisson: mean above 1e9 jumps per step");
  std::uint64_t n = 0;
  double acc = -std::log(uniform01());
  while (acc <= mean) {
    ++n;
    acc -= std::log(uniform01());
  }
  return n;
}

}  // namespace levyest::rng
