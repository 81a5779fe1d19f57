#include "levyest/regions.hpp"

#include <cmath>

#include "levyest/errors.hpp"

namespace levyest {

Region Region::make_annulus(double r_min, double r_max) {
  if (!(r_min >= 0.0) || !(r_max > r_min))
    throw config_error("region: need 0 <= r_min < r_max");
  Region r;
  r.kind = Kind::annulus;
  r.r_min = r_min;
  r.r_max = r_max;
  return r;
}

Region Region::make_box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size() || lo.empty())
    throw config_error("region: box bounds must have matching sizes");
  for (std::size_t a = 0; a < lo.size(); ++a)
    if (!(lo[a] < hi[a])) throw config_error("region: box bounds must be ordered");
  Region r;
  r.kind = Kind::box;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  return r;
}

bool Region::contains(const double* x, int dim) const {
  switch (kind) {
    case Kind::everywhere:
      return true;
    case Kind::annulus: {
      double sq = 0.0;
      for (int a = 0; a < dim; ++a) sq += x[a] * x[a];
      const double r = std::sqrt(sq);
      return r >= r_min && r <= r_max;
    }
    case Kind::box: {
      if (lo.size() != static_cast<std::size_t>(dim))
        throw invalid_input_error("region: box dimension mismatch");
      for (int a = 0; a < dim; ++a) {
        const std::size_t i = static_cast<std::size_t>(a);
        if (x[a] < lo[i] || x[a] > hi[i]) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

double bump1(double t) {
  const double s = 1.0 - t * t;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

}  // namespace

double BumpSpec::value(const double* x, int dim) const {
  if (center.size() != static_cast<std::size_t>(dim))
    throw invalid_input_error("bump: center dimension mismatch");
  if (!(width > 0.0)) throw config_error("bump: width must be positive");
  if (radial) {
    double sq = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double dxa = x[a] - center[static_cast<std::size_t>(a)];
      sq += dxa * dxa;
    }
    return bump1(std::sqrt(sq) / width);
  }
  double prod = 1.0;
  for (int a = 0; a < dim && prod != 0.0; ++a)
    prod *= bump1((x[a] - center[static_cast<std::size_t>(a)]) / width);
  return prod;
}

bool BumpSpec::supported_inside(const Region& region, int dim) const {
  if (center.size() != static_cast<std::size_t>(dim))
    throw invalid_input_error("bump: center dimension mismatch");
  // Support is the ball (radial) or box (product) of radius `width`
  // around the center; compare against the region conservatively via the
  // min/max of |x| over the support box.
  switch (region.kind) {
    case Region::Kind::everywhere:
      return true;
    case Region::Kind::annulus: {
      double min_sq = 0.0, max_sq = 0.0;
      if (radial) {
        double csq = 0.0;
        for (int a = 0; a < dim; ++a) csq += center[static_cast<std::size_t>(a)] *
                                             center[static_cast<std::size_t>(a)];
        const double cr = std::sqrt(csq);
        const double lo = cr > width ? cr - width : 0.0;
        min_sq = lo * lo;
        max_sq = (cr + width) * (cr + width);
      } else {
        for (int a = 0; a < dim; ++a) {
          const double c = center[static_cast<std::size_t>(a)];
          const double lo = c - width, hi = c + width;
          const double near = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::fabs(lo), std::fabs(hi));
          const double far = std::max(std::fabs(lo), std::fabs(hi));
          min_sq += near * near;
          max_sq += far * far;
        }
      }
      return std::sqrt(min_sq) >= region.r_min && std::sqrt(max_sq) <= region.r_max;
    }
    case Region::Kind::box: {
      if (region.lo.size() != static_cast<std::size_t>(dim))
        throw invalid_input_error("region: box dimension mismatch");
      for (int a = 0; a < dim; ++a) {
        const std::size_t i = static_cast<std::size_t>(a);
        const double c = center[i];
        if (c - width < region.lo[i] || c + width > region.hi[i]) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace levyest
