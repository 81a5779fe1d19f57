#include "levyest/grid.hpp"

#include <numbers>

#include "levyest/errors.hpp"

namespace levyest {

namespace {

constexpr std::size_t kMaxNodes = std::size_t{1} << 31;

std::size_t checked_total(const std::vector<int>& m) {
  std::size_t total = 1;
  for (int mi : m) {
    total *= static_cast<std::size_t>(mi);
    if (total > kMaxNodes) throw capacity_error("grid: more than 2^31 nodes");
  }
  return total;
}

void check_axes(int dim, std::size_t m_size, std::size_t extent_size) {
  if (dim < 1) throw config_error("grid: dimension must be >= 1");
  if (m_size != static_cast<std::size_t>(dim) ||
      extent_size != static_cast<std::size_t>(dim))
    throw config_error("grid: per-axis arrays must match the dimension");
}

std::size_t flat_index(const std::vector<int>& m, const std::vector<int>& idx) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (idx[a] < 0 || idx[a] >= m[a]) throw invalid_input_error("grid: index out of range");
    flat = flat * static_cast<std::size_t>(m[a]) + static_cast<std::size_t>(idx[a]);
  }
  return flat;
}

void unravel_index(const std::vector<int>& m, std::size_t flat, std::vector<int>& idx) {
  idx.resize(m.size());
  for (std::size_t a = m.size(); a-- > 0;) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(m[a]));
    flat /= static_cast<std::size_t>(m[a]);
  }
}

}  // namespace

FreqGrid::FreqGrid(int dim, std::vector<int> points, std::vector<double> u_max)
    : dim_(dim), m_(std::move(points)), umax_(std::move(u_max)) {
  check_axes(dim_, m_.size(), umax_.size());
  du_.resize(m_.size());
  for (std::size_t a = 0; a < m_.size(); ++a) {
    if (m_[a] < 2 || m_[a] % 2 != 0)
      throw config_error("FreqGrid: points per axis must be even and >= 2");
    if (!(umax_[a] > 0.0)) throw config_error("FreqGrid: u_max must be positive");
    du_[a] = 2.0 * umax_[a] / m_[a];
  }
  total_ = checked_total(m_);
}

FreqGrid::FreqGrid(int dim, int points, double u_max)
    : FreqGrid(dim, std::vector<int>(static_cast<std::size_t>(dim < 1 ? 1 : dim), points),
               std::vector<double>(static_cast<std::size_t>(dim < 1 ? 1 : dim), u_max)) {
  if (dim < 1) throw config_error("grid: dimension must be >= 1");
}

std::size_t FreqGrid::index(const std::vector<int>& idx) const { return flat_index(m_, idx); }

void FreqGrid::unravel(std::size_t flat, std::vector<int>& idx) const {
  unravel_index(m_, flat, idx);
}

void FreqGrid::node_point(std::size_t flat, double* out) const {
  for (std::size_t a = m_.size(); a-- > 0;) {
    const int j = static_cast<int>(flat % static_cast<std::size_t>(m_[a]));
    flat /= static_cast<std::size_t>(m_[a]);
    out[a] = node(static_cast<int>(a), j);
  }
}

std::size_t FreqGrid::origin_index() const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < m_.size(); ++a)
    flat = flat * static_cast<std::size_t>(m_[a]) + static_cast<std::size_t>(m_[a] / 2);
  return flat;
}

double FreqGrid::cell_volume() const {
  double v = 1.0;
  for (double du : du_) v *= du;
  return v;
}

SpaceGrid::SpaceGrid(int dim, std::vector<int> points, std::vector<double> dx)
    : dim_(dim), m_(std::move(points)), dx_(std::move(dx)) {
  check_axes(dim_, m_.size(), dx_.size());
  for (std::size_t a = 0; a < m_.size(); ++a) {
    if (m_[a] < 2 || m_[a] % 2 != 0)
      throw config_error("SpaceGrid: points per axis must be even and >= 2");
    if (!(dx_[a] > 0.0)) throw config_error("SpaceGrid: spacing must be positive");
  }
  total_ = checked_total(m_);
}

SpaceGrid SpaceGrid::dual_of(const FreqGrid& g) {
  std::vector<int> m(static_cast<std::size_t>(g.dim()));
  std::vector<double> dx(static_cast<std::size_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) {
    m[static_cast<std::size_t>(a)] = g.points(a);
    dx[static_cast<std::size_t>(a)] = 2.0 * std::numbers::pi / (g.points(a) * g.spacing(a));
  }
  return SpaceGrid(g.dim(), std::move(m), std::move(dx));
}

std::size_t SpaceGrid::index(const std::vector<int>& idx) const { return flat_index(m_, idx); }

void SpaceGrid::unravel(std::size_t flat, std::vector<int>& idx) const {
  unravel_index(m_, flat, idx);
}

void SpaceGrid::node_point(std::size_t flat, double* out) const {
  for (std::size_t a = m_.size(); a-- > 0;) {
    const int j = static_cast<int>(flat % static_cast<std::size_t>(m_[a]));
    flat /= static_cast<std::size_t>(m_[a]);
    out[a] = node(static_cast<int>(a), j);
  }
}

std::size_t SpaceGrid::origin_index() const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < m_.size(); ++a)
    flat = flat * static_cast<std::size_t>(m_[a]) + static_cast<std::size_t>(m_[a] / 2);
  return flat;
}

double SpaceGrid::cell_volume() const {
  double v = 1.0;
  for (double dx : dx_) v *= dx;
  return v;
}

}  // namespace levyest
