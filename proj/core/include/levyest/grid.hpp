#pragma once

#include <cstddef>
#include <vector>

namespace levyest {

//! Symmetric half-open frequency lattice.  Axis a carries m[a] nodes
//! (m even) at (j - m/2) * du for j = 0..m-1 with du = 2 u_max / m, i.e.
//! the node set {-u_max, ..., u_max - du}.  It always contains u = 0,
//! and flat storage is row major with the last axis fastest.
class FreqGrid {
 public:
  //! Empty placeholder grid (size 0), meant to be assigned over.
  FreqGrid() = default;
  FreqGrid(int dim, std::vector<int> points, std::vector<double> u_max);
  FreqGrid(int dim, int points, double u_max);

  int dim() const { return dim_; }
  int points(int axis) const { return m_[axis]; }
  double u_max(int axis) const { return umax_[axis]; }
  double spacing(int axis) const { return du_[axis]; }
  double node(int axis, int idx) const { return (idx - m_[axis] / 2) * du_[axis]; }

  std::size_t size() const { return total_; }
  std::size_t index(const std::vector<int>& idx) const;
  void unravel(std::size_t flat, std::vector<int>& idx) const;
  //! Coordinates of the node with the given flat index; out has dim() slots.
  void node_point(std::size_t flat, double* out) const;
  std::size_t origin_index() const;
  //! Product of the axis spacings: the rectangle-rule cell volume.
  double cell_volume() const;

  bool operator==(const FreqGrid&) const = default;

 private:
  int dim_ = 0;
  std::vector<int> m_;
  std::vector<double> umax_, du_;
  std::size_t total_ = 0;
};

//! Spatial lattice FFT-dual to a FreqGrid: per axis, dx * du = 2 pi / m
//! with the same node layout (j - m/2) * dx, j = 0..m-1.
class SpaceGrid {
 public:
  //! Empty placeholder grid (size 0), meant to be assigned over.
  SpaceGrid() = default;
  SpaceGrid(int dim, std::vector<int> points, std::vector<double> dx);
  static SpaceGrid dual_of(const FreqGrid& g);

  int dim() const { return dim_; }
  int points(int axis) const { return m_[axis]; }
  double spacing(int axis) const { return dx_[axis]; }
  double extent(int axis) const { return (m_[axis] / 2) * dx_[axis]; }
  double node(int axis, int idx) const { return (idx - m_[axis] / 2) * dx_[axis]; }

  std::size_t size() const { return total_; }
  std::size_t index(const std::vector<int>& idx) const;
  void unravel(std::size_t flat, std::vector<int>& idx) const;
  void node_point(std::size_t flat, double* out) const;
  std::size_t origin_index() const;
  double cell_volume() const;

  bool operator==(const SpaceGrid&) const = default;

 private:
  int dim_ = 0;
  std::vector<int> m_;
  std::vector<double> dx_;
  std::size_t total_ = 0;
};

}  // namespace levyest
