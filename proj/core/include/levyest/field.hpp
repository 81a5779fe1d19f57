#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "levyest/grid.hpp"

namespace levyest {

//! Complex-valued function sampled on a FreqGrid, flat row-major storage.
//! mask is either empty or grid.size() long; a 1 marks a node whose value
//! was suppressed (set to 0) by thresholding and must not be trusted.
struct ComplexField {
  FreqGrid grid;
  std::vector<std::complex<double>> values;
  std::vector<std::uint8_t> mask;

  bool masked(std::size_t flat) const { return !mask.empty() && mask[flat] != 0; }
};

//! Real-valued function sampled on a FreqGrid (kernel weights etc).
struct RealFreqField {
  FreqGrid grid;
  std::vector<double> values;
};

//! Complex-valued function on a SpaceGrid (raw inverse transform output).
struct ComplexSpaceField {
  SpaceGrid grid;
  std::vector<std::complex<double>> values;
};

//! Real-valued function on a SpaceGrid.  quantity names what the values
//! are ("nu", "xsq_nu", ...).  invalid is empty or grid.size() long; a 1
//! marks a node where the quantity is undefined (e.g. the origin cell of
//! a jump density); such values are stored as 0 but carry no meaning.
struct DensityField {
  SpaceGrid grid;
  std::vector<double> values;
  std::string quantity;
  std::vector<std::uint8_t> invalid;

  bool undefined(std::size_t flat) const { return !invalid.empty() && invalid[flat] != 0; }
};

}  // namespace levyest
