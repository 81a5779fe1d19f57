#pragma once

#include <complex>
#include <vector>

#include "levyest/field.hpp"

namespace levyest {

//! Rectangle-rule inverse Fourier transform
//!   F^{-1}[g](x) = (2 pi)^{-d} int e^{-i<u,x>} g(u) du
//!               ~= (2 pi)^{-d} prod(du) sum_nodes e^{-i<u_j,x>} g(u_j)
//! evaluated on the FFT-dual spatial lattice.  With the half-open
//! symmetric grids used here the sum reduces to a standard DFT after
//! checkerboard phase twiddles, so the node values agree with the direct
//! sum up to rounding.
ComplexSpaceField inverse_fourier_fft(const ComplexField& field);

//! The same rectangle-rule functional evaluated by direct summation at
//! arbitrary points (row-major, npoints x dim).  Slow but independent of
//! the FFT path: every phase is computed from scratch per node and the
//! node sum is compensated.  Oracle and off-grid evaluation path.
std::vector<std::complex<double>> inverse_fourier_quadrature(
    const ComplexField& field, const std::vector<double>& points);

}  // namespace levyest
