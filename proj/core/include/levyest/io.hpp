#pragma once

#include <string>

#include "levyest/field.hpp"
#include "levyest/sim.hpp"

namespace levyest::io {

enum class FieldFormat { csv, binary };

//! Shortest decimal form of v that parses back to exactly the same bits.
std::string format_double(double v);

//! Increment samples persist as a CSV of count() rows with dim columns
//! (header line "y0,...") plus a JSON sidecar {"delta","dim","n","seed"}.
void write_sample(const IncrementSample& sample, const std::string& csv_path,
                  const std::string& sidecar_path);
IncrementSample read_sample(const std::string& csv_path, const std::string& sidecar_path);

//! Fields persist as a JSON header describing the grid plus a payload file
//! next to it: either CSV (node coordinates and values, for plotting) or
//! raw little-endian float64 (bit exact).  header_path must end in
//! ".json"; the payload lands beside it with extension ".csv" or ".bin".
//! Both formats round-trip exactly: CSV numbers use format_double.
void write_density_field(const DensityField& field, const std::string& header_path,
                         FieldFormat format);
DensityField read_density_field(const std::string& header_path);

void write_complex_field(const ComplexField& field, const std::string& header_path,
                         FieldFormat format);
ComplexField read_complex_field(const std::string& header_path);

}  // namespace levyest::io
