#include "levyest/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "levyest/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary field payloads assume a little-endian host");

namespace levyest::io {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p, bool binary) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, binary ? std::ios::out | std::ios::binary : std::ios::out);
  if (!out) throw invalid_input_error("cannot open " + p.string() + " for writing");
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw invalid_input_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_file(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw config_error(p.string() + ": " + e.what());
  }
}

//! Parse a CSV of doubles with a header line and a fixed column count.
std::vector<double> parse_csv(const std::string& text, std::size_t expect_cols,
                              const std::string& what) {
  std::vector<double> out;
  std::size_t pos = text.find('\n');
  if (pos == std::string::npos) throw invalid_input_error(what + ": missing csv header line");
  ++pos;
  std::size_t cols = 0;
  const char* const base = text.data();
  const char* const end = base + text.size();
  const char* s = base + pos;
  while (s < end) {
    while (s < end && (*s == ' ' || *s == '\r')) ++s;
    if (s < end && *s == '\n') {  // end of a row
      if (cols != 0 && cols != expect_cols)
        throw invalid_input_error(what + ": wrong number of csv columns");
      cols = 0;
      ++s;
      continue;
    }
    if (s >= end) break;
    double v = 0.0;
    auto [next, ec] = std::from_chars(s, end, v);
    if (ec != std::errc())
      throw invalid_input_error(what + ": malformed csv number");
    out.push_back(v);
    ++cols;
    s = next;
    while (s < end && (*s == ' ' || *s == '\r')) ++s;
    if (s < end && *s == ',') ++s;
  }
  if (cols != 0 && cols != expect_cols)
    throw invalid_input_error(what + ": wrong number of csv columns");
  if (out.size() % expect_cols != 0)
    throw invalid_input_error(what + ": csv cell count is not a multiple of the column count");
  return out;
}

void write_raw(std::ofstream& out, const void* p, std::size_t bytes) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
  if (!out) throw invalid_input_error("short write on binary payload");
}

fs::path payload_path_for(const fs::path& header, FieldFormat format) {
  fs::path p = header;
  p.replace_extension(format == FieldFormat::csv ? ".csv" : ".bin");
  return p;
}

fs::path checked_header_path(const std::string& header_path) {
  fs::path hp(header_path);
  if (hp.extension() != ".json")
    throw config_error("field header path must end in .json: " + header_path);
  return hp;
}

const json& require(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw config_error(what + ": missing key '" + key + "'");
  return *it;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw invalid_input_error("cannot format double");
  return std::string(buf, p);
}

void write_sample(const IncrementSample& sample, const std::string& csv_path,
                  const std::string& sidecar_path) {
  if (sample.dim <= 0 || sample.values.size() % static_cast<std::size_t>(sample.dim) != 0)
    throw invalid_input_error("increment sample has inconsistent shape");
  {
    std::ofstream out = open_out(csv_path, false);
    for (int a = 0; a < sample.dim; ++a) out << (a ? ",y" : "y") << a;
    out << '\n';
    const std::size_t n = sample.count();
    for (std::size_t k = 0; k < n; ++k) {
      for (int a = 0; a < sample.dim; ++a) {
        if (a) out << ',';
        out << format_double(sample.value(k, a));
      }
      out << '\n';
    }
    if (!out) throw invalid_input_error("short write on " + csv_path);
  }
  json j;
  j["delta"] = sample.delta;
  j["dim"] = sample.dim;
  j["n"] = sample.count();
  j["seed"] = sample.seed;
  std::ofstream out = open_out(sidecar_path, false);
  out << j.dump(2) << '\n';
  if (!out) throw invalid_input_error("short write on " + sidecar_path);
}

IncrementSample read_sample(const std::string& csv_path, const std::string& sidecar_path) {
  const json j = parse_json_file(sidecar_path);
  IncrementSample sample;
  sample.dim = require(j, "dim", sidecar_path).get<int>();
  sample.delta = require(j, "delta", sidecar_path).get<double>();
  sample.seed = require(j, "seed", sidecar_path).get<std::uint64_t>();
  const auto n = require(j, "n", sidecar_path).get<std::size_t>();
  if (sample.dim <= 0) throw config_error(sidecar_path + ": dim must be positive");
  if (!(sample.delta > 0.0)) throw config_error(sidecar_path + ": delta must be positive");
  sample.values =
      parse_csv(read_file(csv_path), static_cast<std::size_t>(sample.dim), csv_path);
  if (sample.count() != n)
    throw invalid_input_error(csv_path + ": row count does not match the sidecar");
  return sample;
}

void write_density_field(const DensityField& field, const std::string& header_path,
                         FieldFormat format) {
  const fs::path hp = checked_header_path(header_path);
  const SpaceGrid& g = field.grid;
  if (field.values.size() != g.size())
    throw invalid_input_error("density field value count does not match its grid");
  const bool has_invalid = !field.invalid.empty();
  if (has_invalid && field.invalid.size() != g.size())
    throw invalid_input_error("density field invalid-flag count does not match its grid");

  const fs::path pp = payload_path_for(hp, format);
  const int d = g.dim();
  if (format == FieldFormat::csv) {
    std::ofstream out = open_out(pp, false);
    for (int a = 0; a < d; ++a) out << (a ? ",x" : "x") << a;
    out << ",value";
    if (has_invalid) out << ",invalid";
    out << '\n';
    std::vector<double> x(d);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.node_point(i, x.data());
      for (int a = 0; a < d; ++a) {
        if (a) out << ',';
        out << format_double(x[a]);
      }
      out << ',' << format_double(field.values[i]);
      if (has_invalid) out << ',' << int(field.invalid[i]);
      out << '\n';
    }
    if (!out) throw invalid_input_error("short write on " + pp.string());
  } else {
    std::ofstream out = open_out(pp, true);
    write_raw(out, field.values.data(), field.values.size() * sizeof(double));
    if (has_invalid) write_raw(out, field.invalid.data(), field.invalid.size());
  }

  json j;
  j["kind"] = "density_field";
  j["dim"] = d;
  std::vector<int> points(d);
  std::vector<double> spacing(d);
  for (int a = 0; a < d; ++a) {
    points[a] = g.points(a);
    spacing[a] = g.spacing(a);
  }
  j["points"] = points;
  j["spacing"] = spacing;
  j["quantity"] = field.quantity;
  j["has_invalid"] = has_invalid;
  j["format"] = format == FieldFormat::csv ? "csv" : "binary";
  j["payload"] = pp.filename().string();
  if (format == FieldFormat::binary) j["encoding"] = "float64-le";
  std::ofstream out = open_out(hp, false);
  out << j.dump(2) << '\n';
  if (!out) throw invalid_input_error("short write on " + hp.string());
}

DensityField read_density_field(const std::string& header_path) {
  const fs::path hp = checked_header_path(header_path);
  const json j = parse_json_file(hp);
  if (require(j, "kind", header_path).get<std::string>() != "density_field")
    throw config_error(header_path + ": not a density field header");
  const int d = require(j, "dim", header_path).get<int>();
  const auto points = require(j, "points", header_path).get<std::vector<int>>();
  const auto spacing = require(j, "spacing", header_path).get<std::vector<double>>();
  if (int(points.size()) != d || int(spacing.size()) != d)
    throw config_error(header_path + ": points/spacing do not match dim");
  const bool has_invalid = require(j, "has_invalid", header_path).get<bool>();
  const std::string format = require(j, "format", header_path).get<std::string>();
  const std::string payload = require(j, "payload", header_path).get<std::string>();
  fs::path pp = hp.parent_path() / payload;

  DensityField field{SpaceGrid(d, points, spacing), {}, {}, {}};
  field.quantity = require(j, "quantity", header_path).get<std::string>();
  const std::size_t total = field.grid.size();
  if (format == "csv") {
    const std::size_t cols = std::size_t(d) + 1 + (has_invalid ? 1 : 0);
    const std::vector<double> cells = parse_csv(read_file(pp), cols, pp.string());
    if (cells.size() != cols * total)
      throw invalid_input_error(pp.string() + ": csv row count does not match the grid");
    field.values.resize(total);
    if (has_invalid) field.invalid.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      field.values[i] = cells[i * cols + std::size_t(d)];
      if (has_invalid)
        field.invalid[i] = cells[i * cols + std::size_t(d) + 1] != 0.0 ? 1 : 0;
    }
  } else if (format == "binary") {
    const std::string raw = read_file(pp);
    const std::size_t expect = total * sizeof(double) + (has_invalid ? total : 0);
    if (raw.size() != expect)
      throw invalid_input_error(pp.string() + ": payload size does not match the grid");
    field.values.resize(total);
    std::memcpy(field.values.data(), raw.data(), total * sizeof(double));
    if (has_invalid) {
      field.invalid.resize(total);
      std::memcpy(field.invalid.data(), raw.data() + total * sizeof(double), total);
    }
  } else {
    throw config_error(header_path + ": unknown payload format '" + format + "'");
  }
  return field;
}

void write_complex_field(const ComplexField& field, const std::string& header_path,
                         FieldFormat format) {
  const fs::path hp = checked_header_path(header_path);
  const FreqGrid& g = field.grid;
  if (field.values.size() != g.size())
    throw invalid_input_error("complex field value count does not match its grid");
  const bool has_mask = !field.mask.empty();
  if (has_mask && field.mask.size() != g.size())
    throw invalid_input_error("complex field mask count does not match its grid");

  const fs::path pp = payload_path_for(hp, format);
  const int d = g.dim();
  if (format == FieldFormat::csv) {
    std::ofstream out = open_out(pp, false);
    for (int a = 0; a < d; ++a) out << (a ? ",u" : "u") << a;
    out << ",re,im";
    if (has_mask) out << ",mask";
    out << '\n';
    std::vector<double> u(d);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.node_point(i, u.data());
      for (int a = 0; a < d; ++a) {
        if (a) out << ',';
        out << format_double(u[a]);
      }
      out << ',' << format_double(field.values[i].real());
      out << ',' << format_double(field.values[i].imag());
      if (has_mask) out << ',' << int(field.mask[i]);
      out << '\n';
    }
    if (!out) throw invalid_input_error("short write on " + pp.string());
  } else {
    std::ofstream out = open_out(pp, true);
    // std::complex<double> is layout compatible with double[2].
    write_raw(out, field.values.data(), field.values.size() * 2 * sizeof(double));
    if (has_mask) write_raw(out, field.mask.data(), field.mask.size());
  }

  json j;
  j["kind"] = "complex_field";
  j["dim"] = d;
  std::vector<int> points(d);
  std::vector<double> u_max(d);
  for (int a = 0; a < d; ++a) {
    points[a] = g.points(a);
    u_max[a] = g.u_max(a);
  }
  j["points"] = points;
  j["u_max"] = u_max;
  j["has_mask"] = has_mask;
  j["format"] = format == FieldFormat::csv ? "csv" : "binary";
  j["payload"] = pp.filename().string();
  if (format == FieldFormat::binary) j["encoding"] = "float64-le";
  std::ofstream out = open_out(hp, false);
  out << j.dump(2) << '\n';
  if (!out) throw invalid_input_error("short write on " + hp.string());
}

ComplexField read_complex_field(const std::string& header_path) {
  const fs::path hp = checked_header_path(header_path);
  const json j = parse_json_file(hp);
  if (require(j, "kind", header_path).get<std::string>() != "complex_field")
    throw config_error(header_path + ": not a complex field header");
  const int d = require(j, "dim", header_path).get<int>();
  const auto points = require(j, "points", header_path).get<std::vector<int>>();
  const auto u_max = require(j, "u_max", header_path).get<std::vector<double>>();
  if (int(points.size()) != d || int(u_max.size()) != d)
    throw config_error(header_path + ": points/u_max do not match dim");
  const bool has_mask = require(j, "has_mask", header_path).get<bool>();
  const std::string format = require(j, "format", header_path).get<std::string>();
  const std::string payload = require(j, "payload", header_path).get<std::string>();
  fs::path pp = hp.parent_path() / payload;

  ComplexField field{FreqGrid(d, points, u_max), {}, {}};
  const std::size_t total = field.grid.size();
  if (format == "csv") {
    const std::size_t cols = std::size_t(d) + 2 + (has_mask ? 1 : 0);
    const std::vector<double> cells = parse_csv(read_file(pp), cols, pp.string());
    if (cells.size() != cols * total)
      throw invalid_input_error(pp.string() + ": csv row count does not match the grid");
    field.values.resize(total);
    if (has_mask) field.mask.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      field.values[i] = {cells[i * cols + std::size_t(d)], cells[i * cols + std::size_t(d) + 1]};
      if (has_mask) field.mask[i] = cells[i * cols + std::size_t(d) + 2] != 0.0 ? 1 : 0;
    }
  } else if (format == "binary") {
    const std::string raw = read_file(pp);
    const std::size_t expect = total * 2 * sizeof(double) + (has_mask ? total : 0);
    if (raw.size() != expect)
      throw invalid_input_error(pp.string() + ": payload size does not match the grid");
    field.values.resize(total);
    std::memcpy(field.values.data(), raw.data(), total * 2 * sizeof(double));
    if (has_mask) {
      field.mask.resize(total);
      std::memcpy(field.mask.data(), raw.data() + total * 2 * sizeof(double), total);
    }
  } else {
    throw config_error(header_path + ": unknown payload format '" + format + "'");
  }
  return field;
}

}  // namespace levyest::io
