#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levyest/estimator.hpp"
#include "levyest/io.hpp"
#include "levyest/model.hpp"
#include "levyest/regions.hpp"

namespace levyest::cli {

struct SamplingConfig {
  double delta = 0.001;
  std::size_t n = 1000;
  std::vector<std::uint64_t> seeds{1};  // "seed" or "seeds" in the file
};

struct OutputConfig {
  std::string dir = "levyest-out";
  io::FieldFormat format = io::FieldFormat::csv;
  bool write_raw = false;  // also emit the unclamped fields
};

struct EvaluationConfig {
  Region region = Region::all();
  std::string quantity = "xsq_nu";  // which field the metrics target
  std::vector<std::string> metrics{"sup", "l2", "rel_l2"};
  bool use_truth_field = false;  // metric the sampled truth instead (sanity: 0)
};

struct ConvergenceConfig {
  std::vector<std::size_t> n_values;
  std::vector<std::uint64_t> seeds;
  std::string metric = "rel_l2";
};

//! One config file drives every subcommand; the CLI only overrides the
//! sweep variables (n, seed, h).
struct RunConfig {
  LevyModelSpec model;
  SamplingConfig sampling;
  EstimatorConfig estimator;  // kernel bandwidth is resolved per run
  bool trace_correction = false;
  BandwidthSpec bandwidth;
  OutputConfig outputs;
  std::optional<EvaluationConfig> evaluation;
  std::optional<ConvergenceConfig> convergence;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_json_file(const std::string& path);
  //! Round trip: from_json_text(to_json_text()) reproduces the config.
  std::string to_json_text(int indent = 2) const;
};

Region region_from_json_text(const std::string& text);

}  // namespace levyest::cli
