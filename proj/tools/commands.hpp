#pragma once

#include <filesystem>

#include "run_config.hpp"

namespace levyest::cli {

//! Output directory: $LEVYEST_OUTPUT_ROOT (default ".") joined with
//! outputs.dir; an absolute outputs.dir wins.  Created on demand.
std::filesystem::path resolve_output_dir(const RunConfig& config);

void cmd_simulate(const RunConfig& config);
void cmd_estimate(const RunConfig& config);
void cmd_evaluate(const RunConfig& config);
void cmd_convergence(const RunConfig& config);

}  // namespace levyest::cli
