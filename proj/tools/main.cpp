#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"
#include "levyest/errors.hpp"
#include "run_config.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> h;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("-c,--config", opt.config_path, "JSON run config")->required();
  cmd->add_option("--n", opt.n, "override sampling.n");
  cmd->add_option("--seed", opt.seed, "override the seed list with a single seed");
  cmd->add_option("--bandwidth", opt.h, "override the bandwidth h with an explicit value");
}

levyest::cli::RunConfig load(const CommonOptions& opt) {
  auto config = levyest::cli::RunConfig::from_json_file(opt.config_path);
  if (opt.n) config.sampling.n = *opt.n;
  if (opt.seed) config.sampling.seeds = {*opt.seed};
  if (opt.h) {
    config.bandwidth = levyest::BandwidthSpec{};
    config.bandwidth.rule = levyest::BandwidthRule::explicit_h;
    config.bandwidth.h = *opt.h;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral estimation of Levy jump densities from discrete increments"};
  app.require_subcommand(1);

  CommonOptions opt;
  CLI::App* simulate = app.add_subcommand("simulate", "draw increment samples");
  CLI::App* estimate = app.add_subcommand("estimate", "estimate the jump density");
  CLI::App* evaluate = app.add_subcommand("evaluate", "metrics against the model truth");
  CLI::App* convergence =
      app.add_subcommand("convergence", "error sweep over n and seeds with fitted slope");
  for (CLI::App* cmd : {simulate, estimate, evaluate, convergence}) add_common(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const levyest::cli::RunConfig config = load(opt);
    if (simulate->parsed()) levyest::cli::cmd_simulate(config);
    if (estimate->parsed()) levyest::cli::cmd_estimate(config);
    if (evaluate->parsed()) levyest::cli::cmd_evaluate(config);
    if (convergence->parsed()) levyest::cli::cmd_convergence(config);
    return 0;
  } catch (const levyest::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
