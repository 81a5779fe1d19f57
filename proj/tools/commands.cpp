#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "levyest/errors.hpp"
#include "levyest/io.hpp"
#include "levyest/reference.hpp"
#include "levyest/sim.hpp"

namespace levyest::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw invalid_input_error("cannot open " + p.string() + " for writing");
  out << text;
  if (!out) throw invalid_input_error("short write on " + p.string());
}

EstimatorConfig resolved_estimator(const RunConfig& config, std::size_t n) {
  EstimatorConfig c = config.estimator;
  const double T = config.sampling.delta * static_cast<double>(n);
  c.kernel.bandwidth =
      config.bandwidth.resolve(config.model.dimension, config.sampling.delta, T);
  return c;
}

json region_json(const Region& r) {
  json j;
  switch (r.kind) {
    case Region::Kind::everywhere:
      j["kind"] = "everywhere";
      break;
    case Region::Kind::annulus:
      j["kind"] = "annulus";
      j["r_min"] = r.r_min;
      j["r_max"] = r.r_max;
      break;
    case Region::Kind::box:
      j["kind"] = "box";
      j["lo"] = r.lo;
      j["hi"] = r.hi;
      break;
  }
  return j;
}

const DensityField& pick_field(const EstimateResult& result, const std::string& quantity) {
  if (quantity == "nu") return result.nu_hat;
  return result.xsq_nu_hat;
}

//! Model truth sampled on the estimate grid; the origin node is marked
//! undefined (jump densities may be singular there).
DensityField truth_field(const LevyModelSpec& model, const SpaceGrid& grid,
                         const std::string& quantity) {
  DensityField f{grid, std::vector<double>(grid.size(), 0.0), quantity,
                 std::vector<std::uint8_t>(grid.size(), 0)};
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node_point(i, x.data());
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) r2 += x[a] * x[a];
    if (r2 == 0.0) {
      f.invalid[i] = 1;
      continue;
    }
    f.values[i] = quantity == "nu" ? true_levy_density(model, x.data())
                                   : true_xsq_levy_density(model, x.data());
  }
  return f;
}

double one_metric(const std::string& name, const DensityField& field,
                  const LevyModelSpec& model, const Region& region) {
  if (name == "sup") return sup_error(field, model, region);
  if (name == "l2") return l2_error(field, model, region);
  const double denom = l2_truth_norm(field, model, region);
  if (!(denom > 0.0))
    throw invalid_input_error("rel_l2 undefined: the truth vanishes on the region");
  return l2_error(field, model, region) / denom;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

//! Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
    den += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
  }
  return num / den;
}

json diagnostics_json(const Diagnostics& d) {
  json j;
  j["bandwidth"] = d.bandwidth;
  j["masked_fraction"] = d.masked_fraction;
  j["masked_fraction_support"] = d.masked_fraction_support;
  j["imag_residual"] = d.imag_residual;
  if (d.trace_sigma) {
    j["trace_sigma"] = *d.trace_sigma;
    j["trace_negative"] = d.trace_negative;
  }
  return j;
}

EstimateResult run_estimate(const RunConfig& config, std::size_t n, std::uint64_t seed) {
  const IncrementSample sample =
      simulate_model(config.model, config.sampling.delta, n, seed);
  const EstimatorConfig c = resolved_estimator(config, n);
  return config.trace_correction ? estimate_xsq_nu_corrected(sample, c)
                                 : estimate_levy_density(sample, c);
}

}  // namespace

fs::path resolve_output_dir(const RunConfig& config) {
  const char* root = std::getenv("LEVYEST_OUTPUT_ROOT");
  fs::path base = root && *root ? fs::path(root) : fs::path(".");
  fs::path dir = base / config.outputs.dir;
  fs::create_directories(dir);
  return dir;
}

void cmd_simulate(const RunConfig& config) {
  const fs::path out = resolve_output_dir(config);
  for (std::uint64_t seed : config.sampling.seeds) {
    const IncrementSample sample =
        simulate_model(config.model, config.sampling.delta, config.sampling.n, seed);
    const std::string stem = "sample_seed" + std::to_string(seed);
    io::write_sample(sample, (out / (stem + ".csv")).string(),
                     (out / (stem + ".meta.json")).string());
  }
}

void cmd_estimate(const RunConfig& config) {
  const fs::path out = resolve_output_dir(config);
  for (std::uint64_t seed : config.sampling.seeds) {
    const EstimateResult result = run_estimate(config, config.sampling.n, seed);
    const std::string stem = "_seed" + std::to_string(seed);
    io::write_density_field(result.xsq_nu_hat, (out / ("xsq_nu" + stem + ".json")).string(),
                            config.outputs.format);
    io::write_density_field(result.nu_hat, (out / ("nu" + stem + ".json")).string(),
                            config.outputs.format);
    if (config.outputs.write_raw) {
      io::write_density_field(result.xsq_nu_raw,
                              (out / ("xsq_nu_raw" + stem + ".json")).string(),
                              config.outputs.format);
      io::write_density_field(result.nu_raw, (out / ("nu_raw" + stem + ".json")).string(),
                              config.outputs.format);
    }
    write_text(out / ("diagnostics" + stem + ".json"),
               diagnostics_json(result.diagnostics).dump(2) + "\n");
  }
}

void cmd_evaluate(const RunConfig& config) {
  if (!config.evaluation)
    throw config_error("evaluate needs an 'evaluation' section in the config");
  const EvaluationConfig& ev = *config.evaluation;
  const fs::path out = resolve_output_dir(config);

  json per_seed = json::array();
  std::vector<std::vector<double>> columns(ev.metrics.size());
  for (std::uint64_t seed : config.sampling.seeds) {
    DensityField field = [&] {
      if (ev.use_truth_field) {
        const EstimatorConfig c = resolved_estimator(config, config.sampling.n);
        c.validate();
        const SpaceGrid grid =
            SpaceGrid::dual_of(c.make_grid(config.model.dimension));
        return truth_field(config.model, grid, ev.quantity);
      }
      return pick_field(run_estimate(config, config.sampling.n, seed), ev.quantity);
    }();
    json entry;
    entry["seed"] = seed;
    for (std::size_t m = 0; m < ev.metrics.size(); ++m) {
      const double value = one_metric(ev.metrics[m], field, config.model, ev.region);
      entry[ev.metrics[m]] = value;
      columns[m].push_back(value);
    }
    per_seed.push_back(std::move(entry));
  }

  json j;
  j["quantity"] = ev.quantity;
  j["region"] = region_json(ev.region);
  j["use_truth_field"] = ev.use_truth_field;
  j["per_seed"] = std::move(per_seed);
  json med;
  for (std::size_t m = 0; m < ev.metrics.size(); ++m)
    med[ev.metrics[m]] = median_of(columns[m]);
  j["median"] = std::move(med);
  write_text(out / "metrics.json", j.dump(2) + "\n");
}

void cmd_convergence(const RunConfig& config) {
  if (!config.convergence)
    throw config_error("convergence needs a 'convergence' section in the config");
  const ConvergenceConfig& cv = *config.convergence;
  const Region region = config.evaluation ? config.evaluation->region : Region::all();
  const std::string quantity = config.evaluation ? config.evaluation->quantity : "xsq_nu";
  const fs::path out = resolve_output_dir(config);

  std::string csv = "n,seed,h,value\n";
  json entries = json::array();
  std::vector<double> med_n, med_value;
  json medians = json::array();
  for (std::size_t n : cv.n_values) {
    const double h = resolved_estimator(config, n).kernel.bandwidth;
    std::vector<double> values;
    for (std::uint64_t seed : cv.seeds) {
      const EstimateResult result = run_estimate(config, n, seed);
      const double value =
          one_metric(cv.metric, pick_field(result, quantity), config.model, region);
      values.push_back(value);
      csv += std::to_string(n) + "," + std::to_string(seed) + "," + io::format_double(h) +
             "," + io::format_double(value) + "\n";
      json e;
      e["n"] = n;
      e["seed"] = seed;
      e["h"] = h;
      e["value"] = value;
      entries.push_back(std::move(e));
    }
    const double med = median_of(values);
    json m;
    m["n"] = n;
    m["h"] = h;
    m["median"] = med;
    medians.push_back(std::move(m));
    med_n.push_back(static_cast<double>(n));
    med_value.push_back(med);
  }

  json j;
  j["metric"] = cv.metric;
  j["quantity"] = quantity;
  j["region"] = region_json(region);
  j["entries"] = std::move(entries);
  j["medians"] = std::move(medians);
  bool positive = med_n.size() >= 2;
  for (double v : med_value) positive = positive && v > 0.0;
  if (positive)
    j["slope"] = loglog_slope(med_n, med_value);
  else
    j["slope"] = nullptr;
  write_text(out / "convergence.csv", csv);
  write_text(out / "convergence.json", j.dump(2) + "\n");
}

}  // namespace levyest::cli
