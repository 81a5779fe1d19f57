#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "levyest/errors.hpp"

namespace levyest::cli {
namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) throw config_error(where + ": unknown key '" + item.key() + "'");
  }
}

json parse(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(where + ": " + e.what());
  }
}

Region region_from_json(const json& j) {
  require_keys(j, {"kind", "r_min", "r_max", "lo", "hi"}, "evaluation.region");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "everywhere") return Region::all();
  if (kind == "annulus")
    return Region::make_annulus(j.at("r_min").get<double>(), j.at("r_max").get<double>());
  if (kind == "box")
    return Region::make_box(j.at("lo").get<std::vector<double>>(),
                            j.at("hi").get<std::vector<double>>());
  throw config_error("evaluation.region: unknown kind '" + kind + "'");
}

json region_to_json(const Region& r) {
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

SamplingConfig sampling_from_json(const json& j) {
  require_keys(j, {"delta", "n", "seed", "seeds"}, "sampling");
  SamplingConfig s;
  s.delta = j.at("delta").get<double>();
  s.n = j.at("n").get<std::size_t>();
  const bool has_seed = j.contains("seed"), has_seeds = j.contains("seeds");
  if (has_seed == has_seeds)
    throw config_error("sampling: give exactly one of 'seed' or 'seeds'");
  if (has_seed)
    s.seeds = {j.at("seed").get<std::uint64_t>()};
  else
    s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (!(s.delta > 0.0)) throw config_error("sampling.delta must be positive");
  if (s.n == 0) throw config_error("sampling.n must be positive");
  if (s.seeds.empty()) throw config_error("sampling.seeds must be nonempty");
  return s;
}

KernelSpec kernel_from_json(const json& j) {
  require_keys(j, {"kind", "b", "c"}, "estimator.kernel");
  KernelSpec k;
  if (j.contains("kind")) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "flat_top_radial")
      k.kind = KernelKind::flat_top_radial;
    else if (kind == "flat_top_product")
      k.kind = KernelKind::flat_top_product;
    else
      throw config_error("estimator.kernel: unknown kind '" + kind + "'");
  }
  if (j.contains("b")) k.b = j.at("b").get<double>();
  if (j.contains("c")) k.c = j.at("c").get<double>();
  return k;
}

WeightSpec weight_from_json(const json& j) {
  require_keys(j, {"shape", "bandwidth"}, "estimator.weight");
  WeightSpec w;
  if (j.contains("shape")) {
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "indicator_box")
      w.shape = WeightShape::indicator_box;
    else if (shape == "smooth_bump")
      w.shape = WeightShape::smooth_bump;
    else
      throw config_error("estimator.weight: unknown shape '" + shape + "'");
  }
  if (j.contains("bandwidth")) w.bandwidth = j.at("bandwidth").get<double>();
  return w;
}

EstimatorConfig estimator_from_json(const json& j) {
  require_keys(j, {"kernel", "weight", "grid", "post_process", "origin_exclusion"},
               "estimator");
  EstimatorConfig c;
  if (j.contains("kernel")) c.kernel = kernel_from_json(j.at("kernel"));
  if (j.contains("weight")) c.weight = weight_from_json(j.at("weight"));
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    require_keys(g, {"points", "u_max"}, "estimator.grid");
    if (g.contains("points")) c.grid_points = g.at("points").get<int>();
    if (g.contains("u_max")) c.grid_u_max = g.at("u_max").get<double>();
  }
  if (j.contains("post_process")) {
    const std::string p = j.at("post_process").get<std::string>();
    if (p == "raw")
      c.post_process = PostProcess::raw;
    else if (p == "real_positive_part")
      c.post_process = PostProcess::real_positive_part;
    else
      throw config_error("estimator.post_process: unknown value '" + p + "'");
  }
  if (j.contains("origin_exclusion"))
    c.origin_exclusion = j.at("origin_exclusion").get<double>();
  return c;
}

BandwidthSpec bandwidth_from_json(const json& j) {
  require_keys(j, {"rule", "h", "s", "alpha", "r"}, "bandwidth");
  BandwidthSpec b;
  const std::string rule = j.at("rule").get<std::string>();
  if (rule == "explicit") {
    b.rule = BandwidthRule::explicit_h;
    if (!j.contains("h")) throw config_error("bandwidth: rule 'explicit' requires 'h'");
    b.h = j.at("h").get<double>();
  } else if (rule == "sim_default") {
    b.rule = BandwidthRule::sim_default;
  } else if (rule == "mild") {
    b.rule = BandwidthRule::mild;
    if (j.contains("s")) b.s = j.at("s").get<double>();
    if (j.contains("alpha")) b.alpha = j.at("alpha").get<double>();
  } else if (rule == "severe") {
    b.rule = BandwidthRule::severe;
    if (j.contains("alpha")) b.alpha = j.at("alpha").get<double>();
    if (j.contains("r")) b.r = j.at("r").get<double>();
  } else {
    throw config_error("bandwidth.rule: unknown value '" + rule + "'");
  }
  return b;
}

OutputConfig outputs_from_json(const json& j) {
  require_keys(j, {"dir", "format", "write_raw"}, "outputs");
  OutputConfig o;
  if (j.contains("dir")) o.dir = j.at("dir").get<std::string>();
  if (j.contains("format")) {
    const std::string f = j.at("format").get<std::string>();
    if (f == "csv")
      o.format = io::FieldFormat::csv;
    else if (f == "binary")
      o.format = io::FieldFormat::binary;
    else
      throw config_error("outputs.format: unknown value '" + f + "'");
  }
  if (j.contains("write_raw")) o.write_raw = j.at("write_raw").get<bool>();
  return o;
}

EvaluationConfig evaluation_from_json(const json& j) {
  require_keys(j, {"region", "quantity", "metrics", "use_truth_field"}, "evaluation");
  EvaluationConfig e;
  if (j.contains("region")) e.region = region_from_json(j.at("region"));
  if (j.contains("quantity")) e.quantity = j.at("quantity").get<std::string>();
  if (e.quantity != "xsq_nu" && e.quantity != "nu")
    throw config_error("evaluation.quantity must be 'xsq_nu' or 'nu'");
  if (j.contains("metrics")) e.metrics = j.at("metrics").get<std::vector<std::string>>();
  for (const std::string& m : e.metrics)
    if (m != "sup" && m != "l2" && m != "rel_l2")
      throw config_error("evaluation.metrics: unknown metric '" + m + "'");
  if (j.contains("use_truth_field")) e.use_truth_field = j.at("use_truth_field").get<bool>();
  return e;
}

ConvergenceConfig convergence_from_json(const json& j) {
  require_keys(j, {"n_values", "seeds", "metric"}, "convergence");
  ConvergenceConfig c;
  c.n_values = j.at("n_values").get<std::vector<std::size_t>>();
  c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("metric")) c.metric = j.at("metric").get<std::string>();
  if (c.n_values.empty()) throw config_error("convergence.n_values must be nonempty");
  if (c.seeds.empty()) throw config_error("convergence.seeds must be nonempty");
  if (c.metric != "sup" && c.metric != "l2" && c.metric != "rel_l2")
    throw config_error("convergence.metric: unknown metric '" + c.metric + "'");
  return c;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  const json j = parse(text, "run config");
  require_keys(j,
               {"model", "sampling", "estimator", "trace_correction", "bandwidth", "outputs",
                "evaluation", "convergence"},
               "run config");
  RunConfig c;
  if (!j.contains("model")) throw config_error("run config: missing 'model'");
  c.model = LevyModelSpec::from_json_text(j.at("model").dump());
  c.model.validate();
  if (!j.contains("sampling")) throw config_error("run config: missing 'sampling'");
  c.sampling = sampling_from_json(j.at("sampling"));
  if (j.contains("estimator")) c.estimator = estimator_from_json(j.at("estimator"));
  if (j.contains("trace_correction"))
    c.trace_correction = j.at("trace_correction").get<bool>();
  if (j.contains("bandwidth")) c.bandwidth = bandwidth_from_json(j.at("bandwidth"));
  if (j.contains("outputs")) c.outputs = outputs_from_json(j.at("outputs"));
  if (j.contains("evaluation"))
    c.evaluation = evaluation_from_json(j.at("evaluation"));
  if (j.contains("convergence"))
    c.convergence = convergence_from_json(j.at("convergence"));
  return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return from_json_text(ss.str());
  } catch (const config_error& e) {
    throw config_error(path + ": " + e.what());
  }
}

std::string RunConfig::to_json_text(int indent) const {
  json j;
  j["model"] = json::parse(model.to_json_text());
  {
    json s;
    s["delta"] = sampling.delta;
    s["n"] = sampling.n;
    if (sampling.seeds.size() == 1)
      s["seed"] = sampling.seeds[0];
    else
      s["seeds"] = sampling.seeds;
    j["sampling"] = std::move(s);
  }
  {
    json e;
    e["kernel"]["kind"] = estimator.kernel.kind == KernelKind::flat_top_radial
                              ? "flat_top_radial"
                              : "flat_top_product";
    e["kernel"]["b"] = estimator.kernel.b;
    e["kernel"]["c"] = estimator.kernel.c;
    e["weight"]["shape"] =
        estimator.weight.shape == WeightShape::indicator_box ? "indicator_box" : "smooth_bump";
    e["weight"]["bandwidth"] = estimator.weight.bandwidth;
    e["grid"]["points"] = estimator.grid_points;
    e["grid"]["u_max"] = estimator.grid_u_max;
    e["post_process"] =
        estimator.post_process == PostProcess::raw ? "raw" : "real_positive_part";
    e["origin_exclusion"] = estimator.origin_exclusion;
    j["estimator"] = std::move(e);
  }
  j["trace_correction"] = trace_correction;
  {
    json b;
    switch (bandwidth.rule) {
      case BandwidthRule::explicit_h:
        b["rule"] = "explicit";
        b["h"] = bandwidth.h;
        break;
      case BandwidthRule::sim_default:
        b["rule"] = "sim_default";
        break;
      case BandwidthRule::mild:
        b["rule"] = "mild";
        b["s"] = bandwidth.s;
        b["alpha"] = bandwidth.alpha;
        break;
      case BandwidthRule::severe:
        b["rule"] = "severe";
        b["alpha"] = bandwidth.alpha;
        b["r"] = bandwidth.r;
        break;
    }
    j["bandwidth"] = std::move(b);
  }
  {
    json o;
    o["dir"] = outputs.dir;
    o["format"] = outputs.format == io::FieldFormat::csv ? "csv" : "binary";
    o["write_raw"] = outputs.write_raw;
    j["outputs"] = std::move(o);
  }
  if (evaluation) {
    json e;
    e["region"] = region_to_json(evaluation->region);
    e["quantity"] = evaluation->quantity;
    e["metrics"] = evaluation->metrics;
    e["use_truth_field"] = evaluation->use_truth_field;
    j["evaluation"] = std::move(e);
  }
  if (convergence) {
    json c;
    c["n_values"] = convergence->n_values;
    c["seeds"] = convergence->seeds;
    c["metric"] = convergence->metric;
    j["convergence"] = std::move(c);
  }
  return j.dump(indent);
}

Region region_from_json_text(const std::string& text) {
  return region_from_json(parse(text, "region"));
}

}  // namespace levyest::cli
