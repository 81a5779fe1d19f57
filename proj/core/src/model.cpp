#include "levyest/model.hpp"

#include <cmath>
#include <set>

#include "internal/linalg.hpp"
#include "json.hpp"
#include "levyest/errors.hpp"

namespace levyest {

namespace {

using nlohmann::json;

void check_finite_vector(const std::vector<double>& v, std::size_t want,
                         const std::string& what) {
  if (v.size() != want)
    throw invalid_model_error(what + ": expected " + std::to_string(want) + " entries");
  for (double x : v)
    if (!std::isfinite(x)) throw invalid_model_error(what + ": non-finite entry");
}

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) throw config_error(where + ": unknown key '" + item.key() + "'");
  }
}

std::vector<double> matrix_from_json(const json& j, int d, const std::string& what) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(d))
    throw config_error(what + ": expected " + std::to_string(d) + " rows");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
      throw config_error(what + ": expected " + std::to_string(d) + " columns");
    for (const auto& x : row) out.push_back(x.get<double>());
  }
  return out;
}

json matrix_to_json(const std::vector<double>& m, int d) {
  json rows = json::array();
  for (int i = 0; i < d; ++i) {
    json row = json::array();
    for (int j = 0; j < d; ++j) row.push_back(m[static_cast<std::size_t>(i) * d + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

LevyModelSpec model_from_json(const json& j);

json model_to_json(const LevyModelSpec& s) {
  json j;
  j["dimension"] = s.dimension;
  if (!s.brownian.empty()) {
    j["brownian"] = {{"sigma", matrix_to_json(s.brownian[0].sigma, s.dimension)},
                     {"drift", s.brownian[0].drift}};
  }
  if (!s.cpp_parts.empty()) {
    json parts = json::array();
    for (const auto& p : s.cpp_parts)
      parts.push_back({{"intensity", p.intensity},
                       {"jump_mean", p.jump_mean},
                       {"jump_cov", matrix_to_json(p.jump_cov, s.dimension)}});
    j["cpp"] = std::move(parts);
  }
  if (!s.vg.empty()) j["vg"] = {{"kappa", s.vg[0].kappa}};
  if (!s.blocks.empty()) {
    json blocks = json::array();
    for (const auto& b : s.blocks)
      blocks.push_back({{"coords", b.coords}, {"model", model_to_json(b.model)}});
    j["blocks"] = std::move(blocks);
  }
  return j;
}

LevyModelSpec model_from_json(const json& j) {
  if (!j.is_object()) throw config_error("model: expected a JSON object");
  require_keys(j, {"dimension", "brownian", "cpp", "vg", "blocks"}, "model");
  LevyModelSpec s;
  s.dimension = j.at("dimension").get<int>();
  if (j.contains("brownian")) {
    const json& b = j["brownian"];
    require_keys(b, {"sigma", "drift"}, "model.brownian");
    BrownianPart part;
    part.sigma = matrix_from_json(b.at("sigma"), s.dimension, "model.brownian.sigma");
    part.drift = b.at("drift").get<std::vector<double>>();
    s.brownian.push_back(std::move(part));
  }
  if (j.contains("cpp")) {
    for (const json& p : j["cpp"]) {
      require_keys(p, {"intensity", "jump_mean", "jump_cov"}, "model.cpp[]");
      CompoundPoissonPart part;
      part.intensity = p.at("intensity").get<double>();
      part.jump_mean = p.at("jump_mean").get<std::vector<double>>();
      part.jump_cov = matrix_from_json(p.at("jump_cov"), s.dimension, "model.cpp[].jump_cov");
      s.cpp_parts.push_back(std::move(part));
    }
  }
  if (j.contains("vg")) {
    require_keys(j["vg"], {"kappa"}, "model.vg");
    s.vg.push_back(VarianceGammaPart{j["vg"].at("kappa").get<double>()});
  }
  if (j.contains("blocks")) {
    for (const json& b : j["blocks"]) {
      require_keys(b, {"coords", "model"}, "model.blocks[]");
      BlockPart part;
      part.coords = b.at("coords").get<std::vector<int>>();
      part.model = model_from_json(b.at("model"));
      s.blocks.push_back(std::move(part));
    }
  }
  return s;
}

}  // namespace

void LevyModelSpec::validate() const {
  const int d = dimension;
  if (d < 1) throw invalid_model_error("model: dimension must be >= 1");
  if (brownian.size() > 1) throw invalid_model_error("model: at most one brownian part");
  if (vg.size() > 1) throw invalid_model_error("model: at most one variance gamma part");
  if (!blocks.empty()) {
    if (!brownian.empty() || !cpp_parts.empty() || !vg.empty())
      throw invalid_model_error("model: blocks cannot be mixed with top-level parts");
    std::set<int> seen;
    for (const auto& b : blocks) {
      if (b.coords.empty()) throw invalid_model_error("model: empty block");
      for (int c : b.coords) {
        if (c < 0 || c >= d) throw invalid_model_error("model: block coordinate out of range");
        if (!seen.insert(c).second)
          throw invalid_model_error("model: block coordinates overlap");
      }
      if (b.model.dimension != static_cast<int>(b.coords.size()))
        throw invalid_model_error("model: block sub-model dimension mismatch");
      b.model.validate();
    }
    if (seen.size() != static_cast<std::size_t>(d))
      throw invalid_model_error("model: blocks must partition the coordinate set");
    return;
  }
  for (const auto& b : brownian) {
    internal::check_symmetric_psd(b.sigma, d, "model.brownian.sigma");
    check_finite_vector(b.drift, static_cast<std::size_t>(d), "model.brownian.drift");
  }
  for (const auto& p : cpp_parts) {
    if (!(p.intensity > 0.0) || !std::isfinite(p.intensity))
      throw invalid_model_error("model.cpp: intensity must be positive");
    check_finite_vector(p.jump_mean, static_cast<std::size_t>(d), "model.cpp.jump_mean");
    internal::check_symmetric_psd(p.jump_cov, d, "model.cpp.jump_cov");
  }
  for (const auto& v : vg) {
    if (!(v.kappa > 0.0) || !std::isfinite(v.kappa))
      throw invalid_model_error("model.vg: kappa must be positive");
  }
}

LevyModelSpec LevyModelSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("model: JSON parse failure: ") + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const json::exception& e) {
    throw config_error(std::string("model: ") + e.what());
  }
}

std::string LevyModelSpec::to_json_text(int indent) const {
  return model_to_json(*this).dump(indent);
}

}  // namespace levyest
