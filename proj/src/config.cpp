// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "rw2cf/errors.hpp"
#include "rw2cf/evaluation.hpp"

namespace rw2cf {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ParseError("unknown key '" + key + "' in " + context);
    }
  }
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError("bad value for '" + key + "': " + e.what());
  }
}

template <typename T>
T get_required(const json& obj, const std::string& key, const std::string& context) {
  if (!obj.contains(key)) {
    throw ParseError("missing required key '" + key + "' in " + context);
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError("bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  if (data_path.empty()) throw ValidationError("config: data path is empty");
  if (outcome.empty()) throw ValidationError("config: outcome is empty");
  if (out_dir.empty()) throw ValidationError("config: out_dir is empty");
  model.validate();
  sampler.validate();
  if (!(train_end < horizon_end)) {
    throw ValidationError("config: train_end " + train_end.str() +
                          " must precede horizon_end " + horizon_end.str());
  }
}

RunConfig run_config_from_json(const std::string& path) {
  json doc = load_json(path);
  if (!doc.is_object()) throw ParseError(path + ": config must be a JSON object");
  reject_unknown_keys(doc,
                      {"data", "outcome", "covariates", "use_lag12", "standardize_outcome",
                       "train_end", "horizon_end", "prior", "sampler", "out_dir", "cv"},
                      path);

  RunConfig config;
  config.data_path = get_required<std::string>(doc, "data", path);
  config.outcome = get_required<std::string>(doc, "outcome", path);
  config.model.covariate_names = get_or<std::vector<std::string>>(doc, "covariates", {});
  config.model.use_lag12 = get_or<bool>(doc, "use_lag12", true);
  config.model.standardize_outcome = get_or<bool>(doc, "standardize_outcome", false);
  config.train_end = CalendarMonth::parse(get_required<std::string>(doc, "train_end", path));
  config.horizon_end =
      CalendarMonth::parse(get_required<std::string>(doc, "horizon_end", path));
  config.out_dir = get_or<std::string>(doc, "out_dir", "out");

  if (doc.contains("prior")) {
    const json& prior = doc.at("prior");
    reject_unknown_keys(prior, {"coef_variance", "gamma_shape", "gamma_rate"},
                        path + " prior");
    config.model.prior_coef_variance = get_or<double>(prior, "coef_variance", 1000.0);
    config.model.prior_gamma_shape = get_or<double>(prior, "gamma_shape", 1.0);
    config.model.prior_gamma_rate = get_or<double>(prior, "gamma_rate", 0.01);
  }
  if (doc.contains("sampler")) {
    const json& sampler = doc.at("sampler");
    reject_unknown_keys(sampler, {"chains", "iterations", "burn_in", "thin", "seed"},
                        path + " sampler");
    config.sampler.chains = get_or<int>(sampler, "chains", 4);
    config.sampler.iterations = get_or<int>(sampler, "iterations", 20000);
    config.sampler.burn_in = get_or<int>(sampler, "burn_in", 10000);
    config.sampler.thin = get_or<int>(sampler, "thin", 10);
    config.sampler.seed = get_or<std::uint64_t>(sampler, "seed", 0);
  }
  if (doc.contains("cv")) {
    const json& cv = doc.at("cv");
    reject_unknown_keys(cv, {"years", "include_partial_years"}, path + " cv");
    config.cv_years = get_or<std::vector<int>>(cv, "years", {});
    config.cv_include_partial_years = get_or<bool>(cv, "include_partial_years", true);
  }
  config.validate();
  return config;
}

SyntheticSpec synthetic_spec_from_json(const std::string& path) {
  json doc = load_json(path);
  if (!doc.is_object()) throw ParseError(path + ": spec must be a JSON object");
  reject_unknown_keys(
      doc, {"T", "start", "outcome", "beta0", "gamma", "v", "v_e", "seed", "covariates"},
      path);

  SyntheticSpec spec;
  spec.T = get_or<int>(doc, "T", 240);
  spec.start = CalendarMonth::parse(get_or<std::string>(doc, "start", "2000-01"));
  spec.outcome_name = get_or<std::string>(doc, "outcome", "y");
  spec.beta0 = get_or<double>(doc, "beta0", 0.0);
  spec.gamma = get_or<double>(doc, "gamma", 0.0);
  spec.v = get_or<double>(doc, "v", 1.0);
  spec.v_e = get_or<double>(doc, "v_e", 1e-4);
  spec.seed = get_or<std::uint64_t>(doc, "seed", 1);
  if (doc.contains("covariates")) {
    const json& covs = doc.at("covariates");
    if (!covs.is_array()) throw ParseError(path + ": covariates must be an array");
    for (const auto& c : covs) {
      reject_unknown_keys(c, {"name", "beta", "mean", "amplitude", "phase", "noise_sd"},
                          path + " covariate");
      CovariateSpec cs;
      cs.name = get_required<std::string>(c, "name", path + " covariate");
      cs.mean = get_or<double>(c, "mean", 0.0);
      cs.amplitude = get_or<double>(c, "amplitude", 1.0);
      cs.phase = get_or<double>(c, "phase", 0.0);
      cs.noise_sd = get_or<double>(c, "noise_sd", 1.0);
      spec.covariates.push_back(cs);
      spec.beta.push_back(get_or<double>(c, "beta", 0.0));
    }
  }
  spec.validate();
  return spec;
}

}  // namespace rw2cf
