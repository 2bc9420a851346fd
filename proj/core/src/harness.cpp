// Copyright 2026 The Interact Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "interact/harness.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "interact/baselines.hpp"
#include "interact/detector.hpp"
#include "interact/parallel.hpp"
#include "interact/rng.hpp"
#include "json.hpp"

namespace interact {

std::string method_name(Method m) {
  switch (m) {
    case Method::algorithm1: return "algorithm1";
    case Method::mi: return "mi";
    case Method::mrmr: return "mrmr";
    case Method::l1: return "l1";
  }
  throw ParameterError("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "algorithm1") return Method::algorithm1;
  if (name == "mi") return Method::mi;
  if (name == "mrmr") return Method::mrmr;
  if (name == "l1") return Method::l1;
  throw ParameterError("method_from_name: unknown method '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (d < 1) throw ParameterError("ExperimentConfig: d must be positive");
  if (k_individual < 0 || k_pairs < 0)
    throw ParameterError("ExperimentConfig: negative feature count");
  if (!(lambda > 0.0) || !(lambda <= mu))
    throw ParameterError("ExperimentConfig: need 0 < lambda <= mu");
  if (sample_sizes.empty()) throw ParameterError("ExperimentConfig: no sample sizes");
  for (std::int64_t n : sample_sizes) {
    if (n < 1) throw ParameterError("ExperimentConfig: sample sizes must be positive");
  }
  if (n_models < 1) throw ParameterError("ExperimentConfig: n_models must be positive");
  if (n_test < 1) throw ParameterError("ExperimentConfig: n_test must be positive");
  if (methods.empty()) throw ParameterError("ExperimentConfig: no methods");
}

std::uint64_t trial_seed(std::uint64_t master_seed, int model_index,
                         std::int64_t n, Method method) {
  std::uint64_t s = mix_seed(master_seed, static_cast<std::uint64_t>(model_index));
  s = mix_seed(s, static_cast<std::uint64_t>(n));
  return mix_seed(s, static_cast<std::uint64_t>(method));
}

namespace {

std::set<FeatureId> model_features(const ModelSpec& model) {
  std::set<FeatureId> features;
  for (const auto& [i, beta] : model.individual) {
    (void)beta;
    features.insert(FeatureId::single(i));
  }
  for (const auto& [e, beta] : model.pairwise) {
    (void)beta;
    features.insert(FeatureId::pair(e.i, e.j));
  }
  return features;
}

std::set<FeatureId> detection_features(const DetectionResult& detection, int aux) {
  std::set<FeatureId> features;
  for (const Edge& e : detection.recovered.edges) {
    if (e.j == aux) {
      features.insert(FeatureId::single(e.i));
    } else {
      features.insert(FeatureId::pair(e.i, e.j));
    }
  }
  return features;
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& config, int model_index,
                      std::int64_t n, Method method) {
  config.validate();
  if (model_index < 0 || model_index >= config.n_models)
    throw ParameterError("run_trial: model_index out of range");
  if (n < 1) throw ParameterError("run_trial: n must be positive");

  TrialResult trial;
  trial.model_index = model_index;
  trial.method = method;
  trial.n = n;
  trial.seed = trial_seed(config.master_seed, model_index, n, method);

  const ModelSpec model =
      random_acyclic_model(config.d, config.k_individual, config.k_pairs,
                           config.lambda, config.mu, mix_seed(trial.seed, 0));
  const Dataset train = sample_dataset(model, n, mix_seed(trial.seed, 1));
  const std::set<FeatureId> truth = model_features(model);
  const int k_true = static_cast<int>(truth.size());

  std::set<FeatureId> recovered;
  switch (method) {
    case Method::algorithm1: {
      const DetectionResult detection = detect_extended(train, config.lambda, config.mu);
      recovered = detection_features(detection, config.d + 1);
      break;
    }
    case Method::mi: {
      for (const auto& sf : mi_ranking(train, k_true).selected) recovered.insert(sf.id);
      break;
    }
    case Method::mrmr: {
      for (const auto& sf : mrmr_select(train, k_true).selected) recovered.insert(sf.id);
      break;
    }
    case Method::l1: {
      for (const auto& sf : l1_support_of_size(train, k_true).selected)
        recovered.insert(sf.id);
      break;
    }
  }

  for (const FeatureId& f : truth) {
    if (!recovered.contains(f)) ++trial.n_missed;
  }
  for (const FeatureId& f : recovered) {
    if (!truth.contains(f)) ++trial.n_false;
  }
  trial.exact_detection = trial.n_missed == 0 && trial.n_false == 0;

  LogRegFit fit;  // empty support predicts +1 everywhere
  if (!recovered.empty()) {
    fit = fit_logistic(train, {recovered.begin(), recovered.end()});
  }
  const Dataset test = sample_dataset(model, config.n_test, mix_seed(trial.seed, 2));
  trial.accuracy = accuracy(fit, test);
  return trial;
}

std::vector<CellStats> run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  const std::int64_t cells =
      static_cast<std::int64_t>(config.methods.size()) * config.sample_sizes.size();
  const std::int64_t total = cells * config.n_models;

  std::vector<TrialResult> trials(total);
  parallel_for(total, threads, [&](std::int64_t index) {
    const int model_index = static_cast<int>(index % config.n_models);
    const std::int64_t cell = index / config.n_models;
    const std::int64_t n = config.sample_sizes[cell % config.sample_sizes.size()];
    const Method method = config.methods[cell / config.sample_sizes.size()];
    trials[index] = run_trial(config, model_index, n, method);
  });

  const double k_true = static_cast<double>(config.k_individual + config.k_pairs);
  std::vector<CellStats> stats;
  stats.reserve(cells);
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    std::int64_t detected = 0, false_positives = 0;
    double accuracy_sum = 0.0;
    for (int m = 0; m < config.n_models; ++m) {
      const TrialResult& t = trials[cell * config.n_models + m];
      detected += t.exact_detection ? 1 : 0;
      false_positives += t.n_false;
      accuracy_sum += t.accuracy;
    }
    CellStats cs;
    cs.method = config.methods[cell / config.sample_sizes.size()];
    cs.n = config.sample_sizes[cell % config.sample_sizes.size()];
    cs.n_models = config.n_models;
    cs.detection_rate = static_cast<double>(detected) / config.n_models;
    cs.fp_rate = k_true > 0.0
                     ? static_cast<double>(false_positives) / (config.n_models * k_true)
                     : 0.0;
    cs.mean_accuracy = accuracy_sum / config.n_models;
    cs.stderr_detection =
        std::sqrt(cs.detection_rate * (1.0 - cs.detection_rate) / config.n_models);
    stats.push_back(cs);
  }
  return stats;
}

ComplexityCurveFit fit_complexity_curve(
    std::span<const std::pair<double, double>> points) {
  std::vector<std::pair<double, double>> usable;  // (n, log(1 - rate))
  for (const auto& [n, rate] : points) {
    if (rate < 1.0) usable.emplace_back(n, std::log1p(-rate));
  }
  if (usable.size() < 2) {
    throw DegenerateFitError(
        "fit_complexity_curve: need at least two points with rate < 1");
  }

  double mean_n = 0.0, mean_z = 0.0;
  for (const auto& [n, z] : usable) {
    mean_n += n;
    mean_z += z;
  }
  mean_n /= static_cast<double>(usable.size());
  mean_z /= static_cast<double>(usable.size());
  double var_n = 0.0, cov = 0.0;
  for (const auto& [n, z] : usable) {
    var_n += (n - mean_n) * (n - mean_n);
    cov += (n - mean_n) * (z - mean_z);
  }
  if (var_n == 0.0) {
    throw DegenerateFitError("fit_complexity_curve: all usable points share one n");
  }
  const double slope = cov / var_n;  // = -1/c
  if (slope == 0.0) {
    throw DegenerateFitError("fit_complexity_curve: flat rate sequence");
  }
  const double intercept = mean_z - slope * mean_n;  // = log B

  ComplexityCurveFit fit;
  fit.amplitude = std::exp(intercept);
  fit.efold = -1.0 / slope;
  fit.n_points = static_cast<int>(usable.size());
  for (const auto& [n, z] : usable) {
    const double rate = -std::expm1(z);  // recover the input rate
    const double predicted = 1.0 - fit.amplitude * std::exp(-n / fit.efold);
    fit.residual += (rate - predicted) * (rate - predicted);
  }
  return fit;
}

// --- Config and results files ------------------------------------------------

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config_from_json: ") + e.what());
  }
  ExperimentConfig config;
  try {
    config.d = j.at("d").get<int>();
    config.k_individual = j.at("k_individual").get<int>();
    config.k_pairs = j.at("k_pairs").get<int>();
    config.lambda = j.at("lambda").get<double>();
    config.mu = j.at("mu").get<double>();
    config.sample_sizes = j.at("sample_sizes").get<std::vector<std::int64_t>>();
    config.n_models = j.at("n_models").get<int>();
    config.n_test = j.value("n_test", 200);
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("methods")) {
      for (const auto& name : j.at("methods")) {
        config.methods.push_back(method_from_name(name.get<std::string>()));
      }
    } else {
      config.methods = {Method::algorithm1, Method::mi, Method::mrmr, Method::l1};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config_from_json: ") + e.what());
  }
  config.validate();
  return config;
}

std::string config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["d"] = config.d;
  j["k_individual"] = config.k_individual;
  j["k_pairs"] = config.k_pairs;
  j["lambda"] = config.lambda;
  j["mu"] = config.mu;
  j["sample_sizes"] = config.sample_sizes;
  j["n_models"] = config.n_models;
  j["n_test"] = config.n_test;
  j["methods"] = nlohmann::json::array();
  for (Method m : config.methods) j["methods"].push_back(method_name(m));
  j["master_seed"] = config.master_seed;
  return j.dump(2);
}

void write_results_csv(const std::vector<CellStats>& cells, std::ostream& out) {
  out << "method,n,detection_rate,fp_rate,accuracy,stderr_detection,n_models\n";
  out.precision(17);
  for (const CellStats& c : cells) {
    out << method_name(c.method) << ',' << c.n << ',' << c.detection_rate << ','
        << c.fp_rate << ',' << c.mean_accuracy << ',' << c.stderr_detection << ','
        << c.n_models << '\n';
  }
}

std::vector<CellStats> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("read_results_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "method,n,detection_rate,fp_rate,accuracy,stderr_detection,n_models") {
    throw ParameterError("read_results_csv: unexpected header");
  }
  std::vector<CellStats> cells;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    CellStats c;
    try {
      std::getline(ss, field, ',');
      c.method = method_from_name(field);
      std::getline(ss, field, ',');
      c.n = std::stoll(field);
      std::getline(ss, field, ',');
      c.detection_rate = std::stod(field);
      std::getline(ss, field, ',');
      c.fp_rate = std::stod(field);
      std::getline(ss, field, ',');
      c.mean_accuracy = std::stod(field);
      std::getline(ss, field, ',');
      c.stderr_detection = std::stod(field);
      std::getline(ss, field, ',');
      c.n_models = std::stoi(field);
    } catch (const std::exception&) {
      throw ParameterError("read_results_csv: malformed row '" + line + "'");
    }
    cells.push_back(c);
  }
  return cells;
}

}  // namespace interact
