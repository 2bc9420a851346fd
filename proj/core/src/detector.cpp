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

#include "interact/detector.hpp"

#include <cmath>

#include "json.hpp"

namespace interact {

DetectionResult detect_from_weights(WeightAssignment weights, double gamma,
                                    double threshold) {
  DetectionResult result;
  result.tree = max_weight_spanning_tree(weights);
  result.gamma = gamma;
  result.threshold = threshold;
  result.extended = weights.extended();
  result.recovered.d = weights.d;
  for (const Edge& e : result.tree.edges) {
    if (weights.at(e) > threshold) result.recovered.edges.insert(e);
  }
  result.weights = std::move(weights);
  return result;
}

DetectionResult detect(const Dataset& data, double lambda, double mu) {
  if (data.d < 2) throw ParameterError("detect: need at least two covariates");
  const double gamma = separation_constant(data.d, lambda, mu);
  return detect_from_weights(empirical_weights(data), gamma, gamma / 2.0);
}

DetectionResult detect_from_exact(const ModelSpec& model) {
  return detect_from_weights(exact_weights(model), 0.0, kExactPositivityThreshold);
}

DetectionResult detect_extended(const Dataset& data, double lambda, double mu) {
  if (data.d < 1) throw ParameterError("detect_extended: need at least one covariate");
  const double gamma = separation_constant(data.d + 1, lambda, mu);
  return detect_from_weights(extended_empirical_weights(data), gamma, gamma / 2.0);
}

DetectionResult detect_extended_from_exact(const ModelSpec& model) {
  return detect_from_weights(
      extended_exact_weights(model, ExtendedExactMode::identity), 0.0,
      kExactPositivityThreshold);
}

std::int64_t required_sample_size(int d, double lambda, double mu, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw ParameterError("required_sample_size: epsilon must be in (0,1)");
  }
  const double gamma = separation_constant(d, lambda, mu);
  const double bound =
      128.0 / (gamma * gamma) * std::log(static_cast<double>(d) * d / epsilon);
  const double n = std::ceil(bound);
  if (!(n >= 0.0) || n > 9.0e18) {
    throw ParameterError("required_sample_size: bound does not fit a 64-bit count");
  }
  return static_cast<std::int64_t>(n);
}

std::string detection_to_json(const DetectionResult& result) {
  const int aux = result.extended ? result.weights.d : 0;
  nlohmann::json j;
  j["edges"] = nlohmann::json::array();
  if (result.extended) j["individual"] = nlohmann::json::array();
  for (const Edge& e : result.recovered.edges) {
    if (aux != 0 && e.j == aux) {
      j["individual"].push_back(e.i);
    } else {
      j["edges"].push_back({e.i, e.j});
    }
  }
  j["gamma"] = result.gamma;
  j["tree"] = nlohmann::json::array();
  for (const Edge& e : result.tree.edges) {
    int i = e.i, jj = e.j;
    if (aux != 0 && jj == aux) {
      jj = i;
      i = 0;
    }
    j["tree"].push_back({i, jj, result.weights.at(e)});
  }
  return j.dump();
}

}  // namespace interact
