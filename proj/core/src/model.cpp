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

#include "interact/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "interact/rng.hpp"
#include "interact/union_find.hpp"
#include "json.hpp"

namespace interact {

void ModelSpec::validate() const {
  if (d < 0) throw ParameterError("ModelSpec: d must be nonnegative");
  for (const auto& [i, beta] : individual) {
    if (i < 1 || i > d) throw ParameterError("ModelSpec: individual index out of range");
    if (beta == 0.0) throw ParameterError("ModelSpec: zero coefficients must be absent");
    if (!std::isfinite(beta)) throw ParameterError("ModelSpec: non-finite coefficient");
  }
  for (const auto& [e, beta] : pairwise) {
    if (e.j > d) throw ParameterError("ModelSpec: pairwise index out of range");
    if (beta == 0.0) throw ParameterError("ModelSpec: zero coefficients must be absent");
    if (!std::isfinite(beta)) throw ParameterError("ModelSpec: non-finite coefficient");
  }
  if (bounds) {
    const auto [lambda, mu] = *bounds;
    if (!(lambda > 0.0) || !(lambda <= mu)) {
      throw ParameterError("ModelSpec: bounds must satisfy 0 < lambda <= mu");
    }
    for (const auto& [i, beta] : individual) {
      (void)i;
      if (std::abs(beta) < lambda || std::abs(beta) > mu)
        throw ParameterError("ModelSpec: coefficient magnitude outside bounds");
    }
    for (const auto& [e, beta] : pairwise) {
      (void)e;
      if (std::abs(beta) < lambda || std::abs(beta) > mu)
        throw ParameterError("ModelSpec: coefficient magnitude outside bounds");
    }
  }
}

bool InteractionGraph::is_acyclic() const {
  UnionFind uf(d + 1);  // vertices 1..d
  for (const Edge& e : edges) {
    if (e.j > d) throw ParameterError("InteractionGraph: edge index out of range");
    if (!uf.unite(e.i, e.j)) return false;
  }
  return true;
}

InteractionGraph interaction_graph(const ModelSpec& model) {
  InteractionGraph g;
  g.d = model.d;
  for (const auto& [e, beta] : model.pairwise) {
    (void)beta;
    g.edges.insert(e);
  }
  return g;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

double linear_score(const ModelSpec& model, std::span<const std::int8_t> x) {
  double score = 0.0;
  for (const auto& [i, beta] : model.individual) {
    score += x[i - 1] > 0 ? beta : -beta;
  }
  for (const auto& [e, beta] : model.pairwise) {
    score += x[e.i - 1] == x[e.j - 1] ? beta : -beta;
  }
  return score;
}

}  // namespace

double conditional_prob(const ModelSpec& model, std::span<const std::int8_t> x) {
  if (static_cast<int>(x.size()) != model.d) {
    throw DimensionError("conditional_prob: covariate vector length != d");
  }
  return sigmoid(linear_score(model, x));
}

double conditional_prob_neg(const ModelSpec& model, std::span<const std::int8_t> x) {
  return 1.0 - conditional_prob(model, x);
}

Dataset sample_dataset(const ModelSpec& model, std::int64_t n, std::uint64_t seed) {
  if (n < 0) throw ParameterError("sample_dataset: n must be nonnegative");
  Dataset data;
  data.n = n;
  data.d = model.d;
  data.x.resize(static_cast<std::size_t>(n) * model.d);
  data.y.resize(static_cast<std::size_t>(n));
  SplitMix64 rng(seed);
  for (std::int64_t t = 0; t < n; ++t) {
    std::int8_t* row = data.x.data() + t * model.d;
    for (int i = 0; i < model.d; ++i) {
      row[i] = static_cast<std::int8_t>(rng.next_sign());
    }
    const double p = conditional_prob(model, {row, static_cast<std::size_t>(model.d)});
    data.y[t] = rng.next_unit() < p ? +1 : -1;
  }
  return data;
}

ModelSpec random_acyclic_model(int d, int k_individual, int k_pairs,
                               double lambda, double mu, std::uint64_t seed) {
  if (d < 1) throw ParameterError("random_acyclic_model: d must be positive");
  if (k_individual < 0 || k_pairs < 0)
    throw ParameterError("random_acyclic_model: negative feature count");
  if (!(lambda > 0.0) || !(lambda <= mu))
    throw ParameterError("random_acyclic_model: need 0 < lambda <= mu");
  if (k_pairs > d - 1)
    throw ParameterError("random_acyclic_model: k_pairs must be at most d-1");
  if (k_individual > d)
    throw ParameterError("random_acyclic_model: k_individual must be at most d");
  if (k_individual + k_pairs > d)
    throw ParameterError(
        "random_acyclic_model: k_individual + k_pairs must be at most d "
        "(the combined structure graph must stay acyclic)");

  SplitMix64 rng(seed);
  // Union-find over 0..d where 0 stands for the auxiliary vertex that carries
  // individual effects.
  UnionFind uf(d + 1);

  std::set<int> singles;
  while (static_cast<int>(singles.size()) < k_individual) {
    const int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d))) + 1;
    if (singles.insert(v).second) uf.unite(0, v);
  }

  std::set<Edge> edges;
  while (static_cast<int>(edges.size()) < k_pairs) {
    const int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d))) + 1;
    const int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d))) + 1;
    if (a == b) continue;
    Edge e(a, b);
    if (edges.contains(e)) continue;
    if (!uf.unite(e.i, e.j)) continue;  // would close a cycle
    edges.insert(e);
  }

  ModelSpec model;
  model.d = d;
  model.bounds = std::make_pair(lambda, mu);
  for (const Edge& e : edges) {
    const double magnitude = rng.next_uniform(lambda, mu);
    model.pairwise.emplace(e, rng.next_sign() > 0 ? magnitude : -magnitude);
  }
  for (const int v : singles) {
    const double magnitude = rng.next_uniform(lambda, mu);
    model.individual.emplace(v, rng.next_sign() > 0 ? magnitude : -magnitude);
  }
  return model;
}

ModelSpec augment_to_pure_interaction(const ModelSpec& model) {
  ModelSpec out;
  out.d = model.d + 1;
  out.pairwise = model.pairwise;
  out.bounds = model.bounds;
  const int aux = out.d;
  for (const auto& [i, beta] : model.individual) {
    out.pairwise.emplace(Edge(i, aux), beta);
  }
  return out;
}

// --- Serialization ----------------------------------------------------------

std::string model_to_json(const ModelSpec& model) {
  nlohmann::json j;
  j["d"] = model.d;
  j["individual"] = nlohmann::json::array();
  for (const auto& [i, beta] : model.individual) {
    j["individual"].push_back({i, beta});
  }
  j["pairwise"] = nlohmann::json::array();
  for (const auto& [e, beta] : model.pairwise) {
    j["pairwise"].push_back({e.i, e.j, beta});
  }
  if (model.bounds) {
    j["lambda"] = model.bounds->first;
    j["mu"] = model.bounds->second;
  } else {
    j["lambda"] = nullptr;
    j["mu"] = nullptr;
  }
  return j.dump();
}

ModelSpec model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("model_from_json: ") + e.what());
  }
  ModelSpec model;
  try {
    model.d = j.at("d").get<int>();
    for (const auto& entry : j.at("individual")) {
      const int i = entry.at(0).get<int>();
      const double beta = entry.at(1).get<double>();
      if (!model.individual.emplace(i, beta).second)
        throw ParameterError("model_from_json: duplicate individual index");
    }
    for (const auto& entry : j.at("pairwise")) {
      const int i = entry.at(0).get<int>();
      const int k = entry.at(1).get<int>();
      const double beta = entry.at(2).get<double>();
      if (i >= k) throw ParameterError("model_from_json: pairwise indices must satisfy i < j");
      if (!model.pairwise.emplace(Edge(i, k), beta).second)
        throw ParameterError("model_from_json: duplicate pairwise entry");
    }
    const auto& lambda = j.at("lambda");
    const auto& mu = j.at("mu");
    if (lambda.is_null() != mu.is_null())
      throw ParameterError("model_from_json: lambda and mu must both be set or both null");
    if (!lambda.is_null()) {
      model.bounds = std::make_pair(lambda.get<double>(), mu.get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("model_from_json: ") + e.what());
  }
  model.validate();
  return model;
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
  for (int i = 1; i <= data.d; ++i) out << 'x' << i << ',';
  out << "y\n";
  for (std::int64_t t = 0; t < data.n; ++t) {
    const auto row = data.row(t);
    for (int i = 0; i < data.d; ++i) {
      out << (row[i] > 0 ? "1" : "-1") << ',';
    }
    out << (data.y[t] > 0 ? "1" : "-1") << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::int8_t parse_sign_entry(const std::string& s) {
  if (s == "1" || s == "+1") return +1;
  if (s == "-1") return -1;
  throw ParameterError("read_dataset_csv: entry '" + s + "' is not 1 or -1");
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("read_dataset_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "y")
    throw ParameterError("read_dataset_csv: expected header x1,...,xd,y");
  const int d = static_cast<int>(header.size()) - 1;
  for (int i = 0; i < d; ++i) {
    if (header[i] != "x" + std::to_string(i + 1))
      throw ParameterError("read_dataset_csv: expected header x1,...,xd,y");
  }

  Dataset data;
  data.d = d;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != d + 1)
      throw ParameterError("read_dataset_csv: row with wrong field count");
    for (int i = 0; i < d; ++i) data.x.push_back(parse_sign_entry(fields[i]));
    data.y.push_back(parse_sign_entry(fields[d]));
    ++data.n;
  }
  return data;
}

}  // namespace interact
