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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "interact/errors.hpp"

namespace interact {

// Unordered pair of vertex indices, stored with i < j. Vertices are 1-based
// everywhere in this library.
struct Edge {
  int i;
  int j;

  Edge(int a, int b) : i(a < b ? a : b), j(a < b ? b : a) {
    if (a == b) throw ParameterError("Edge: self-pair {" + std::to_string(a) + "}");
    if (i < 1) throw ParameterError("Edge: vertex indices must be >= 1");
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Logistic regression model with pairwise interactions over d covariates,
// each uniform on {+1,-1}:
//
//   Pr(y = +1 | x) = sigmoid( sum_i beta_i x_i + sum_{i<j} beta_ij x_i x_j )
//
// The pure-interaction form of the model has an empty `individual` map.
// Coefficients equal to zero are never stored. When a model was drawn from a
// coefficient range, `bounds` records the (lambda, mu) magnitude range.
struct ModelSpec {
  int d = 0;
  std::map<int, double> individual;      // i -> beta_i
  std::map<Edge, double> pairwise;       // {i,j} -> beta_ij
  std::optional<std::pair<double, double>> bounds;  // (lambda, mu)

  bool pure_interaction() const { return individual.empty(); }

  // Checks index ranges, absence of zero coefficients and self-pairs, and
  // bounds consistency. Throws ParameterError on violation.
  void validate() const;
};

// Simple undirected graph: the structure being recovered. For augmented
// models the vertex set includes the auxiliary covariate as index d (see
// augment_to_pure_interaction).
struct InteractionGraph {
  int d = 0;
  std::set<Edge> edges;

  // Cycle check via union-find.
  bool is_acyclic() const;

  friend bool operator==(const InteractionGraph&, const InteractionGraph&) = default;
};

// The pairwise-edge structure of a model (individual terms are not part of
// the returned graph; augment first if they should appear as edges).
InteractionGraph interaction_graph(const ModelSpec& model);

// n i.i.d. samples: an n x d matrix of +/-1 covariates and the n outcomes.
struct Dataset {
  std::int64_t n = 0;
  int d = 0;
  std::vector<std::int8_t> x;  // row-major, n*d entries, each +1 or -1
  std::vector<std::int8_t> y;  // n entries, each +1 or -1

  std::span<const std::int8_t> row(std::int64_t t) const {
    return {x.data() + t * d, static_cast<std::size_t>(d)};
  }
};

// Overflow-safe logistic function; the two-branch form never evaluates
// exp() of a positive argument.
double sigmoid(double x);

// Pr(y = +1 | x) for a full covariate assignment (x.size() must equal d).
double conditional_prob(const ModelSpec& model, std::span<const std::int8_t> x);

// Pr(y = -1 | x), computed as 1 - conditional_prob so the two always sum to
// one exactly.
double conditional_prob_neg(const ModelSpec& model, std::span<const std::int8_t> x);

// Draws n samples. Covariates are i.i.d. uniform signs; the outcome is drawn
// from the model conditional. Draw order (fixed, part of the contract): for
// each sample t, one sign per covariate in index order, then one unit draw
// for the outcome.
Dataset sample_dataset(const ModelSpec& model, std::int64_t n, std::uint64_t seed);

// Random model whose structure graph is acyclic: k_pairs pairwise edges plus
// k_individual individual effects, coefficient magnitudes uniform on
// [lambda, mu] with uniform signs. Individual effects count as edges to the
// auxiliary vertex for the acyclicity requirement, so feasibility demands
// k_pairs <= d-1 and k_individual + k_pairs <= d.
//
// Edge selection is rejection sampling: individual-effect vertices are drawn
// first (uniformly, rejecting repeats), then candidate pairs are drawn
// uniformly and accepted iff they keep the combined structure acyclic.
// Coefficients are then assigned in canonical order (edges sorted, then
// individuals sorted), magnitude before sign.
ModelSpec random_acyclic_model(int d, int k_individual, int k_pairs,
                               double lambda, double mu, std::uint64_t seed);

// Rewrites individual effects as interactions with one extra always-present
// covariate: the result has d+1 covariates, no individual terms, and an edge
// {i, d+1} of weight beta_i for every individual effect. Conditioned on the
// auxiliary covariate being +1, the result's conditional equals the input's.
ModelSpec augment_to_pure_interaction(const ModelSpec& model);

// Index of the auxiliary covariate inside an augmented model. Serialized
// output writes this vertex as 0.
inline int auxiliary_vertex(const ModelSpec& augmented) { return augmented.d; }

// --- Serialization ---------------------------------------------------------
//
// ModelSpec: JSON object
//   {"d": int, "individual": [[i, beta], ...], "pairwise": [[i, j, beta], ...],
//    "lambda": real|null, "mu": real|null}
// with 1-based indices and i < j.
//
// Dataset: CSV with header x1,...,xd,y and entries written as 1 or -1.

std::string model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const std::string& text);

void write_dataset_csv(const Dataset& data, std::ostream& out);
Dataset read_dataset_csv(std::istream& in);

}  // namespace interact
