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
#include <span>

#include "interact/model.hpp"

namespace interact {

// The influence of the pair {i,j} on the outcome is
//
//   w_ij = | 2 Pr(y=+1 | x_i=+1, x_j=+1) - 1 |
//        = | 8 Pr(x_i=+1, x_j=+1, y=+1) - 1 |
//
// (the covariates are uniform signs, so the joint form is an exact rewrite).
// True edges of an acyclic structure have strictly positive influence;
// disconnected pairs and pairs joined by an even-length path have influence
// zero, and indirect influences along a path are strictly dominated by the
// direct influence of every edge on that path. Those separations are what
// detection rests on.

enum class WeightKind { exact, empirical, extended_exact, extended_empirical };

// A weight for every unordered pair of vertices. For extended kinds the
// vertex set includes the auxiliary covariate as the last index (d), which
// stands for the individual effects and serializes as vertex 0.
struct WeightAssignment {
  int d = 0;
  WeightKind kind = WeightKind::exact;
  std::map<Edge, double> weights;

  bool extended() const {
    return kind == WeightKind::extended_exact || kind == WeightKind::extended_empirical;
  }
  double at(Edge e) const;  // throws ContractError if the pair is missing
};

// Enumeration ceiling for the exact (brute-force) weight computations.
inline constexpr int kExactEnumerationMaxD = 24;

// Exact influence of one pair by full enumeration of the 2^(d-2) covariate
// completions. The model must be pure-interaction (augment first otherwise;
// ContractError) and d must not exceed kExactEnumerationMaxD (ResourceError).
double exact_weight(const ModelSpec& model, Edge pair);

// Exact influences of every pair, sharing one enumeration pass.
WeightAssignment exact_weights(const ModelSpec& model);

// Plug-in influence estimates from samples:
//   w_hat_ij = | (8/n) #{t : x_i[t]=x_j[t]=y[t]=+1} - 1 |.
// Counting is done on bit-packed columns; requires n >= 1.
WeightAssignment empirical_weights(const Dataset& data);

// The separation constant
//   gamma = sqrt(2/(pi d)) * [sigmoid(lambda+3mu) - sigmoid(-lambda+3mu)] :
// a lower bound both on every true-edge influence and on the dominance gap
// along paths, for acyclic structures with coefficient magnitudes in
// [lambda, mu]. Requires d >= 1 and 0 < lambda <= mu.
double separation_constant(int d, double lambda, double mu);

// --- Extended weights (models with individual effects) ----------------------
//
// Individual effects become interactions with the auxiliary covariate. The
// extended weight of {i, aux} reduces to |2 Pr(y=+1|x_i=+1) - 1| and the
// extended weight of {i,j} to
// |Pr(y=+1|x_i=+1,x_j=+1) + Pr(y=+1|x_i=-1,x_j=-1) - 1|,
// both functions of the original model only. `identity` evaluates those
// closed forms; `augmented_oracle` instead runs exact_weights on
// augment_to_pure_interaction(model). The two must agree to enumeration
// roundoff, which the tests exercise.

enum class ExtendedExactMode { identity, augmented_oracle };

WeightAssignment extended_exact_weights(const ModelSpec& model, ExtendedExactMode mode);

// Plug-in extended weights. The marginal constants Pr(x_i=a)=1/2 and
// Pr(x_i=a, x_j=a)=1/4 are hard-coded, mirroring how the factor 8 is
// hard-coded in the pairwise estimate:
//   w_hat_{i,aux} = | (4/n) #{x_i=+1, y=+1} - 1 |
//   w_hat_{i,j}   = | (4/n) (#{x_i=x_j=+1, y=+1} + #{x_i=x_j=-1, y=+1}) - 1 |
WeightAssignment extended_empirical_weights(const Dataset& data);

// --- Decomposition and concentration checks ---------------------------------

// Per-assignment contribution of a pair to its influence: with S the
// interaction sum over all other pairs at x,
//   sigmoid(beta_ij + S) - sigmoid(-beta_ij + S).
// Strictly positive for beta_ij > 0, strictly negative for beta_ij < 0, and
// identically zero when the pair is absent. Pure-interaction models only.
double influence_contribution(const ModelSpec& model, Edge pair,
                              std::span<const std::int8_t> x);

// For acyclic structures, the conditional difference
// Pr(y=+1|x_i=+1,x_j=+1) - Pr(y=-1|x_i=+1,x_j=+1) equals the average of
// influence_contribution over the 2^(d-2) completions. Returns the absolute
// difference of the two sides, each computed by its own enumeration.
// Pure-interaction models with d <= 16.
double influence_decomposition_residual(const ModelSpec& model, Edge pair);

// Pr(|sum_i a_i z_i| <= max_i |a_i|) for independent uniform signs z_i,
// by enumeration of all 2^q sign vectors (q = coeffs.size() <= 20).
double small_ball_probability(std::span<const double> coeffs);

// Closed-form lower bound sqrt(2/(pi(q+2))) for the probability above.
double small_ball_lower_bound(int q);

// Pr(y=+1 | x_i = v_i for the given assignments), averaging the model
// conditional over all completions of the unassigned covariates. Values must
// be +1 or -1; at most kExactEnumerationMaxD free covariates.
double conditional_prob_given(const ModelSpec& model,
                              const std::map<int, std::int8_t>& fixed);

// CSV export: header i,j,weight then one row per pair, 1-based, i < j; the
// auxiliary vertex of extended assignments is written as 0.
void write_weights_csv(const WeightAssignment& weights, std::ostream& out);

}  // namespace interact
