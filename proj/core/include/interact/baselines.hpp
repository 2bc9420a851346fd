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
#include <vector>

#include "interact/model.hpp"

namespace interact {

// Generic feature-selection view of the structure-recovery problem: each
// single covariate x_i and each product x_i*x_j is one candidate feature.
struct FeatureId {
  int i = 0;
  int j = 0;  // 0 for single features

  static FeatureId single(int i);
  static FeatureId pair(int a, int b);  // stores the pair with i < j
  bool is_pair() const { return j != 0; }

  // Canonical order: singles by index, then pairs lexicographically.
  friend bool operator<(const FeatureId& a, const FeatureId& b) {
    if (a.is_pair() != b.is_pair()) return !a.is_pair();
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
  friend bool operator==(const FeatureId&, const FeatureId&) = default;
};

// Every candidate feature for d covariates, in canonical order:
// d singles followed by d(d-1)/2 pairs.
std::vector<FeatureId> all_features(int d);

// The +/-1 value of a feature at a covariate assignment.
int feature_value(FeatureId f, std::span<const std::int8_t> x);

struct ScoredFeature {
  FeatureId id;
  double score;
};

struct SelectionResult {
  std::vector<ScoredFeature> selected;
  // Set when the L1 path skipped the requested support size and the result
  // was truncated from the smallest support of size >= k.
  bool truncated = false;
};

// Plug-in mutual information (nats) between the feature and the outcome,
// computed from the empirical 2x2 joint table with 0*log 0 = 0.
double plug_in_mi(FeatureId f, const Dataset& data);

// Plug-in mutual information between two features (for redundancy terms).
double plug_in_mi(FeatureId f, FeatureId g, const Dataset& data);

// Top-k features by plug-in MI with the outcome; ties resolved by canonical
// feature order. k must not exceed the number of candidate features.
SelectionResult mi_ranking(const Dataset& data, int k);

// Greedy forward selection, difference criterion: the first pick maximizes
// relevance MI(f;y); every later pick maximizes
//   MI(f;y) - (1/|S|) * sum_{g in S} MI(f;g)
// over the unselected features f. Ties resolved by canonical order.
SelectionResult mrmr_select(const Dataset& data, int k);

// A fitted (possibly regularized) logistic model over a feature subset. The
// model has no intercept. For L1 fits the map holds the nonzero coefficients
// only; for unregularized fits it holds every requested support feature.
struct LogRegFit {
  std::map<FeatureId, double> coefficients;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  // Objective value before the first step and after every iteration.
  std::vector<double> objective_trace;
};

// L1-regularized logistic regression over all d + d(d-1)/2 features:
//   min (1/n) sum_t log(1 + exp(-y_t s_t)) + reg * sum_f |w_f|
// by proximal gradient with fixed step 1/L, L = (#features)/4 (valid since
// every feature is +/-1). Iterations run until the stationarity residual
//   max_f ( w_f != 0 ? |g_f + reg*sign(w_f)| : max(0, |g_f| - reg) )
// drops below 1e-6 (converged) or 10^4 iterations elapse (flagged not
// converged; the caller decides what to do with the fit).
LogRegFit l1_logreg(const Dataset& data, double reg);

// Searches the regularization path by bisection for a value of reg with
// exactly k nonzero coefficients, warm-starting each probe. When the path
// jumps over size k, falls back to the smallest probed support of size >= k
// truncated to its k largest-magnitude coefficients and sets `truncated`.
// Scores are the absolute fitted coefficients.
SelectionResult l1_support_of_size(const Dataset& data, int k);

// Unregularized maximum-likelihood fit on the given support via damped
// Newton iterations; converged means sup-norm of the gradient below 1e-8.
// On separable data the coefficients are capped at magnitude 30 and the fit
// is flagged not converged.
LogRegFit fit_logistic(const Dataset& data, const std::vector<FeatureId>& support);
inline constexpr double kLogisticCoefficientCap = 30.0;

// Sign of the fitted linear score; a score of exactly zero predicts +1.
int predict(const LogRegFit& fit, std::span<const std::int8_t> x);

// Fraction of test samples whose outcome the fit predicts correctly.
double accuracy(const LogRegFit& fit, const Dataset& test);

// CSV export: header rank,kind,i,j,score; kind is "single" or "pair" and the
// j column is empty for singles. Ranks are 1-based.
void write_selection_csv(const SelectionResult& selection, std::ostream& out);

}  // namespace interact
