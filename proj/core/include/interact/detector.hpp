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
#include <string>

#include "interact/influence.hpp"
#include "interact/model.hpp"
#include "interact/spanning_tree.hpp"

namespace interact {

// Outcome of one detection run. The recovered edges are exactly the tree
// edges whose weight strictly exceeds the threshold; for the sample-based
// detectors the threshold is gamma/2, for the exact-weight pathway it is a
// small positivity cutoff and `gamma` is 0.
struct DetectionResult {
  InteractionGraph recovered;
  SpanningTree tree;
  WeightAssignment weights;
  double gamma = 0.0;
  double threshold = 0.0;
  bool extended = false;
};

// Maximum-weight spanning tree over the given weights, then keep the tree
// edges with weight strictly above the threshold. Building block shared by
// every detector variant.
DetectionResult detect_from_weights(WeightAssignment weights, double gamma,
                                    double threshold);

// Structure recovery from samples: plug-in influence weights, the separation
// constant gamma(d, lambda, mu), and the strict gamma/2 threshold.
// Requires 0 < lambda <= mu, n >= 1, d >= 2.
DetectionResult detect(const Dataset& data, double lambda, double mu);

// Structure recovery from exact influences of a pure-interaction model.
// Exact weights of true edges are strictly positive while irrelevant tree
// edges carry (up to enumeration roundoff) zero weight, so the threshold is
// the positivity cutoff 1e-9 rather than gamma/2. Recovers the structure
// exactly for every acyclic model.
DetectionResult detect_from_exact(const ModelSpec& model);
inline constexpr double kExactPositivityThreshold = 1e-9;

// Recovery of individual effects and interactions together: extended plug-in
// weights over d+1 vertices (the auxiliary vertex standing for individual
// effects), thresholded at gamma(d+1, lambda, mu)/2. Recovered edges at the
// auxiliary vertex are individual effects.
DetectionResult detect_extended(const Dataset& data, double lambda, double mu);

// Extended detection with exact weights in place of plug-in estimates.
DetectionResult detect_extended_from_exact(const ModelSpec& model);

// Sample size sufficient for recovery with probability at least 1 - epsilon:
// ceil( (128 / gamma^2) * log(d^2 / epsilon) ). A sufficient bound only; the
// empirically required sample counts are far smaller. epsilon in (0,1).
std::int64_t required_sample_size(int d, double lambda, double mu, double epsilon);

// JSON export:
//   {"edges": [[i,j],...], "individual": [i,...] (extended results only),
//    "gamma": real, "tree": [[i,j,w],...]}
// The auxiliary vertex of extended results is written as 0 in "tree" and its
// recovered edges are reported under "individual".
std::string detection_to_json(const DetectionResult& result);

}  // namespace interact
