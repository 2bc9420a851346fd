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

#include "interact/influence.hpp"
#include "interact/model.hpp"

namespace interact {

// A spanning tree over vertices 1..d: exactly d-1 edges (none when d <= 1),
// connected and acyclic.
struct SpanningTree {
  int d = 0;
  std::set<Edge> edges;
  double total_weight = 0.0;
};

// Maximum-weight spanning tree by Kruskal's algorithm on edges sorted by
// weight descending, ties broken by ascending (i, j). The tie-break makes the
// result deterministic; it compares the stored weight values directly, never
// recomputed quantities. Every pair over 1..d must carry a weight
// (ContractError otherwise).
SpanningTree max_weight_spanning_tree(const WeightAssignment& weights);

// Test oracle: the maximum spanning-tree weight found by enumerating all
// d^(d-2) labeled trees through their sequence encoding. d <= 7.
double brute_force_mwst_weight(const WeightAssignment& weights);

}  // namespace interact
