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

#include "interact/spanning_tree.hpp"

#include <algorithm>
#include <vector>

#include "interact/union_find.hpp"

namespace interact {

SpanningTree max_weight_spanning_tree(const WeightAssignment& weights) {
  const int d = weights.d;
  if (d < 1) throw ParameterError("max_weight_spanning_tree: d must be positive");

  struct Entry {
    double w;
    Edge e;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      entries.push_back({weights.at(Edge(i, j)), Edge(i, j)});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.w != b.w) return a.w > b.w;
    return a.e < b.e;
  });

  SpanningTree tree;
  tree.d = d;
  UnionFind uf(d + 1);
  for (const Entry& entry : entries) {
    if (static_cast<int>(tree.edges.size()) == d - 1) break;
    if (uf.unite(entry.e.i, entry.e.j)) {
      tree.edges.insert(entry.e);
      tree.total_weight += entry.w;
    }
  }
  return tree;
}

namespace {

// Decodes a sequence over {0..d-1}^(d-2) into the edges of the labeled tree
// it encodes, calling fn(u, v) per edge (0-based endpoints).
template <typename Fn>
void decode_tree_sequence(const std::vector<int>& seq, int d, Fn&& fn) {
  std::vector<int> degree(d, 1);
  for (int v : seq) ++degree[v];
  std::vector<bool> used(d, false);
  for (int v : seq) {
    int leaf = -1;
    for (int u = 0; u < d; ++u) {
      if (degree[u] == 1 && !used[u]) {
        leaf = u;
        break;
      }
    }
    fn(leaf, v);
    used[leaf] = true;
    --degree[v];
  }
  int first = -1;
  for (int u = 0; u < d; ++u) {
    if (degree[u] == 1 && !used[u]) {
      if (first < 0) {
        first = u;
      } else {
        fn(first, u);
      }
    }
  }
}

}  // namespace

double brute_force_mwst_weight(const WeightAssignment& weights) {
  const int d = weights.d;
  if (d < 1) throw ParameterError("brute_force_mwst_weight: d must be positive");
  if (d > 7) throw ResourceError("brute_force_mwst_weight: d exceeds the cap of 7");
  if (d == 1) return 0.0;
  if (d == 2) return weights.at(Edge(1, 2));

  std::vector<int> seq(d - 2, 0);
  double best = -1.0;  // weights are nonnegative
  for (;;) {
    double total = 0.0;
    decode_tree_sequence(seq, d, [&](int u, int v) {
      total += weights.at(Edge(u + 1, v + 1));
    });
    best = std::max(best, total);

    int pos = 0;
    while (pos < d - 2 && seq[pos] == d - 1) {
      seq[pos] = 0;
      ++pos;
    }
    if (pos == d - 2) break;
    ++seq[pos];
  }
  return best;
}

}  // namespace interact
