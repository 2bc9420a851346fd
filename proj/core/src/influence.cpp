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

#include "interact/influence.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

namespace interact {

double WeightAssignment::at(Edge e) const {
  const auto it = weights.find(e);
  if (it == weights.end()) {
    throw ContractError("WeightAssignment: no weight stored for pair {" +
                        std::to_string(e.i) + "," + std::to_string(e.j) + "}");
  }
  return it->second;
}

namespace {

void require_pure_interaction(const ModelSpec& model, const char* where) {
  if (!model.pure_interaction()) {
    throw ContractError(std::string(where) +
                        ": model has individual terms; augment_to_pure_interaction first");
  }
}

void require_enumerable(int d, const char* where) {
  if (d > kExactEnumerationMaxD) {
    throw ResourceError(std::string(where) + ": d = " + std::to_string(d) +
                        " exceeds the enumeration cap of " +
                        std::to_string(kExactEnumerationMaxD));
  }
}

void check_pair_range(Edge pair, int d, const char* where) {
  if (pair.j > d) {
    throw DimensionError(std::string(where) + ": pair index exceeds d");
  }
}

// Enumerates all completions of `x` over the covariates not listed in
// `fixed_idx`, invoking fn(x) for each. x must already hold the fixed values.
template <typename Fn>
void for_each_completion(std::vector<std::int8_t>& x,
                         const std::vector<int>& free_idx, Fn&& fn) {
  const int q = static_cast<int>(free_idx.size());
  const std::uint64_t total = std::uint64_t{1} << q;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int b = 0; b < q; ++b) {
      x[free_idx[b] - 1] = (mask >> b) & 1 ? +1 : -1;
    }
    fn(x);
  }
}

std::vector<int> free_indices(int d, std::initializer_list<int> fixed) {
  std::vector<int> idx;
  idx.reserve(d);
  for (int v = 1; v <= d; ++v) {
    bool is_fixed = false;
    for (int f : fixed) is_fixed |= (v == f);
    if (!is_fixed) idx.push_back(v);
  }
  return idx;
}

}  // namespace

double exact_weight(const ModelSpec& model, Edge pair) {
  require_pure_interaction(model, "exact_weight");
  require_enumerable(model.d, "exact_weight");
  check_pair_range(pair, model.d, "exact_weight");

  std::vector<std::int8_t> x(model.d);
  x[pair.i - 1] = +1;
  x[pair.j - 1] = +1;
  double sum = 0.0;
  for_each_completion(x, free_indices(model.d, {pair.i, pair.j}),
                      [&](const std::vector<std::int8_t>& v) {
                        sum += conditional_prob(model, v);
                      });
  // 8 * Pr(x_i=+1, x_j=+1, y=+1) - 1 == sum * 2^(3-d) - 1
  return std::fabs(std::ldexp(sum, 3 - model.d) - 1.0);
}

WeightAssignment exact_weights(const ModelSpec& model) {
  require_pure_interaction(model, "exact_weights");
  require_enumerable(model.d, "exact_weights");
  const int d = model.d;

  // One pass over all 2^d assignments; each pair accumulates the conditional
  // over assignments where both its covariates are +1.
  std::vector<double> sums(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<std::int8_t> x(d);
  std::vector<int> plus;
  plus.reserve(d);
  const std::uint64_t total = std::uint64_t{1} << d;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    plus.clear();
    for (int b = 0; b < d; ++b) {
      const bool up = (mask >> b) & 1;
      x[b] = up ? +1 : -1;
      if (up) plus.push_back(b);
    }
    const double p = conditional_prob(model, x);
    for (std::size_t a = 0; a < plus.size(); ++a) {
      for (std::size_t b = a + 1; b < plus.size(); ++b) {
        sums[static_cast<std::size_t>(plus[a]) * d + plus[b]] += p;
      }
    }
  }

  WeightAssignment w;
  w.d = d;
  w.kind = WeightKind::exact;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      const double sum = sums[static_cast<std::size_t>(i - 1) * d + (j - 1)];
      w.weights.emplace(Edge(i, j), std::fabs(std::ldexp(sum, 3 - d) - 1.0));
    }
  }
  return w;
}

// --- Bit-packed sample counting ---------------------------------------------

namespace {

struct BitColumns {
  std::int64_t n = 0;
  int d = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> cols;  // d blocks of `words`; bit t: x[t,i] == +1
  std::vector<std::uint64_t> ypos;  // bit t: y[t] == +1
  std::vector<std::uint64_t> tail;  // valid-sample mask (all columns share it)

  explicit BitColumns(const Dataset& data) {
    n = data.n;
    d = data.d;
    words = static_cast<std::size_t>((n + 63) / 64);
    cols.assign(words * d, 0);
    ypos.assign(words, 0);
    tail.assign(words, ~std::uint64_t{0});
    for (std::int64_t t = 0; t < n; ++t) {
      const std::size_t word = static_cast<std::size_t>(t >> 6);
      const std::uint64_t bit = std::uint64_t{1} << (t & 63);
      const auto row = data.row(t);
      for (int i = 0; i < d; ++i) {
        if (row[i] > 0) cols[words * i + word] |= bit;
      }
      if (data.y[t] > 0) ypos[word] |= bit;
    }
    if (n % 64 != 0 && words > 0) {
      tail[words - 1] = (std::uint64_t{1} << (n % 64)) - 1;
    }
  }

  const std::uint64_t* col(int i) const { return cols.data() + words * (i - 1); }

  // #{t : x_i=+1, x_j=+1, y=+1}
  std::int64_t count_pp(int i, int j) const {
    const std::uint64_t* a = col(i);
    const std::uint64_t* b = col(j);
    std::int64_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w] & b[w] & ypos[w]);
    return c;
  }

  // #{t : x_i=-1, x_j=-1, y=+1}
  std::int64_t count_mm(int i, int j) const {
    const std::uint64_t* a = col(i);
    const std::uint64_t* b = col(j);
    std::int64_t c = 0;
    for (std::size_t w = 0; w < words; ++w)
      c += std::popcount(~a[w] & ~b[w] & ypos[w] & tail[w]);
    return c;
  }

  // #{t : x_i=+1, y=+1}
  std::int64_t count_p(int i) const {
    const std::uint64_t* a = col(i);
    std::int64_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w] & ypos[w]);
    return c;
  }
};

}  // namespace

WeightAssignment empirical_weights(const Dataset& data) {
  if (data.n < 1) throw ParameterError("empirical_weights: empty dataset");
  const BitColumns bits(data);
  WeightAssignment w;
  w.d = data.d;
  w.kind = WeightKind::empirical;
  const double n = static_cast<double>(data.n);
  for (int i = 1; i <= data.d; ++i) {
    for (int j = i + 1; j <= data.d; ++j) {
      const double count = static_cast<double>(bits.count_pp(i, j));
      w.weights.emplace(Edge(i, j), std::fabs(8.0 * count / n - 1.0));
    }
  }
  return w;
}

double separation_constant(int d, double lambda, double mu) {
  if (d < 1) throw ParameterError("separation_constant: d must be positive");
  if (!(lambda > 0.0) || !(lambda <= mu) || !std::isfinite(mu)) {
    throw ParameterError("separation_constant: need 0 < lambda <= mu, finite");
  }
  return std::sqrt(2.0 / (std::numbers::pi * d)) *
         (sigmoid(lambda + 3.0 * mu) - sigmoid(-lambda + 3.0 * mu));
}

// --- Extended weights --------------------------------------------------------

WeightAssignment extended_exact_weights(const ModelSpec& model, ExtendedExactMode mode) {
  if (mode == ExtendedExactMode::augmented_oracle) {
    WeightAssignment w = exact_weights(augment_to_pure_interaction(model));
    w.kind = WeightKind::extended_exact;
    return w;
  }

  require_enumerable(model.d + 1, "extended_exact_weights");
  const int d = model.d;
  const int aux = d + 1;

  // Single pass over all 2^d assignments of the original model, accumulating
  // the conditional over the cells each closed form needs.
  std::vector<double> sum_pp(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> sum_mm(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> sum_p(d, 0.0);
  std::vector<std::int8_t> x(d);
  const std::uint64_t total = std::uint64_t{1} << d;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int b = 0; b < d; ++b) x[b] = (mask >> b) & 1 ? +1 : -1;
    const double p = conditional_prob(model, x);
    for (int a = 0; a < d; ++a) {
      if (x[a] < 0) continue;
      sum_p[a] += p;
      for (int b = a + 1; b < d; ++b) {
        if (x[b] > 0) sum_pp[static_cast<std::size_t>(a) * d + b] += p;
      }
    }
    for (int a = 0; a < d; ++a) {
      if (x[a] > 0) continue;
      for (int b = a + 1; b < d; ++b) {
        if (x[b] < 0) sum_mm[static_cast<std::size_t>(a) * d + b] += p;
      }
    }
  }

  WeightAssignment w;
  w.d = aux;
  w.kind = WeightKind::extended_exact;
  for (int i = 1; i <= d; ++i) {
    // |2 Pr(y=+1 | x_i=+1) - 1|
    const double p_cond = std::ldexp(sum_p[i - 1], -(d - 1));
    w.weights.emplace(Edge(i, aux), std::fabs(2.0 * p_cond - 1.0));
    for (int j = i + 1; j <= d; ++j) {
      // |Pr(y=+1|x_i=+1,x_j=+1) + Pr(y=+1|x_i=-1,x_j=-1) - 1|
      const std::size_t idx = static_cast<std::size_t>(i - 1) * d + (j - 1);
      const double p_both = std::ldexp(sum_pp[idx] + sum_mm[idx], -(d - 2));
      w.weights.emplace(Edge(i, j), std::fabs(p_both - 1.0));
    }
  }
  return w;
}

WeightAssignment extended_empirical_weights(const Dataset& data) {
  if (data.n < 1) throw ParameterError("extended_empirical_weights: empty dataset");
  const BitColumns bits(data);
  WeightAssignment w;
  w.d = data.d + 1;
  w.kind = WeightKind::extended_empirical;
  const double n = static_cast<double>(data.n);
  const int aux = data.d + 1;
  for (int i = 1; i <= data.d; ++i) {
    const double count_single = static_cast<double>(bits.count_p(i));
    w.weights.emplace(Edge(i, aux), std::fabs(4.0 * count_single / n - 1.0));
    for (int j = i + 1; j <= data.d; ++j) {
      const double count = static_cast<double>(bits.count_pp(i, j) + bits.count_mm(i, j));
      w.weights.emplace(Edge(i, j), std::fabs(4.0 * count / n - 1.0));
    }
  }
  return w;
}

// --- Decomposition and concentration checks ---------------------------------

double influence_contribution(const ModelSpec& model, Edge pair,
                              std::span<const std::int8_t> x) {
  require_pure_interaction(model, "influence_contribution");
  check_pair_range(pair, model.d, "influence_contribution");
  if (static_cast<int>(x.size()) != model.d) {
    throw DimensionError("influence_contribution: covariate vector length != d");
  }
  double rest = 0.0;
  double beta_pair = 0.0;
  for (const auto& [e, beta] : model.pairwise) {
    if (e == pair) {
      beta_pair = beta;
      continue;
    }
    rest += x[e.i - 1] == x[e.j - 1] ? beta : -beta;
  }
  return sigmoid(beta_pair + rest) - sigmoid(-beta_pair + rest);
}

double influence_decomposition_residual(const ModelSpec& model, Edge pair) {
  require_pure_interaction(model, "influence_decomposition_residual");
  if (model.d > 16) {
    throw ResourceError("influence_decomposition_residual: d exceeds the cap of 16");
  }
  check_pair_range(pair, model.d, "influence_decomposition_residual");

  std::vector<std::int8_t> x(model.d);
  x[pair.i - 1] = +1;
  x[pair.j - 1] = +1;
  double lhs_sum = 0.0;  // (Pr(y=+1|x) - Pr(y=-1|x)) summed over completions
  double rhs_sum = 0.0;  // per-assignment contributions
  for_each_completion(x, free_indices(model.d, {pair.i, pair.j}),
                      [&](const std::vector<std::int8_t>& v) {
                        const double p = conditional_prob(model, v);
                        lhs_sum += p - (1.0 - p);
                        rhs_sum += influence_contribution(model, pair, v);
                      });
  return std::fabs(std::ldexp(lhs_sum - rhs_sum, -(model.d - 2)));
}

double small_ball_probability(std::span<const double> coeffs) {
  const int q = static_cast<int>(coeffs.size());
  if (q < 1) throw ParameterError("small_ball_probability: need at least one coefficient");
  if (q > 20) throw ResourceError("small_ball_probability: q exceeds the cap of 20");
  double a_max = 0.0;
  for (double a : coeffs) a_max = std::max(a_max, std::fabs(a));
  const std::uint64_t total = std::uint64_t{1} << q;
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double s = 0.0;
    for (int b = 0; b < q; ++b) s += (mask >> b) & 1 ? coeffs[b] : -coeffs[b];
    if (std::fabs(s) <= a_max) ++hits;
  }
  return std::ldexp(static_cast<double>(hits), -q);
}

double small_ball_lower_bound(int q) {
  if (q < 1) throw ParameterError("small_ball_lower_bound: q must be positive");
  return std::sqrt(2.0 / (std::numbers::pi * (q + 2)));
}

double conditional_prob_given(const ModelSpec& model,
                              const std::map<int, std::int8_t>& fixed) {
  std::vector<std::int8_t> x(model.d, 0);
  std::vector<int> free_idx;
  for (const auto& [i, v] : fixed) {
    if (i < 1 || i > model.d) {
      throw DimensionError("conditional_prob_given: index out of range");
    }
    if (v != +1 && v != -1) {
      throw ParameterError("conditional_prob_given: values must be +1 or -1");
    }
    x[i - 1] = v;
  }
  for (int i = 1; i <= model.d; ++i) {
    if (!fixed.contains(i)) free_idx.push_back(i);
  }
  if (static_cast<int>(free_idx.size()) > kExactEnumerationMaxD) {
    throw ResourceError("conditional_prob_given: too many free covariates");
  }
  double sum = 0.0;
  for_each_completion(x, free_idx, [&](const std::vector<std::int8_t>& v) {
    sum += conditional_prob(model, v);
  });
  return std::ldexp(sum, -static_cast<int>(free_idx.size()));
}

void write_weights_csv(const WeightAssignment& weights, std::ostream& out) {
  const int aux = weights.extended() ? weights.d : 0;
  out << "i,j,weight\n";
  out.precision(17);
  for (const auto& [e, value] : weights.weights) {
    int i = e.i, j = e.j;
    if (aux != 0 && j == aux) {
      j = i;
      i = 0;  // auxiliary vertex serializes as 0
    }
    out << i << ',' << j << ',' << value << '\n';
  }
}

}  // namespace interact
