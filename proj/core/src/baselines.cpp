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

#include "interact/baselines.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace interact {

FeatureId FeatureId::single(int i) {
  if (i < 1) throw ParameterError("FeatureId: index must be >= 1");
  return FeatureId{i, 0};
}

FeatureId FeatureId::pair(int a, int b) {
  if (a == b) throw ParameterError("FeatureId: pair of identical indices");
  if (a > b) std::swap(a, b);
  if (a < 1) throw ParameterError("FeatureId: index must be >= 1");
  return FeatureId{a, b};
}

std::vector<FeatureId> all_features(int d) {
  std::vector<FeatureId> features;
  features.reserve(d + d * (d - 1) / 2);
  for (int i = 1; i <= d; ++i) features.push_back(FeatureId::single(i));
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) features.push_back(FeatureId::pair(i, j));
  }
  return features;
}

int feature_value(FeatureId f, std::span<const std::int8_t> x) {
  const int d = static_cast<int>(x.size());
  if (f.i < 1 || f.i > d || (f.is_pair() && f.j > d)) {
    throw DimensionError("feature_value: feature index out of range");
  }
  if (!f.is_pair()) return x[f.i - 1];
  return x[f.i - 1] == x[f.j - 1] ? +1 : -1;
}

namespace {

// Empirical 2x2 table of two +/-1 columns, then
// MI = sum_cells (c/n) * ln(c*n / (row*col)).
double table_mi(const std::int64_t counts[2][2], std::int64_t n) {
  const std::int64_t row[2] = {counts[0][0] + counts[0][1], counts[1][0] + counts[1][1]};
  const std::int64_t col[2] = {counts[0][0] + counts[1][0], counts[0][1] + counts[1][1]};
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::int64_t c = counts[a][b];
      if (c == 0) continue;
      const double ratio = static_cast<double>(c) * static_cast<double>(n) /
                           (static_cast<double>(row[a]) * static_cast<double>(col[b]));
      mi += static_cast<double>(c) / static_cast<double>(n) * std::log(ratio);
    }
  }
  return mi;
}

}  // namespace

double plug_in_mi(FeatureId f, const Dataset& data) {
  if (data.n < 1) throw ParameterError("plug_in_mi: empty dataset");
  std::int64_t counts[2][2] = {{0, 0}, {0, 0}};
  for (std::int64_t t = 0; t < data.n; ++t) {
    const int a = feature_value(f, data.row(t)) > 0;
    const int b = data.y[t] > 0;
    ++counts[a][b];
  }
  return table_mi(counts, data.n);
}

double plug_in_mi(FeatureId f, FeatureId g, const Dataset& data) {
  if (data.n < 1) throw ParameterError("plug_in_mi: empty dataset");
  std::int64_t counts[2][2] = {{0, 0}, {0, 0}};
  for (std::int64_t t = 0; t < data.n; ++t) {
    const auto row = data.row(t);
    ++counts[feature_value(f, row) > 0][feature_value(g, row) > 0];
  }
  return table_mi(counts, data.n);
}

SelectionResult mi_ranking(const Dataset& data, int k) {
  const auto features = all_features(data.d);
  if (k < 0 || k > static_cast<int>(features.size())) {
    throw ParameterError("mi_ranking: k out of range");
  }
  std::vector<ScoredFeature> scored;
  scored.reserve(features.size());
  for (const FeatureId& f : features) scored.push_back({f, plug_in_mi(f, data)});
  std::sort(scored.begin(), scored.end(), [](const ScoredFeature& a, const ScoredFeature& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  scored.resize(k);
  return SelectionResult{std::move(scored), false};
}

SelectionResult mrmr_select(const Dataset& data, int k) {
  const auto features = all_features(data.d);
  const int p = static_cast<int>(features.size());
  if (k < 0 || k > p) throw ParameterError("mrmr_select: k out of range");

  std::vector<double> relevance(p);
  for (int f = 0; f < p; ++f) relevance[f] = plug_in_mi(features[f], data);
  std::vector<double> redundancy_sum(p, 0.0);
  std::vector<bool> picked(p, false);

  SelectionResult result;
  result.selected.reserve(k);
  for (int round = 0; round < k; ++round) {
    int best = -1;
    double best_score = 0.0;
    for (int f = 0; f < p; ++f) {
      if (picked[f]) continue;
      const double score =
          round == 0 ? relevance[f] : relevance[f] - redundancy_sum[f] / round;
      if (best < 0 || score > best_score) {  // canonical order wins ties
        best = f;
        best_score = score;
      }
    }
    picked[best] = true;
    result.selected.push_back({features[best], best_score});
    for (int f = 0; f < p; ++f) {
      if (!picked[f]) redundancy_sum[f] += plug_in_mi(features[f], features[best], data);
    }
  }
  return result;
}

// --- Logistic regression ----------------------------------------------------

namespace {

// log(1 + exp(-m)) without overflow.
double logistic_loss(double margin) {
  if (margin >= 0.0) return std::log1p(std::exp(-margin));
  return -margin + std::log1p(std::exp(margin));
}

// Linear scores s_t for coefficients w over the given features; columns are
// produced on the fly from the +/-1 covariates.
void compute_scores(const Dataset& data, const std::vector<FeatureId>& features,
                    const std::vector<double>& w, std::vector<double>& s) {
  s.assign(data.n, 0.0);
  for (std::size_t f = 0; f < features.size(); ++f) {
    const double wf = w[f];
    if (wf == 0.0) continue;
    const FeatureId id = features[f];
    if (!id.is_pair()) {
      const std::int8_t* col = data.x.data() + (id.i - 1);
      for (std::int64_t t = 0; t < data.n; ++t) {
        s[t] += col[t * data.d] > 0 ? wf : -wf;
      }
    } else {
      const std::int8_t* ci = data.x.data() + (id.i - 1);
      const std::int8_t* cj = data.x.data() + (id.j - 1);
      for (std::int64_t t = 0; t < data.n; ++t) {
        s[t] += ci[t * data.d] == cj[t * data.d] ? wf : -wf;
      }
    }
  }
}

// Mean logistic loss and its gradient d/dw at the given scores.
double loss_and_gradient(const Dataset& data, const std::vector<FeatureId>& features,
                         const std::vector<double>& s, std::vector<double>& grad) {
  const double inv_n = 1.0 / static_cast<double>(data.n);
  std::vector<double> residual(data.n);
  double loss = 0.0;
  for (std::int64_t t = 0; t < data.n; ++t) {
    const double margin = data.y[t] > 0 ? s[t] : -s[t];
    loss += logistic_loss(margin);
    const double r = -sigmoid(-margin);  // d loss / d margin
    residual[t] = (data.y[t] > 0 ? r : -r) * inv_n;
  }
  grad.assign(features.size(), 0.0);
  for (std::size_t f = 0; f < features.size(); ++f) {
    const FeatureId id = features[f];
    double g = 0.0;
    if (!id.is_pair()) {
      const std::int8_t* col = data.x.data() + (id.i - 1);
      for (std::int64_t t = 0; t < data.n; ++t) {
        g += col[t * data.d] > 0 ? residual[t] : -residual[t];
      }
    } else {
      const std::int8_t* ci = data.x.data() + (id.i - 1);
      const std::int8_t* cj = data.x.data() + (id.j - 1);
      for (std::int64_t t = 0; t < data.n; ++t) {
        g += ci[t * data.d] == cj[t * data.d] ? residual[t] : -residual[t];
      }
    }
    grad[f] = g;
  }
  return loss * inv_n;
}

double l1_norm(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += std::fabs(v);
  return s;
}

// Stationarity residual of the L1 objective.
double kkt_residual(const std::vector<double>& w, const std::vector<double>& grad,
                    double reg) {
  double res = 0.0;
  for (std::size_t f = 0; f < w.size(); ++f) {
    double r;
    if (w[f] != 0.0) {
      r = std::fabs(grad[f] + (w[f] > 0.0 ? reg : -reg));
    } else {
      r = std::max(0.0, std::fabs(grad[f]) - reg);
    }
    res = std::max(res, r);
  }
  return res;
}

constexpr int kL1MaxIterations = 10000;
constexpr double kL1KktTol = 1e-6;

// Proximal-gradient solver; `w` is the warm start and receives the solution.
LogRegFit l1_solve(const Dataset& data, const std::vector<FeatureId>& features,
                   double reg, std::vector<double>& w) {
  const double step = 4.0 / static_cast<double>(features.size());  // 1/L
  std::vector<double> s, grad;
  LogRegFit fit;

  compute_scores(data, features, w, s);
  double loss = loss_and_gradient(data, features, s, grad);
  double objective = loss + reg * l1_norm(w);
  fit.objective_trace.push_back(objective);

  while (fit.iterations < kL1MaxIterations) {
    if (kkt_residual(w, grad, reg) < kL1KktTol) {
      fit.converged = true;
      break;
    }
    for (std::size_t f = 0; f < w.size(); ++f) {
      const double v = w[f] - step * grad[f];
      const double shrink = reg * step;
      w[f] = v > shrink ? v - shrink : (v < -shrink ? v + shrink : 0.0);
    }
    ++fit.iterations;
    compute_scores(data, features, w, s);
    loss = loss_and_gradient(data, features, s, grad);
    const double next = loss + reg * l1_norm(w);
    fit.objective_trace.push_back(next);
    if (next == objective) {  // progress below floating-point resolution
      fit.converged = kkt_residual(w, grad, reg) < kL1KktTol;
      break;
    }
    objective = next;
  }
  if (!fit.converged && fit.iterations >= kL1MaxIterations) {
    fit.converged = kkt_residual(w, grad, reg) < kL1KktTol;
  }

  fit.objective = objective;
  for (std::size_t f = 0; f < features.size(); ++f) {
    if (w[f] != 0.0) fit.coefficients.emplace(features[f], w[f]);
  }
  return fit;
}

}  // namespace

LogRegFit l1_logreg(const Dataset& data, double reg) {
  if (data.n < 1) throw ParameterError("l1_logreg: empty dataset");
  if (reg < 0.0) throw ParameterError("l1_logreg: reg must be nonnegative");
  const auto features = all_features(data.d);
  std::vector<double> w(features.size(), 0.0);
  return l1_solve(data, features, reg, w);
}

SelectionResult l1_support_of_size(const Dataset& data, int k) {
  if (data.n < 1) throw ParameterError("l1_support_of_size: empty dataset");
  const auto features = all_features(data.d);
  const int p = static_cast<int>(features.size());
  if (k < 0 || k > p) throw ParameterError("l1_support_of_size: k out of range");

  SelectionResult result;
  if (k == 0) return result;

  // reg at or above the sup-norm of the gradient at zero yields the all-zero
  // solution, so the path lives in [0, reg_hi].
  std::vector<double> w(features.size(), 0.0);
  std::vector<double> s, grad;
  compute_scores(data, features, w, s);
  loss_and_gradient(data, features, s, grad);
  double reg_hi = 0.0;
  for (double g : grad) reg_hi = std::max(reg_hi, std::fabs(g));
  double reg_lo = 0.0;

  const auto support_size = [](const LogRegFit& fit) {
    return static_cast<int>(fit.coefficients.size());
  };

  LogRegFit best;        // smallest support of size >= k seen so far
  int best_size = p + 1;
  bool have_exact = false;

  // reg = 0 is the densest point of the path; probe it first.
  std::fill(w.begin(), w.end(), 0.0);
  LogRegFit fit = l1_solve(data, features, 0.0, w);
  if (support_size(fit) < k) {
    // Fewer than k features ever enter the path; pad from canonical order.
    result.truncated = true;
    for (const auto& [id, coef] : fit.coefficients) {
      result.selected.push_back({id, std::fabs(coef)});
    }
    std::sort(result.selected.begin(), result.selected.end(),
              [](const ScoredFeature& a, const ScoredFeature& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.id < b.id;
              });
    for (const FeatureId& id : features) {
      if (static_cast<int>(result.selected.size()) == k) break;
      if (!fit.coefficients.contains(id)) result.selected.push_back({id, 0.0});
    }
    return result;
  }
  if (support_size(fit) == k) {
    best = std::move(fit);
    have_exact = true;
  } else {
    best = std::move(fit);
    best_size = support_size(best);
  }

  for (int iter = 0; iter < 64 && !have_exact; ++iter) {
    const double reg = 0.5 * (reg_lo + reg_hi);
    fit = l1_solve(data, features, reg, w);  // warm start from previous probe
    const int size = support_size(fit);
    if (size == k) {
      best = std::move(fit);
      have_exact = true;
      break;
    }
    if (size > k) {
      if (size < best_size) {
        best = fit;
        best_size = size;
      }
      reg_lo = reg;  // too dense: more regularization
    } else {
      reg_hi = reg;  // too sparse: less regularization
    }
  }

  for (const auto& [id, coef] : best.coefficients) {
    result.selected.push_back({id, std::fabs(coef)});
  }
  std::sort(result.selected.begin(), result.selected.end(),
            [](const ScoredFeature& a, const ScoredFeature& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  if (!have_exact) {
    result.selected.resize(k);  // documented fallback: keep the k largest
    result.truncated = true;
  }
  return result;
}

LogRegFit fit_logistic(const Dataset& data, const std::vector<FeatureId>& support) {
  if (data.n < 1) throw ParameterError("fit_logistic: empty dataset");
  if (support.empty()) throw ParameterError("fit_logistic: empty support");
  const int p = static_cast<int>(support.size());

  std::vector<double> w(p, 0.0), s, grad;
  LogRegFit fit;
  constexpr int kMaxNewtonIterations = 200;
  constexpr double kGradTol = 1e-8;

  compute_scores(data, support, w, s);
  double loss = loss_and_gradient(data, support, s, grad);
  fit.objective_trace.push_back(loss);

  while (fit.iterations < kMaxNewtonIterations) {
    double grad_norm = 0.0;
    for (double g : grad) grad_norm = std::max(grad_norm, std::fabs(g));
    if (grad_norm < kGradTol) {
      fit.converged = true;
      break;
    }

    // Newton direction on the weighted normal equations.
    Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(p, p);
    {
      const double inv_n = 1.0 / static_cast<double>(data.n);
      std::vector<double> z(p);
      for (std::int64_t t = 0; t < data.n; ++t) {
        const auto row = data.row(t);
        for (int f = 0; f < p; ++f) z[f] = feature_value(support[f], row);
        const double pr = sigmoid(s[t]);
        const double weight = pr * (1.0 - pr) * inv_n;
        for (int a = 0; a < p; ++a) {
          for (int b = a; b < p; ++b) {
            hessian(a, b) += weight * z[a] * z[b];
          }
        }
      }
      for (int a = 0; a < p; ++a) {
        for (int b = 0; b < a; ++b) hessian(a, b) = hessian(b, a);
        hessian(a, a) += 1e-12;
      }
    }
    Eigen::VectorXd neg_grad(p);
    for (int f = 0; f < p; ++f) neg_grad(f) = -grad[f];
    const Eigen::VectorXd direction = hessian.ldlt().solve(neg_grad);

    // Backtracking line search (Armijo).
    double directional = 0.0;
    for (int f = 0; f < p; ++f) directional += grad[f] * direction(f);
    double t_step = 1.0;
    bool accepted = false;
    std::vector<double> w_next(p);
    for (int halving = 0; halving < 60; ++halving) {
      for (int f = 0; f < p; ++f) w_next[f] = w[f] + t_step * direction(f);
      compute_scores(data, support, w_next, s);
      double trial_loss = 0.0;
      for (std::int64_t t = 0; t < data.n; ++t) {
        trial_loss += logistic_loss(data.y[t] > 0 ? s[t] : -s[t]);
      }
      trial_loss /= static_cast<double>(data.n);
      if (trial_loss <= loss + 1e-4 * t_step * directional) {
        w = w_next;
        loss = trial_loss;
        accepted = true;
        break;
      }
      t_step *= 0.5;
    }
    ++fit.iterations;
    if (!accepted) break;  // no descent step found; leave converged=false

    double w_max = 0.0;
    for (double v : w) w_max = std::max(w_max, std::fabs(v));
    if (w_max > kLogisticCoefficientCap) {
      // Diverging MLE (separable data): cap and flag.
      for (double& v : w) {
        v = std::clamp(v, -kLogisticCoefficientCap, kLogisticCoefficientCap);
      }
      compute_scores(data, support, w, s);
      loss = loss_and_gradient(data, support, s, grad);
      fit.objective_trace.push_back(loss);
      break;
    }

    compute_scores(data, support, w, s);
    loss = loss_and_gradient(data, support, s, grad);
    fit.objective_trace.push_back(loss);
  }

  fit.objective = loss;
  for (int f = 0; f < p; ++f) fit.coefficients.emplace(support[f], w[f]);
  return fit;
}

int predict(const LogRegFit& fit, std::span<const std::int8_t> x) {
  double score = 0.0;
  for (const auto& [id, coef] : fit.coefficients) {
    score += coef * feature_value(id, x);
  }
  return score >= 0.0 ? +1 : -1;
}

double accuracy(const LogRegFit& fit, const Dataset& test) {
  if (test.n < 1) throw ParameterError("accuracy: empty dataset");
  std::int64_t correct = 0;
  for (std::int64_t t = 0; t < test.n; ++t) {
    if (predict(fit, test.row(t)) == test.y[t]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.n);
}

void write_selection_csv(const SelectionResult& selection, std::ostream& out) {
  out << "rank,kind,i,j,score\n";
  out.precision(17);
  int rank = 1;
  for (const ScoredFeature& sf : selection.selected) {
    out << rank++ << ',' << (sf.id.is_pair() ? "pair" : "single") << ',' << sf.id.i << ',';
    if (sf.id.is_pair()) out << sf.id.j;
    out << ',' << sf.score << '\n';
  }
}

}  // namespace interact
