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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "interact/model.hpp"

namespace interact {

enum class Method { algorithm1, mi, mrmr, l1 };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// Batch experiment: n_models random models per (method, sample size) cell,
// each trial sampling its own training and test data.
struct ExperimentConfig {
  int d = 10;
  int k_individual = 5;
  int k_pairs = 5;
  double lambda = 0.3;
  double mu = 0.5;
  std::vector<std::int64_t> sample_sizes;
  int n_models = 300;
  int n_test = 200;
  std::vector<Method> methods;
  std::uint64_t master_seed = 1;

  void validate() const;
};

struct TrialResult {
  int model_index = 0;
  Method method = Method::algorithm1;
  std::int64_t n = 0;
  bool exact_detection = false;  // recovered feature set == true feature set
  int n_missed = 0;              // true features not recovered
  int n_false = 0;               // recovered features not in the truth
  double accuracy = 0.0;         // outcome prediction on fresh test samples
  std::uint64_t seed = 0;        // the derived trial seed
};

// Per-trial seed: the master seed mixed with the model index, the sample
// size, and the method ordinal (in that order) through mix_seed. Model
// generation, training data and test data then use the sub-streams
// mix_seed(trial_seed, 0..2).
std::uint64_t trial_seed(std::uint64_t master_seed, int model_index,
                         std::int64_t n, Method method);

// One trial: generate a model, draw n training samples, recover the feature
// set with the given method (algorithm1 = extended detection; the selection
// baselines receive the true feature count), refit a plain logistic model on
// the recovered support, and score prediction accuracy on n_test fresh
// samples. Deterministic in its arguments.
TrialResult run_trial(const ExperimentConfig& config, int model_index,
                      std::int64_t n, Method method);

// One aggregate row per (method, sample size) cell.
struct CellStats {
  Method method = Method::algorithm1;
  std::int64_t n = 0;
  double detection_rate = 0.0;
  double fp_rate = 0.0;  // sum of false positives / (n_models * true count)
  double mean_accuracy = 0.0;
  double stderr_detection = 0.0;  // sqrt(p(1-p)/n_models)
  int n_models = 0;
};

// Runs every trial of the config (methods x sample_sizes x n_models), in
// parallel over trials when threads != 1, and aggregates per cell. Integer
// counts are summed in a fixed order, so the output is identical for every
// thread count. threads <= 0 selects the hardware concurrency.
std::vector<CellStats> run_experiment(const ExperimentConfig& config, int threads = 0);

// Least-squares fit of detection rate r(n) = 1 - B * exp(-n / c) from
// (n, rate) points, via linear regression of log(1 - rate) on n; points with
// rate >= 1 are excluded. Requires at least two usable points with distinct
// n (DegenerateFitError otherwise). residual is the sum of squared errors in
// rate space over the fitted points.
struct ComplexityCurveFit {
  double amplitude = 0.0;  // B
  double efold = 0.0;      // c, in samples
  double residual = 0.0;
  int n_points = 0;
};

ComplexityCurveFit fit_complexity_curve(
    std::span<const std::pair<double, double>> points);

// --- Config and results files ------------------------------------------------
//
// Config: JSON mirroring ExperimentConfig. "n_test" defaults to 200 and
// "methods" to all four when absent.
// Results: CSV with header
//   method,n,detection_rate,fp_rate,accuracy,stderr_detection,n_models

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

void write_results_csv(const std::vector<CellStats>& cells, std::ostream& out);
std::vector<CellStats> read_results_csv(std::istream& in);

}  // namespace interact
