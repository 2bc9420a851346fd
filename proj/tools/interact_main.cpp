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

// Command-line front end: model/data generation, exact influence weights,
// structure detection, feature-selection baselines, batch experiments, and
// the sample-complexity curve fit.
//
// Exit codes: 0 success, 2 parameter error, 3 enumeration-cap error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "interact/baselines.hpp"
#include "interact/detector.hpp"
#include "interact/harness.hpp"
#include "interact/influence.hpp"
#include "interact/model.hpp"
#include "json.hpp"

namespace {

constexpr int kExitParameterError = 2;
constexpr int kExitResourceError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw interact::ParameterError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw interact::ParameterError("cannot write '" + path + "'");
  out << content;
}

interact::Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw interact::ParameterError("cannot open '" + path + "'");
  return interact::read_dataset_csv(in);
}

struct GenerateOptions {
  int d = 10;
  int k_individual = 5;
  int k_pairs = 5;
  double lambda = 0.3;
  double mu = 0.5;
  std::uint64_t seed = 1;
  std::int64_t n = 0;
  std::string model_in, model_out, data_out;
};

int run_generate(const GenerateOptions& opt) {
  interact::ModelSpec model;
  if (!opt.model_in.empty()) {
    model = interact::model_from_json(read_file(opt.model_in));
  } else {
    model = interact::random_acyclic_model(opt.d, opt.k_individual, opt.k_pairs,
                                           opt.lambda, opt.mu, opt.seed);
  }
  if (!opt.model_out.empty()) {
    write_output(opt.model_out, interact::model_to_json(model) + "\n");
  }
  if (!opt.data_out.empty()) {
    if (opt.n <= 0) {
      throw interact::ParameterError("--data-out requires a positive --n");
    }
    // The data stream is split from the model seed so that the same seed can
    // regenerate the model alone.
    const auto data =
        interact::sample_dataset(model, opt.n, interact::mix_seed(opt.seed, 1));
    std::ostringstream csv;
    interact::write_dataset_csv(data, csv);
    write_output(opt.data_out, csv.str());
  }
  if (opt.model_out.empty() && opt.data_out.empty()) {
    write_output("", interact::model_to_json(model) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise-interaction structure recovery for logistic models"};
  app.require_subcommand(1);

  // generate
  GenerateOptions gen;
  auto* generate = app.add_subcommand(
      "generate", "Generate a random acyclic model and optionally sample data");
  generate->add_option("--d", gen.d, "Number of covariates");
  generate->add_option("--k-individual", gen.k_individual, "Individual effects");
  generate->add_option("--k-pairs", gen.k_pairs, "Interaction pairs");
  generate->add_option("--lambda", gen.lambda, "Lower coefficient magnitude");
  generate->add_option("--mu", gen.mu, "Upper coefficient magnitude");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--n", gen.n, "Samples to draw (with --data-out)");
  generate->add_option("--model-in", gen.model_in,
                       "Load this model JSON instead of generating");
  generate->add_option("--model-out", gen.model_out, "Write the model JSON here");
  generate->add_option("--data-out", gen.data_out, "Write sampled CSV here");

  // exact-weights
  std::string ew_model, ew_out;
  bool ew_extended = false;
  auto* exact = app.add_subcommand("exact-weights",
                                   "Exact influence weights of a model (CSV)");
  exact->add_option("--model", ew_model, "Model JSON file")->required();
  exact->add_flag("--extended", ew_extended,
                  "Extended weights over the auxiliary vertex (written as 0)");
  exact->add_option("--out", ew_out, "Output CSV (default stdout)");

  // detect
  std::string det_data, det_out;
  double det_lambda = 0.0, det_mu = 0.0;
  bool det_extended = false;
  auto* det = app.add_subcommand("detect", "Recover the structure from samples");
  det->add_option("--data", det_data, "Dataset CSV file")->required();
  det->add_option("--lambda", det_lambda, "Lower coefficient magnitude")->required();
  det->add_option("--mu", det_mu, "Upper coefficient magnitude")->required();
  det->add_flag("--extended", det_extended, "Also recover individual effects");
  det->add_option("--out", det_out, "Output JSON (default stdout)");

  // baseline
  std::string base_data, base_method = "mi", base_out;
  int base_k = 0;
  auto* base = app.add_subcommand("baseline", "Feature-selection baselines");
  base->add_option("--data", base_data, "Dataset CSV file")->required();
  base->add_option("--method", base_method, "mi | mrmr | l1")->required();
  base->add_option("--k", base_k, "Number of features to select")->required();
  base->add_option("--out", base_out, "Output CSV (default stdout)");

  // experiment
  std::string exp_config, exp_out;
  int exp_threads = 0;
  auto* exp = app.add_subcommand("experiment", "Run a batch experiment");
  exp->add_option("--config", exp_config, "Experiment config JSON")->required();
  exp->add_option("--out", exp_out, "Results CSV (default stdout)");
  exp->add_option("--threads", exp_threads, "Worker threads (0 = hardware)");

  // fit-curve
  std::string fit_results, fit_method = "algorithm1", fit_out;
  auto* fit = app.add_subcommand(
      "fit-curve", "Fit rate(n) = 1 - B*exp(-n/c) to a results CSV");
  fit->add_option("--results", fit_results, "Results CSV from `experiment`")->required();
  fit->add_option("--method", fit_method, "Method rows to fit");
  fit->add_option("--out", fit_out, "Output JSON (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return run_generate(gen);
    }
    if (exact->parsed()) {
      const auto model = interact::model_from_json(read_file(ew_model));
      const auto weights =
          ew_extended
              ? interact::extended_exact_weights(model,
                                                 interact::ExtendedExactMode::identity)
              : interact::exact_weights(model);
      std::ostringstream csv;
      interact::write_weights_csv(weights, csv);
      write_output(ew_out, csv.str());
      return 0;
    }
    if (det->parsed()) {
      const auto data = load_dataset(det_data);
      const auto result = det_extended
                              ? interact::detect_extended(data, det_lambda, det_mu)
                              : interact::detect(data, det_lambda, det_mu);
      write_output(det_out, interact::detection_to_json(result) + "\n");
      return 0;
    }
    if (base->parsed()) {
      const auto data = load_dataset(base_data);
      interact::SelectionResult selection;
      if (base_method == "mi") {
        selection = interact::mi_ranking(data, base_k);
      } else if (base_method == "mrmr") {
        selection = interact::mrmr_select(data, base_k);
      } else if (base_method == "l1") {
        selection = interact::l1_support_of_size(data, base_k);
      } else {
        throw interact::ParameterError("unknown baseline method '" + base_method + "'");
      }
      std::ostringstream csv;
      interact::write_selection_csv(selection, csv);
      write_output(base_out, csv.str());
      return 0;
    }
    if (exp->parsed()) {
      const auto config = interact::config_from_json(read_file(exp_config));
      const auto cells = interact::run_experiment(config, exp_threads);
      std::ostringstream csv;
      interact::write_results_csv(cells, csv);
      write_output(exp_out, csv.str());
      return 0;
    }
    if (fit->parsed()) {
      std::ifstream in(fit_results);
      if (!in) throw interact::ParameterError("cannot open '" + fit_results + "'");
      const auto cells = interact::read_results_csv(in);
      const auto method = interact::method_from_name(fit_method);
      std::vector<std::pair<double, double>> points;
      for (const auto& c : cells) {
        if (c.method == method) {
          points.emplace_back(static_cast<double>(c.n), c.detection_rate);
        }
      }
      const auto curve = interact::fit_complexity_curve(points);
      nlohmann::json j;
      j["amplitude"] = curve.amplitude;
      j["efold_samples"] = curve.efold;
      j["residual"] = curve.residual;
      j["n_points"] = curve.n_points;
      write_output(fit_out, j.dump(2) + "\n");
      return 0;
    }
  } catch (const interact::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceError;
  } catch (const interact::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const interact::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const interact::DegenerateFitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
