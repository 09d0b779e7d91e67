#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sln/kernel.hpp"
#include "sln/learners.hpp"

namespace sln {

struct GeneratorConfig {
  enum class Kind { long_servedio, mease, blobs, csv, libsvm };

  Kind kind = Kind::long_servedio;
  double gamma = 0.5;        // long_servedio
  double separation = 2.0;   // blobs
  int dim = 2;               // blobs
  std::string path;          // csv / libsvm
  double train_fraction = 0.8;
  bool standardize = false;
};

struct ExperimentConfig {
  std::vector<std::string> losses{"hinge", "tlogistic", "unhinged"};
  std::vector<double> rhos{0.0, 0.1, 0.2, 0.3, 0.4, 0.49};
  int trials = 125;
  Eigen::Index n_train = 800;
  Eigen::Index n_test = 1000;
  GeneratorConfig generator;
  double lambda = 1e-16;
  KernelSpec kernel;
  bool tune_threshold = false;
  bool use_bias = false;
  std::uint64_t base_seed = 0;
  std::vector<std::string> metrics{"zero_one"};
  /// "auto" (closed form where one exists, else gradient), "closed", "grad", "grid".
  std::string optimizer = "auto";
  GradientOptions gradient;
  int jobs = 1;

  nlohmann::json to_json() const;
  /// Keys missing from `doc` keep the values in `defaults`; unknown keys throw.
  static ExperimentConfig from_json(const nlohmann::json& doc, const ExperimentConfig& defaults);
  static ExperimentConfig from_json(const nlohmann::json& doc);
};

struct ExperimentRow {
  std::string loss;
  double rho;
  std::string metric;  // "zero_one" or "one_minus_auc"
  double mean;
  double std;          // population standard deviation over successful trials
  int trials;          // successful trials
  int failed;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  nlohmann::json metadata;

  const ExperimentRow* find(const std::string& loss, double rho, const std::string& metric) const;
  /// Columns loss,rho,metric,mean,std,trials.
  std::string to_csv() const;
  /// One table per metric: rows are noise rates, columns losses, best mean in bold.
  std::string to_markdown() const;
};

/// Trial t uses seed base_seed + t for its train/test draw; the training
/// sample is corrupted at each rho, every loss is fitted on the corrupted
/// sample and scored on the clean test sample.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Optimizer chosen by "auto" for a loss name.
Optimizer resolve_optimizer(const ExperimentConfig& config, const std::string& loss_name);

std::string format_real(double x);

}  // namespace sln
