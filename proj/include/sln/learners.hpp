#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sln/dataset.hpp"
#include "sln/kernel.hpp"
#include "sln/loss.hpp"

namespace sln {

/// Raised when an iterative fit meets a non-finite objective or gradient.
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by closed-form solvers whose linear system has no unique solution.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either a weight vector over an explicit feature map (linear or rff) or a
/// kernel expansion sum_i c_i k(p_i, .). classify() thresholds the raw score.
class Scorer {
 public:
  enum class Form { linear, kernel_expansion };

  static Scorer linear(Vector weights, const KernelSpec& features = KernelSpec::linear(),
                       int input_dim = -1, double bias = 0.0);
  static Scorer kernel_expansion(Matrix points, Vector coeffs, const KernelSpec& spec,
                                 double bias = 0.0);

  Form form() const noexcept { return form_; }
  const KernelSpec& kernel() const noexcept { return spec_; }
  int input_dim() const noexcept { return input_dim_; }
  const Vector& weights() const noexcept { return weights_; }
  const Matrix& points() const noexcept { return points_; }
  const Vector& coeffs() const noexcept { return weights_; }
  double bias() const noexcept { return bias_; }

  double threshold() const noexcept { return threshold_; }
  void set_threshold(double t) { threshold_ = t; }

  /// Raw score s(x), threshold not applied.
  double score(const VectorRef& x) const;
  Vector scores(const Matrix& rows) const;
  /// sign(s(x) - threshold) with sign(0) = +1.
  int classify(const VectorRef& x) const;

  nlohmann::json to_json() const;
  static Scorer from_json(const nlohmann::json& doc);

 private:
  Scorer() = default;

  Form form_ = Form::linear;
  KernelSpec spec_;
  int input_dim_ = 0;
  Vector weights_;  // weights (linear) or expansion coefficients
  Matrix points_;
  std::shared_ptr<const FeatureMap> features_;
  double bias_ = 0.0;
  double threshold_ = 0.0;
};

/// A sample or a population, viewed as weighted support points.
class TrainingData {
 public:
  TrainingData(const SampleDataset& sample);      // NOLINT(google-explicit-constructor)
  TrainingData(const PopulationDataset& population);  // NOLINT(google-explicit-constructor)
  TrainingData(const TrainingData&) = delete;
  TrainingData& operator=(const TrainingData&) = delete;

  const PopulationDataset& population() const noexcept { return *view_; }
  /// mass_i * (2 eta_i - 1): the per-point weight of E[Y f(X)].
  Vector signed_mass() const;

 private:
  std::optional<PopulationDataset> owned_;
  const PopulationDataset* view_;
};

struct ClosedForm {};

struct GradientOptions {
  int max_iters = 5000;
  double step = 1.0;
  double tol = 1e-9;
  int restarts = 5;  // extra random starts, used for non-convex losses only
};

struct GridOptions {
  double lo = -10.0;
  double hi = 10.0;
  double resolution = 0.025;
};

using Optimizer = std::variant<ClosedForm, GradientOptions, GridOptions>;

struct TrainConfig {
  double lambda = 1.0;
  Optimizer optimizer = ClosedForm{};
  bool use_bias = false;
  std::uint64_t seed = 0;
};

/// w = (1/lambda) E[Y phi(X)]; a kernel expansion with coefficients
/// mass_i (2 eta_i - 1) / lambda for rbf.
Scorer fit_centroid(const TrainingData& data, double lambda,
                    const KernelSpec& spec = KernelSpec::linear());

/// w = (1/lambda) E[c_Y Y phi(X)], c_{+1} = 1 - c_neg, c_{-1} = c_neg.
Scorer fit_whinge(const TrainingData& data, double c_neg, double lambda,
                  const KernelSpec& spec = KernelSpec::linear());

/// Difference of class-conditional mean embeddings, E_P k(X, .) - E_Q k(X, .).
Scorer fit_rocchio(const TrainingData& data, const KernelSpec& spec = KernelSpec::linear());

/// w = (E[phi phi^T] + lambda I)^{-1} E[Y phi]. lambda = 0 is allowed and
/// throws SingularSystemError when the second-moment matrix is singular.
Scorer fit_fld(const TrainingData& data, double lambda,
               const KernelSpec& spec = KernelSpec::linear());

struct ErmResult {
  Scorer scorer;
  double objective;
  int iterations;
  bool converged;
  double gradient_norm;
  int starts;
};

/// min_w E[l(Y, <w, phi(X)>)] + (lambda/2) |w|^2 by full-batch gradient
/// descent with Armijo backtracking (step halving). Non-convex losses get
/// `restarts` extra starts drawn from U[-1, 1]^d; the lowest objective wins.
ErmResult minimize_erm(const Loss& loss, const TrainingData& data, const TrainConfig& config,
                       const KernelSpec& spec = KernelSpec::linear());
Scorer fit_erm(const Loss& loss, const TrainingData& data, const TrainConfig& config,
               const KernelSpec& spec = KernelSpec::linear());

/// Regularised empirical risk of linear weights (bias folded in as the last
/// coordinate when use_bias is set).
double erm_objective(const Loss& loss, const TrainingData& data, const Vector& weights,
                     double lambda, const KernelSpec& spec = KernelSpec::linear(),
                     bool use_bias = false);

struct GridResult {
  Eigen::Vector2d weights;
  double objective;
};

/// Unregularised risk of w = (w1, w2) for data with two features.
double linear_risk(const Loss& loss, const TrainingData& data, const Eigen::Vector2d& w);

/// Exhaustive scan of [lo, hi]^2; ties resolve to the lexicographically smallest point.
GridResult grid_minimize(const Loss& loss, const TrainingData& data,
                         const GridOptions& options = {});

/// Dispatches on config.optimizer. Closed forms exist for unhinged (centroid),
/// whinge and square; square uses fit_fld(lambda / 2) so that it minimises the
/// same (lambda/2)|w|^2-regularised objective as fit_erm.
Scorer train(const Loss& loss, const TrainingData& data, const TrainConfig& config,
             const KernelSpec& spec = KernelSpec::linear());

/// Threshold minimising training 0-1 error over -inf, midpoints of
/// consecutive distinct scores and +inf; ties go to the smallest threshold.
double tune_threshold(const Scorer& scorer, const SampleDataset& data);

/// Cosine between the ERM weight and the centroid weight for each lambda.
std::vector<double> verify_regularization_limit(const Loss& loss, const TrainingData& data,
                                                std::span<const double> lambdas,
                                                const GradientOptions& options = {},
                                                const KernelSpec& spec = KernelSpec::linear());

}  // namespace sln
