#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace sln {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

struct KernelSpec {
  enum class Kind { linear, rbf, rff };

  Kind kind = Kind::linear;
  double sigma = 1.0;
  int dim = 0;
  std::uint64_t seed = 0;

  static KernelSpec linear() { return {}; }
  static KernelSpec rbf(double sigma);
  static KernelSpec rff(double sigma, int dim, std::uint64_t seed);

  /// Parses "linear", "rbf:<sigma>", "rff:<sigma>:<dim>:<seed>".
  static KernelSpec parse(std::string_view text);
  std::string to_string() const;

  /// True when scorers can be stored as an explicit weight vector.
  bool has_explicit_features() const noexcept { return kind != Kind::rbf; }

  bool operator==(const KernelSpec&) const = default;
};

/// Explicit feature map for linear (identity) and rff kernels.
///
/// The rff map draws dim/2 frequencies w ~ N(0, I / sigma^2) and emits the
/// interleaved pairs sqrt(2/dim) (cos w.x, sin w.x), so <f(x), f(z)> is an
/// unbiased estimate of exp(-|x - z|^2 / (2 sigma^2)) and |f(x)|^2 = 1.
class FeatureMap {
 public:
  FeatureMap(const KernelSpec& spec, int input_dim);

  const KernelSpec& spec() const noexcept { return spec_; }
  int input_dim() const noexcept { return input_dim_; }
  int output_dim() const noexcept { return output_dim_; }
  /// (dim/2) x input_dim, empty for the linear map.
  const Matrix& frequencies() const noexcept { return frequencies_; }

  Vector apply(const VectorRef& x) const;
  /// Maps every row of `rows`.
  Matrix apply_rows(const Matrix& rows) const;

 private:
  KernelSpec spec_;
  int input_dim_;
  int output_dim_;
  Matrix frequencies_;
};

/// Throws std::invalid_argument for odd or non-positive dim.
FeatureMap rff_build(double sigma, int dim, int input_dim, std::uint64_t seed);

double kernel_eval(const KernelSpec& spec, const VectorRef& x, const VectorRef& z);

/// K(i, j) = k(a.row(i), b.row(j)).
Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b);

/// Biased (V-statistic) estimate of |mu_P - mu_Q| in the RKHS.
double mmd(const Matrix& positives, const Matrix& negatives, const KernelSpec& spec);

/// (pi / (1 - pi)) * mean_P k(., x) / mean_Q k(., x); nullopt when the
/// negative aggregate similarity at x is zero.
std::optional<double> nadaraya_ratio(const Matrix& positives, const Matrix& negatives, double pi,
                                     const KernelSpec& spec, const VectorRef& x);

}  // namespace sln
