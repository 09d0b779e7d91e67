#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sln {

/// Probability of a symmetric label flip. Always in [0, 1/2).
class NoiseRate {
 public:
  /// Throws std::domain_error unless 0 <= rho < 0.5.
  explicit NoiseRate(double rho);

  double value() const noexcept { return rho_; }
  /// 1 - 2 rho, the factor by which noise shrinks 2*eta - 1.
  double shrinkage() const noexcept { return 1.0 - 2.0 * rho_; }

 private:
  double rho_;
};

using ScalarFn = std::function<double(double)>;

/// A margin loss given by its two partial losses l_{+1}(v), l_{-1}(v) and
/// their derivatives in v. Immutable; copies share the underlying functions.
class Loss {
 public:
  struct Definition {
    std::string name;
    ScalarFn positive;   // l_{+1}(v)
    ScalarFn negative;   // l_{-1}(v)
    ScalarFn dpositive;  // d/dv l_{+1}(v)
    ScalarFn dnegative;  // d/dv l_{-1}(v)
    bool convex_in_v = false;
    bool convex_potential = false;
    // l_{+1} and l_{-1} are both affine in v.
    bool affine = false;
    // Points where deriv is a one-sided or conventional value.
    std::vector<double> kinks;
  };

  explicit Loss(Definition def);

  const std::string& name() const noexcept { return def_->name; }

  /// l(y, v) for y in {-1, +1}. Any other y throws std::invalid_argument.
  double eval(int y, double v) const;
  double deriv(int y, double v) const;

  double positive(double v) const { return def_->positive(v); }
  double negative(double v) const { return def_->negative(v); }
  double dpositive(double v) const { return def_->dpositive(v); }
  double dnegative(double v) const { return def_->dnegative(v); }

  bool is_convex_in_v() const noexcept { return def_->convex_in_v; }
  bool is_convex_potential() const noexcept { return def_->convex_potential; }
  bool is_affine() const noexcept { return def_->affine; }
  std::span<const double> kinks() const noexcept { return def_->kinks; }

  const Definition& definition() const noexcept { return *def_; }

 private:
  std::shared_ptr<const Definition> def_;
};

// Catalog.
Loss zero_one_loss();
Loss unhinged_loss();
/// Weighted unhinged loss: l_1(v) = -(1 - c_neg) v, l_{-1}(v) = c_neg v.
Loss whinge_loss(double c_neg = 0.5);
Loss hinge_loss();
Loss logistic_loss();
Loss square_loss();
/// t-logistic loss for t = 2: log(1 - yv + sqrt(1 + v^2)).
Loss t_logistic_loss();
/// TangentBoost: (2 atan(yv) - 1)^2.
Loss tangent_boost_loss();

/// Resolves "zero_one", "unhinged", "whinge:<c_neg>", "hinge", "logistic",
/// "square", "tlogistic", "tangentboost". Throws std::invalid_argument.
Loss loss_from_name(std::string_view name);

/// Names of the catalog entries, whinge at its default weight.
std::vector<std::string> catalog_names();

/// Loss built from user-supplied partial losses and derivatives.
Loss make_loss(std::string name, ScalarFn positive, ScalarFn negative, ScalarFn dpositive,
               ScalarFn dnegative, bool convex_in_v = false);

/// alpha * l + beta, pointwise.
Loss affine_transform(const Loss& loss, double alpha, double beta);

/// eta * l_1(v) + (1 - eta) * l_{-1}(v). Throws std::domain_error unless eta in [0, 1].
double conditional_risk(const Loss& loss, double eta, double v);

/// ((1 - rho) l(y, v) - rho l(-y, v)) / (1 - 2 rho).
Loss noise_correct(const Loss& loss, NoiseRate rho);

struct RobustnessVerdict {
  bool robust = false;
  std::optional<double> constant;
  double max_deviation = 0.0;
};

/// Checks l_1(v) + l_{-1}(v) against its median over the grid.
RobustnessVerdict is_strongly_sln_robust(const Loss& loss, std::span<const double> grid,
                                         double tol);

/// -10, -9.9, ..., 10.
std::vector<double> default_v_grid();

struct PlotRow {
  double rho;
  double v;
  double value;  // corrected l_1(v)
};

std::vector<PlotRow> unhinge_family_plot_data(const Loss& base, std::span<const NoiseRate> rhos,
                                              std::span<const double> v_grid);

}  // namespace sln
