#include "sln/loss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sln {

NoiseRate::NoiseRate(double rho) : rho_(rho) {
  if (!(rho >= 0.0 && rho < 0.5)) {
    std::ostringstream msg;
    msg << "noise rate must lie in [0, 0.5), got " << rho;
    throw std::domain_error(msg.str());
  }
}

Loss::Loss(Definition def) : def_(std::make_shared<const Definition>(std::move(def))) {
  if (!def_->positive || !def_->negative || !def_->dpositive || !def_->dnegative)
    throw std::invalid_argument("loss '" + def_->name + "' is missing an evaluator");
}

namespace {

void check_label(int y) {
  if (y != 1 && y != -1)
    throw std::invalid_argument("label must be -1 or +1, got " + std::to_string(y));
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::string format_number(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

double Loss::eval(int y, double v) const {
  check_label(y);
  return y == 1 ? def_->positive(v) : def_->negative(v);
}

double Loss::deriv(int y, double v) const {
  check_label(y);
  return y == 1 ? def_->dpositive(v) : def_->dnegative(v);
}

Loss zero_one_loss() {
  Loss::Definition d;
  d.name = "zero_one";
  d.positive = [](double v) { return v < 0 ? 1.0 : (v == 0 ? 0.5 : 0.0); };
  d.negative = [](double v) { return v > 0 ? 1.0 : (v == 0 ? 0.5 : 0.0); };
  // Never optimised by gradient; zero keeps the interface uniform.
  d.dpositive = [](double) { return 0.0; };
  d.dnegative = [](double) { return 0.0; };
  d.kinks = {0.0};
  return Loss(std::move(d));
}

Loss unhinged_loss() {
  Loss::Definition d;
  d.name = "unhinged";
  d.positive = [](double v) { return 1.0 - v; };
  d.negative = [](double v) { return 1.0 + v; };
  d.dpositive = [](double) { return -1.0; };
  d.dnegative = [](double) { return 1.0; };
  d.convex_in_v = true;
  d.affine = true;
  return Loss(std::move(d));
}

Loss whinge_loss(double c_neg) {
  if (!(c_neg >= 0.0 && c_neg <= 1.0))
    throw std::invalid_argument("whinge weight c_neg must lie in [0, 1]");
  const double c_pos = 1.0 - c_neg;
  Loss::Definition d;
  d.name = "whinge:" + format_number(c_neg);
  d.positive = [c_pos](double v) { return -c_pos * v; };
  d.negative = [c_neg](double v) { return c_neg * v; };
  d.dpositive = [c_pos](double) { return -c_pos; };
  d.dnegative = [c_neg](double) { return c_neg; };
  d.convex_in_v = true;
  d.affine = true;
  return Loss(std::move(d));
}

Loss hinge_loss() {
  Loss::Definition d;
  d.name = "hinge";
  d.positive = [](double v) { return std::max(0.0, 1.0 - v); };
  d.negative = [](double v) { return std::max(0.0, 1.0 + v); };
  d.dpositive = [](double v) { return v < 1.0 ? -1.0 : 0.0; };
  d.dnegative = [](double v) { return v > -1.0 ? 1.0 : 0.0; };
  d.convex_in_v = true;
  d.convex_potential = true;
  d.kinks = {-1.0, 1.0};
  return Loss(std::move(d));
}

Loss logistic_loss() {
  Loss::Definition d;
  d.name = "logistic";
  d.positive = [](double v) { return softplus(-v); };
  d.negative = [](double v) { return softplus(v); };
  d.dpositive = [](double v) { return -sigmoid(-v); };
  d.dnegative = [](double v) { return sigmoid(v); };
  d.convex_in_v = true;
  d.convex_potential = true;
  return Loss(std::move(d));
}

Loss square_loss() {
  Loss::Definition d;
  d.name = "square";
  d.positive = [](double v) { return (1.0 - v) * (1.0 - v); };
  d.negative = [](double v) { return (1.0 + v) * (1.0 + v); };
  d.dpositive = [](double v) { return -2.0 * (1.0 - v); };
  d.dnegative = [](double v) { return 2.0 * (1.0 + v); };
  d.convex_in_v = true;
  return Loss(std::move(d));
}

Loss t_logistic_loss() {
  // phi(z) = log(1 - z + sqrt(1 + z^2)); the argument of the log is >= 1.
  auto phi = [](double z) { return std::log(1.0 - z + std::hypot(1.0, z)); };
  auto dphi = [](double z) {
    const double r = std::hypot(1.0, z);
    return (z / r - 1.0) / (1.0 - z + r);
  };
  Loss::Definition d;
  d.name = "tlogistic";
  d.positive = [phi](double v) { return phi(v); };
  d.negative = [phi](double v) { return phi(-v); };
  d.dpositive = [dphi](double v) { return dphi(v); };
  d.dnegative = [dphi](double v) { return -dphi(-v); };
  return Loss(std::move(d));
}

Loss tangent_boost_loss() {
  auto phi = [](double z) {
    const double a = 2.0 * std::atan(z) - 1.0;
    return a * a;
  };
  auto dphi = [](double z) { return 4.0 * (2.0 * std::atan(z) - 1.0) / (1.0 + z * z); };
  Loss::Definition d;
  d.name = "tangentboost";
  d.positive = [phi](double v) { return phi(v); };
  d.negative = [phi](double v) { return phi(-v); };
  d.dpositive = [dphi](double v) { return dphi(v); };
  d.dnegative = [dphi](double v) { return -dphi(-v); };
  return Loss(std::move(d));
}

Loss loss_from_name(std::string_view name) {
  if (name == "zero_one") return zero_one_loss();
  if (name == "unhinged") return unhinged_loss();
  if (name == "whinge") return whinge_loss();
  if (name.starts_with("whinge:")) {
    const std::string arg(name.substr(7));
    std::size_t used = 0;
    double c_neg = 0;
    try {
      c_neg = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || arg.empty())
      throw std::invalid_argument("bad whinge weight in loss name '" + std::string(name) + "'");
    return whinge_loss(c_neg);
  }
  if (name == "hinge") return hinge_loss();
  if (name == "logistic") return logistic_loss();
  if (name == "square") return square_loss();
  if (name == "tlogistic") return t_logistic_loss();
  if (name == "tangentboost") return tangent_boost_loss();
  throw std::invalid_argument("unknown loss '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"zero_one", "unhinged", "whinge:0.5", "hinge",
          "logistic", "square",   "tlogistic",  "tangentboost"};
}

Loss make_loss(std::string name, ScalarFn positive, ScalarFn negative, ScalarFn dpositive,
               ScalarFn dnegative, bool convex_in_v) {
  Loss::Definition d;
  d.name = std::move(name);
  d.positive = std::move(positive);
  d.negative = std::move(negative);
  d.dpositive = std::move(dpositive);
  d.dnegative = std::move(dnegative);
  d.convex_in_v = convex_in_v;
  return Loss(std::move(d));
}

Loss affine_transform(const Loss& loss, double alpha, double beta) {
  Loss::Definition d;
  d.name = format_number(alpha) + "*" + loss.name() + "+" + format_number(beta);
  d.positive = [loss, alpha, beta](double v) { return alpha * loss.positive(v) + beta; };
  d.negative = [loss, alpha, beta](double v) { return alpha * loss.negative(v) + beta; };
  d.dpositive = [loss, alpha](double v) { return alpha * loss.dpositive(v); };
  d.dnegative = [loss, alpha](double v) { return alpha * loss.dnegative(v); };
  d.convex_in_v = loss.is_convex_in_v() && alpha >= 0;
  d.convex_potential = loss.is_convex_potential() && alpha > 0 && beta == 0;
  d.affine = loss.is_affine();
  d.kinks.assign(loss.kinks().begin(), loss.kinks().end());
  return Loss(std::move(d));
}

double conditional_risk(const Loss& loss, double eta, double v) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << "class probability must lie in [0, 1], got " << eta;
    throw std::domain_error(msg.str());
  }
  return eta * loss.positive(v) + (1.0 - eta) * loss.negative(v);
}

Loss noise_correct(const Loss& loss, NoiseRate rho) {
  const double r = rho.value();
  const double keep = (1.0 - r) / (1.0 - 2.0 * r);
  const double swap = r / (1.0 - 2.0 * r);
  Loss::Definition d;
  d.name = loss.name() + "@rho=" + format_number(r);
  d.positive = [loss, keep, swap](double v) {
    return keep * loss.positive(v) - swap * loss.negative(v);
  };
  d.negative = [loss, keep, swap](double v) {
    return keep * loss.negative(v) - swap * loss.positive(v);
  };
  d.dpositive = [loss, keep, swap](double v) {
    return keep * loss.dpositive(v) - swap * loss.dnegative(v);
  };
  d.dnegative = [loss, keep, swap](double v) {
    return keep * loss.dnegative(v) - swap * loss.dpositive(v);
  };
  d.affine = loss.is_affine();
  d.convex_in_v = loss.is_convex_in_v() && (r == 0.0 || loss.is_affine());
  d.convex_potential = loss.is_convex_potential() && r == 0.0;
  d.kinks.assign(loss.kinks().begin(), loss.kinks().end());
  return Loss(std::move(d));
}

RobustnessVerdict is_strongly_sln_robust(const Loss& loss, std::span<const double> grid,
                                         double tol) {
  if (grid.empty()) throw std::invalid_argument("robustness grid must be non-empty");
  if (!(tol > 0)) throw std::invalid_argument("robustness tolerance must be positive");

  std::vector<double> sums;
  sums.reserve(grid.size());
  for (double v : grid) sums.push_back(loss.positive(v) + loss.negative(v));

  std::vector<double> sorted = sums;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  const double median =
      sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

  RobustnessVerdict verdict;
  for (double s : sums) verdict.max_deviation = std::max(verdict.max_deviation, std::abs(s - median));
  verdict.robust = verdict.max_deviation <= tol;
  if (verdict.robust) verdict.constant = median;
  return verdict;
}

std::vector<double> default_v_grid() {
  std::vector<double> grid;
  grid.reserve(201);
  for (int i = -100; i <= 100; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<PlotRow> unhinge_family_plot_data(const Loss& base, std::span<const NoiseRate> rhos,
                                              std::span<const double> v_grid) {
  std::vector<PlotRow> rows;
  rows.reserve(rhos.size() * v_grid.size());
  for (const NoiseRate& rho : rhos) {
    const Loss corrected = noise_correct(base, rho);
    for (double v : v_grid) rows.push_back({rho.value(), v, corrected.positive(v)});
  }
  return rows;
}

}  // namespace sln
