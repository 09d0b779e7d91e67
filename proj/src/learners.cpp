#include "sln/learners.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numeric>
#include <sstream>

#include "sln/random.hpp"

namespace sln {

// ---------------------------------------------------------------- Scorer

Scorer Scorer::linear(Vector weights, const KernelSpec& features, int input_dim, double bias) {
  if (!features.has_explicit_features())
    throw std::invalid_argument("linear scorers need an explicit feature map (linear or rff)");
  if (!weights.allFinite() || !std::isfinite(bias))
    throw std::invalid_argument("scorer parameters must be finite");
  Scorer s;
  s.form_ = Form::linear;
  s.spec_ = features;
  if (features.kind == KernelSpec::Kind::linear) {
    s.input_dim_ = static_cast<int>(weights.size());
  } else {
    if (input_dim < 1) throw std::invalid_argument("rff scorers need the input dimension");
    if (weights.size() != features.dim)
      throw std::invalid_argument("rff scorer weight length must equal the feature dimension");
    s.input_dim_ = input_dim;
    s.features_ = std::make_shared<const FeatureMap>(features, input_dim);
  }
  s.weights_ = std::move(weights);
  s.bias_ = bias;
  return s;
}

Scorer Scorer::kernel_expansion(Matrix points, Vector coeffs, const KernelSpec& spec,
                                double bias) {
  if (points.rows() != coeffs.size())
    throw std::invalid_argument("kernel expansion needs one coefficient per point");
  if (!points.allFinite() || !coeffs.allFinite() || !std::isfinite(bias))
    throw std::invalid_argument("scorer parameters must be finite");
  Scorer s;
  s.form_ = Form::kernel_expansion;
  s.spec_ = spec;
  s.input_dim_ = static_cast<int>(points.cols());
  if (spec.kind == KernelSpec::Kind::rff)
    s.features_ = std::make_shared<const FeatureMap>(spec, s.input_dim_);
  s.points_ = std::move(points);
  s.weights_ = std::move(coeffs);
  s.bias_ = bias;
  return s;
}

double Scorer::score(const VectorRef& x) const {
  if (x.size() != input_dim_)
    throw std::invalid_argument("scorer expects dimension " + std::to_string(input_dim_) +
                                ", got " + std::to_string(x.size()));
  if (form_ == Form::linear) {
    if (features_) return features_->apply(x).dot(weights_) + bias_;
    return x.dot(weights_) + bias_;
  }
  const Matrix probe = x.transpose();
  return (gram(spec_, probe, points_) * weights_)(0) + bias_;
}

Vector Scorer::scores(const Matrix& rows) const {
  if (rows.cols() != input_dim_)
    throw std::invalid_argument("scorer expects dimension " + std::to_string(input_dim_) +
                                ", got " + std::to_string(rows.cols()));
  Vector out;
  if (form_ == Form::linear)
    out = (features_ ? features_->apply_rows(rows) : rows) * weights_;
  else
    out = gram(spec_, rows, points_) * weights_;
  out.array() += bias_;
  return out;
}

int Scorer::classify(const VectorRef& x) const { return score(x) - threshold_ >= 0 ? 1 : -1; }

namespace {

nlohmann::json encode_real(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double decode_real(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw ParseError("bad real value '" + s + "' in model document");
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

nlohmann::json Scorer::to_json() const {
  nlohmann::json doc;
  doc["form"] = form_ == Form::linear ? "linear" : "kernel_expansion";
  doc["kernel"] = spec_.to_string();
  doc["input_dim"] = input_dim_;
  doc["bias"] = bias_;
  doc["threshold"] = encode_real(threshold_);
  if (form_ == Form::linear) {
    doc["weights"] = to_std(weights_);
  } else {
    nlohmann::json pts = nlohmann::json::array();
    for (Eigen::Index i = 0; i < points_.rows(); ++i)
      pts.push_back(to_std(points_.row(i).transpose()));
    doc["points"] = std::move(pts);
    doc["coeffs"] = to_std(weights_);
  }
  return doc;
}

Scorer Scorer::from_json(const nlohmann::json& doc) {
  try {
    const auto form = doc.at("form").get<std::string>();
    const auto spec = KernelSpec::parse(doc.at("kernel").get<std::string>());
    const int input_dim = doc.at("input_dim").get<int>();
    const double bias = doc.value("bias", 0.0);
    Scorer s = [&] {
      if (form == "linear") {
        const auto w = doc.at("weights").get<std::vector<double>>();
        return linear(Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size())),
                      spec, input_dim, bias);
      }
      if (form == "kernel_expansion") {
        const auto c = doc.at("coeffs").get<std::vector<double>>();
        const auto& pts = doc.at("points");
        Matrix points(static_cast<Eigen::Index>(pts.size()), input_dim);
        for (std::size_t i = 0; i < pts.size(); ++i) {
          const auto row = pts[i].get<std::vector<double>>();
          if (static_cast<int>(row.size()) != input_dim)
            throw ParseError("kernel expansion point has the wrong dimension");
          for (int j = 0; j < input_dim; ++j) points(static_cast<Eigen::Index>(i), j) = row[j];
        }
        return kernel_expansion(std::move(points),
                                Eigen::Map<const Vector>(c.data(), static_cast<Eigen::Index>(c.size())),
                                spec, bias);
      }
      throw ParseError("unknown scorer form '" + form + "'");
    }();
    s.set_threshold(decode_real(doc.value("threshold", nlohmann::json(0.0))));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad model document: ") + e.what());
  }
}

// ---------------------------------------------------------- TrainingData

TrainingData::TrainingData(const SampleDataset& sample)
    : owned_(to_population(sample)), view_(&*owned_) {}

TrainingData::TrainingData(const PopulationDataset& population) : view_(&population) {
  population.validate();
}

Vector TrainingData::signed_mass() const {
  return (view_->mass.array() * (2.0 * view_->eta.array() - 1.0)).matrix();
}

// ---------------------------------------------------------- closed forms

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw std::invalid_argument("regularisation strength must be positive and finite");
}

// Linear scorer from per-point coefficients a_i: w = sum_i a_i phi(x_i).
Scorer combine(const PopulationDataset& pop, const Vector& coeffs, const KernelSpec& spec) {
  if (spec.has_explicit_features()) {
    const FeatureMap map(spec, static_cast<int>(pop.dim()));
    const Vector w = map.apply_rows(pop.support).transpose() * coeffs;
    return Scorer::linear(w, spec, static_cast<int>(pop.dim()));
  }
  return Scorer::kernel_expansion(pop.support, coeffs, spec);
}

}  // namespace

Scorer fit_centroid(const TrainingData& data, double lambda, const KernelSpec& spec) {
  check_lambda(lambda);
  return combine(data.population(), data.signed_mass() / lambda, spec);
}

Scorer fit_whinge(const TrainingData& data, double c_neg, double lambda, const KernelSpec& spec) {
  check_lambda(lambda);
  if (!(c_neg >= 0.0 && c_neg <= 1.0))
    throw std::invalid_argument("whinge weight c_neg must lie in [0, 1]");
  const auto& pop = data.population();
  const double c_pos = 1.0 - c_neg;
  const Vector coeffs =
      (pop.mass.array() * (c_pos * pop.eta.array() - c_neg * (1.0 - pop.eta.array())) / lambda)
          .matrix();
  return combine(pop, coeffs, spec);
}

Scorer fit_rocchio(const TrainingData& data, const KernelSpec& spec) {
  const auto& pop = data.population();
  const double pi = pop.prior();
  if (!(pi > 0.0 && pi < 1.0))
    throw std::invalid_argument("Rocchio classifier needs both classes present");
  const Vector coeffs =
      (pop.mass.array() * (pop.eta.array() / pi - (1.0 - pop.eta.array()) / (1.0 - pi)))
          .matrix();
  return combine(pop, coeffs, spec);
}

Scorer fit_fld(const TrainingData& data, double lambda, const KernelSpec& spec) {
  if (!(lambda >= 0) || !std::isfinite(lambda))
    throw std::invalid_argument("regularisation strength must be non-negative and finite");
  if (!spec.has_explicit_features())
    throw std::invalid_argument("fit_fld needs an explicit feature map (linear or rff)");
  const auto& pop = data.population();
  const FeatureMap map(spec, static_cast<int>(pop.dim()));
  const Matrix f = map.apply_rows(pop.support);
  Matrix second = f.transpose() * pop.mass.asDiagonal() * f;
  second.diagonal().array() += lambda;
  const Vector mean_map = f.transpose() * data.signed_mass();

  const Eigen::FullPivLU<Matrix> lu(second);
  if (!lu.isInvertible())
    throw SingularSystemError("second-moment matrix is singular (rank " +
                              std::to_string(lu.rank()) + " of " +
                              std::to_string(second.rows()) + "); use lambda > 0");
  Vector w = lu.solve(mean_map);
  // One step of iterative refinement.
  w += lu.solve(mean_map - second * w);
  return Scorer::linear(w, spec, static_cast<int>(pop.dim()));
}

// ------------------------------------------------------------------ ERM

namespace {

struct ErmProblem {
  const Loss& loss;
  Matrix features;     // one row per support point, bias column appended if used
  Vector pos_weight;   // mass * eta
  Vector neg_weight;   // mass * (1 - eta)
  double lambda;

  double risk_terms(const Vector& margins, Vector* dscore) const {
    double risk = 0.0;
    if (dscore) dscore->resize(margins.size());
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      const double v = margins(i);
      double d = 0.0;
      if (pos_weight(i) != 0.0) {
        risk += pos_weight(i) * loss.positive(v);
        if (dscore) d += pos_weight(i) * loss.dpositive(v);
      }
      if (neg_weight(i) != 0.0) {
        risk += neg_weight(i) * loss.negative(v);
        if (dscore) d += neg_weight(i) * loss.dnegative(v);
      }
      if (dscore) (*dscore)(i) = d;
    }
    return risk;
  }

  double value(const Vector& w) const {
    return risk_terms(features * w, nullptr) + 0.5 * lambda * w.squaredNorm();
  }

  double value_and_gradient(const Vector& w, Vector& grad) const {
    Vector dscore;
    const double risk = risk_terms(features * w, &dscore);
    grad = features.transpose() * dscore + lambda * w;
    return risk + 0.5 * lambda * w.squaredNorm();
  }
};

ErmProblem make_problem(const Loss& loss, const PopulationDataset& pop, double lambda,
                        const KernelSpec& spec, bool use_bias) {
  if (!spec.has_explicit_features())
    throw std::invalid_argument("ERM needs an explicit feature map (linear or rff)");
  const FeatureMap map(spec, static_cast<int>(pop.dim()));
  Matrix f = map.apply_rows(pop.support);
  if (use_bias) {
    f.conservativeResize(Eigen::NoChange, f.cols() + 1);
    f.col(f.cols() - 1).setOnes();
  }

  // Identical rows are merged so the objective is evaluated once per distinct
  // point; first-occurrence order keeps the result deterministic.
  auto less = [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  };
  std::map<Vector, Eigen::Index, decltype(less)> index(less);
  std::vector<Eigen::Index> first;
  std::vector<double> pos, neg;
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    const double p = pop.mass(i) * pop.eta(i);
    const double q = pop.mass(i) * (1.0 - pop.eta(i));
    auto [it, inserted] = index.try_emplace(f.row(i).transpose(), static_cast<Eigen::Index>(first.size()));
    if (inserted) {
      first.push_back(i);
      pos.push_back(p);
      neg.push_back(q);
    } else {
      pos[static_cast<std::size_t>(it->second)] += p;
      neg[static_cast<std::size_t>(it->second)] += q;
    }
  }
  const auto k = static_cast<Eigen::Index>(first.size());
  Matrix merged(k, f.cols());
  for (Eigen::Index j = 0; j < k; ++j) merged.row(j) = f.row(first[static_cast<std::size_t>(j)]);
  return ErmProblem{loss, std::move(merged), Eigen::Map<const Vector>(pos.data(), k),
                    Eigen::Map<const Vector>(neg.data(), k), lambda};
}

struct Descent {
  Vector w;
  double objective;
  double gradient_norm;
  int iterations;
  bool converged;
};

// Smallest-norm element of the eps-subdifferential of the objective at w:
// points whose margin lies within eps of a kink contribute any derivative
// between the one-sided values, found by coordinate descent on the box QP.
Vector min_norm_subgradient(const ErmProblem& problem, const Vector& w, double eps) {
  const Loss& loss = problem.loss;
  const Vector margins = problem.features * w;
  Vector g = problem.lambda * w;
  std::vector<Eigen::Index> active;
  std::vector<double> lo, hi, c;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    const double v = margins(i);
    double d_lo = 0.0, d_hi = 0.0;
    bool kinked = false;
    for (int y : {1, -1}) {
      const double weight = y == 1 ? problem.pos_weight(i) : problem.neg_weight(i);
      if (weight == 0.0) continue;
      std::optional<double> near;
      for (double k : loss.kinks())
        if (std::abs(v - k) <= eps) near = k;
      if (near) {
        const double h = 1e-9 * std::max(1.0, std::abs(*near));
        const double a = loss.deriv(y, *near - h);
        const double b = loss.deriv(y, *near + h);
        d_lo += weight * std::min(a, b);
        d_hi += weight * std::max(a, b);
        kinked = kinked || a != b;
      } else {
        const double d = weight * loss.deriv(y, v);
        d_lo += d;
        d_hi += d;
      }
    }
    if (kinked) {
      active.push_back(i);
      lo.push_back(d_lo);
      hi.push_back(d_hi);
      c.push_back(0.5 * (d_lo + d_hi));
      g += c.back() * problem.features.row(i).transpose();
    } else {
      g += d_lo * problem.features.row(i).transpose();
    }
  }
  for (int sweep = 0; sweep < 500 && !active.empty(); ++sweep) {
    double change = 0.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto row = problem.features.row(active[a]);
      const double norm2 = row.squaredNorm();
      if (norm2 == 0.0) continue;
      const double next = std::clamp(c[a] - row.dot(g) / norm2, lo[a], hi[a]);
      if (next != c[a]) {
        g += (next - c[a]) * row.transpose();
        change = std::max(change, std::abs(next - c[a]));
        c[a] = next;
      }
    }
    if (change < 1e-15) break;
  }
  return g;
}

Descent gradient_descent(const ErmProblem& problem, Vector w, const GradientOptions& opt) {
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-30;
  constexpr double kMaxEps = 1e-2;
  constexpr double kMinEps = 1e-12;
  const bool kinked = !problem.loss.kinks().empty();
  Vector grad;
  double objective = problem.value_and_gradient(w, grad);
  if (!std::isfinite(objective) || !grad.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite objective at the initial point (objective " << objective << ", loss "
        << problem.loss.name() << ")";
    throw TrainingError(msg.str());
  }

  // Backtracking along -direction; returns the accepted step or 0.
  auto line_search = [&](const Vector& direction, double start, Vector& candidate, double& next) {
    const double d2 = direction.squaredNorm();
    for (double t = start; t >= kMinStep; t *= 0.5) {
      candidate = w - t * direction;
      next = problem.value(candidate);
      if (std::isfinite(next) && next <= objective - kArmijo * t * d2) return t;
    }
    return 0.0;
  };

  double step = opt.step;
  double eps = kMaxEps;
  double gnorm = kinked ? min_norm_subgradient(problem, w, kMinEps).norm() : grad.norm();
  int it = 0;
  bool converged = false;
  for (; it < opt.max_iters; ++it) {
    if (gnorm <= opt.tol) {
      converged = true;
      break;
    }
    // Kinked losses descend along the steepest eps-subgradient, which does
    // not zigzag across kinks; eps shrinks once it stops yielding progress.
    const Vector direction = kinked ? min_norm_subgradient(problem, w, eps) : grad;
    Vector candidate;
    double next = 0.0;
    const double t = direction.norm() <= opt.tol ? 0.0 : line_search(direction, step, candidate, next);
    if (t == 0.0) {
      if (!kinked || eps < kMinEps) break;
      eps *= 0.1;
      continue;
    }
    w = std::move(candidate);
    objective = problem.value_and_gradient(w, grad);
    if (!std::isfinite(objective) || !grad.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite objective after " << it + 1 << " iterations (objective " << objective
          << ", loss " << problem.loss.name() << ", step " << t << ")";
      throw TrainingError(msg.str());
    }
    gnorm = kinked ? min_norm_subgradient(problem, w, kMinEps).norm() : grad.norm();
    step = 2.0 * t;
  }
  return {std::move(w), objective, gnorm, it, converged};
}

Scorer scorer_from_weights(const Vector& w, const KernelSpec& spec, int input_dim, bool use_bias) {
  if (use_bias) return Scorer::linear(w.head(w.size() - 1), spec, input_dim, w(w.size() - 1));
  return Scorer::linear(w, spec, input_dim);
}

}  // namespace

ErmResult minimize_erm(const Loss& loss, const TrainingData& data, const TrainConfig& config,
                       const KernelSpec& spec) {
  if (!(config.lambda >= 0) || !std::isfinite(config.lambda))
    throw std::invalid_argument("regularisation strength must be non-negative and finite");
  const GradientOptions opt = std::holds_alternative<GradientOptions>(config.optimizer)
                                  ? std::get<GradientOptions>(config.optimizer)
                                  : GradientOptions{};
  const auto& pop = data.population();
  const ErmProblem problem = make_problem(loss, pop, config.lambda, spec, config.use_bias);
  const auto dim = problem.features.cols();

  std::vector<Vector> starts{Vector::Zero(dim)};
  if (!loss.is_convex_in_v()) {
    for (int r = 0; r < opt.restarts; ++r) {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      Vector w(dim);
      for (Eigen::Index j = 0; j < dim; ++j) w(j) = unit(rng);
      starts.push_back(std::move(w));
    }
  }

  std::optional<Descent> best;
  for (const Vector& start : starts) {
    Descent run = gradient_descent(problem, start, opt);
    if (!best || run.objective < best->objective) best = std::move(run);
  }
  return ErmResult{scorer_from_weights(best->w, spec, static_cast<int>(pop.dim()), config.use_bias),
                   best->objective,
                   best->iterations,
                   best->converged,
                   best->gradient_norm,
                   static_cast<int>(starts.size())};
}

Scorer fit_erm(const Loss& loss, const TrainingData& data, const TrainConfig& config,
               const KernelSpec& spec) {
  return minimize_erm(loss, data, config, spec).scorer;
}

double erm_objective(const Loss& loss, const TrainingData& data, const Vector& weights,
                     double lambda, const KernelSpec& spec, bool use_bias) {
  const ErmProblem problem = make_problem(loss, data.population(), lambda, spec, use_bias);
  if (weights.size() != problem.features.cols())
    throw std::invalid_argument("weight vector has the wrong length");
  return problem.value(weights);
}

// ------------------------------------------------------------- grid scan

double linear_risk(const Loss& loss, const TrainingData& data, const Eigen::Vector2d& w) {
  const auto& pop = data.population();
  if (pop.dim() != 2) throw std::invalid_argument("linear_risk needs two-dimensional data");
  double risk = 0.0;
  for (Eigen::Index i = 0; i < pop.size(); ++i) {
    const double v = pop.support(i, 0) * w(0) + pop.support(i, 1) * w(1);
    const double p = pop.mass(i) * pop.eta(i);
    const double q = pop.mass(i) * (1.0 - pop.eta(i));
    if (p != 0.0) risk += p * loss.positive(v);
    if (q != 0.0) risk += q * loss.negative(v);
  }
  return risk;
}

GridResult grid_minimize(const Loss& loss, const TrainingData& data, const GridOptions& options) {
  const auto& pop = data.population();
  if (pop.dim() != 2)
    throw std::invalid_argument("grid_minimize needs two-dimensional data, got " +
                                std::to_string(pop.dim()));
  if (!(options.resolution > 0)) throw std::invalid_argument("grid resolution must be positive");
  if (!(options.hi >= options.lo)) throw std::invalid_argument("grid bounds are reversed");
  const auto steps = static_cast<long>(std::floor((options.hi - options.lo) / options.resolution + 1e-9));

  GridResult best{Eigen::Vector2d::Zero(), std::numeric_limits<double>::infinity()};
  bool found = false;
  Eigen::Vector2d w;
  for (long i = 0; i <= steps; ++i) {
    w(0) = options.lo + static_cast<double>(i) * options.resolution;
    for (long j = 0; j <= steps; ++j) {
      w(1) = options.lo + static_cast<double>(j) * options.resolution;
      const double r = linear_risk(loss, data, w);
      if (!found || r < best.objective) {
        best = {w, r};
        found = true;
      }
    }
  }
  return best;
}

// ------------------------------------------------------------- dispatch

Scorer train(const Loss& loss, const TrainingData& data, const TrainConfig& config,
             const KernelSpec& spec) {
  if (std::holds_alternative<GradientOptions>(config.optimizer))
    return fit_erm(loss, data, config, spec);
  if (const auto* grid = std::get_if<GridOptions>(&config.optimizer)) {
    if (spec.kind != KernelSpec::Kind::linear || config.use_bias)
      throw std::invalid_argument("grid optimiser supports the linear kernel without bias only");
    const GridResult g = grid_minimize(loss, data, *grid);
    return Scorer::linear(g.weights);
  }
  if (config.use_bias)
    throw std::invalid_argument("closed-form solvers have no bias; tune a threshold instead");
  const std::string& name = loss.name();
  if (name == "unhinged") return fit_centroid(data, config.lambda, spec);
  if (name.starts_with("whinge:")) return fit_whinge(data, std::stod(name.substr(7)), config.lambda, spec);
  if (name == "square") return fit_fld(data, config.lambda / 2.0, spec);
  throw std::invalid_argument("no closed-form solver for loss '" + name + "'");
}

// ------------------------------------------------------ threshold tuning

double tune_threshold(const Scorer& scorer, const SampleDataset& data) {
  data.validate();
  const Vector s = scorer.scores(data.instances);
  const auto n = static_cast<std::size_t>(data.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s(static_cast<Eigen::Index>(a)) < s(static_cast<Eigen::Index>(b));
  });

  // Sweep thresholds upwards; everything at or below the cut is called negative.
  long errors = static_cast<long>(std::count(data.labels.begin(), data.labels.end(), -1));
  double best_threshold = -std::numeric_limits<double>::infinity();
  long best_errors = errors;
  std::size_t k = 0;
  while (k < n) {
    const double value = s(static_cast<Eigen::Index>(order[k]));
    while (k < n && s(static_cast<Eigen::Index>(order[k])) == value) {
      errors += data.labels[order[k]] == 1 ? 1 : -1;
      ++k;
    }
    const double cut = k < n ? value + 0.5 * (s(static_cast<Eigen::Index>(order[k])) - value)
                             : std::numeric_limits<double>::infinity();
    if (errors < best_errors) {
      best_errors = errors;
      best_threshold = cut;
    }
  }
  return best_threshold;
}

std::vector<double> verify_regularization_limit(const Loss& loss, const TrainingData& data,
                                                std::span<const double> lambdas,
                                                const GradientOptions& options,
                                                const KernelSpec& spec) {
  if (!loss.is_convex_in_v())
    throw std::invalid_argument("regularisation limit needs a convex loss");
  const Vector centroid = fit_centroid(data, 1.0, spec).weights();
  std::vector<double> cosines;
  cosines.reserve(lambdas.size());
  for (double lambda : lambdas) {
    TrainConfig config;
    config.lambda = lambda;
    config.optimizer = options;
    const Vector w = fit_erm(loss, data, config, spec).weights();
    const double denom = w.norm() * centroid.norm();
    cosines.push_back(denom > 0 ? w.dot(centroid) / denom : 0.0);
  }
  return cosines;
}

}  // namespace sln
