#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sln/dataset.hpp"
#include "sln/eval.hpp"
#include "sln/learners.hpp"
#include "sln/noise.hpp"

using namespace sln;
using doctest::Approx;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

PopulationDataset random_population(std::mt19937_64& rng, Eigen::Index m, int d) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PopulationDataset p;
  p.support = Matrix::NullaryExpr(m, d, [&] { return 4.0 * unit(rng) - 2.0; });
  p.mass = Vector::NullaryExpr(m, [&] { return unit(rng) + 0.1; });
  p.mass /= p.mass.sum();
  p.eta = Vector::NullaryExpr(m, [&] { return unit(rng); });
  return p;
}

// Minimum training error over every cut of the sorted scores.
double brute_force_threshold_error(const Vector& scores, const std::vector<int>& labels) {
  const auto n = static_cast<std::size_t>(scores.size());
  double best = 1.0;
  std::vector<double> cuts{-std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) cuts.push_back(scores(static_cast<Eigen::Index>(i)) + 1e-9);
  for (const double t : cuts) {
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      err += (scores(static_cast<Eigen::Index>(i)) >= t ? 1 : -1) != labels[i];
    best = std::min(best, err / static_cast<double>(n));
  }
  return best;
}

}  // namespace

TEST_CASE("centroid closed form") {
  const Scorer u = fit_centroid(unhinged_failure_population(), 1.0);
  CHECK(u.weights()(0) == Approx(1.0));
  CHECK(u.weights()(1) == Approx(-1.0));

  const PopulationDataset lon = long_servedio_population(0.5);
  const Scorer c = fit_centroid(lon, 1.0);
  CHECK(c.weights()(0) == Approx(0.625));
  CHECK(c.weights()(1) == Approx(0.375));
  CHECK(c.scores(lon.support).minCoeff() > 0.0);
  CHECK(zero_one_risk(c, lon) == 0.0);

  const Scorer half = fit_centroid(lon, 2.0);
  CHECK((half.weights() - 0.5 * c.weights()).norm() <= 1e-15);

  CHECK_THROWS_AS(fit_centroid(lon, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_centroid(lon, 1.0, KernelSpec::rbf(1.0)).score(Vector::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("kernel centroid is a kernel expansion") {
  const SampleDataset d = gaussian_blobs(30, 2, 2.0, 6);
  const Scorer s = fit_centroid(d, 2.0, KernelSpec::rbf(0.8));
  CHECK(s.form() == Scorer::Form::kernel_expansion);
  const Vector x = v2(0.3, -0.2);
  double expected = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    expected += d.labels[static_cast<std::size_t>(i)] *
                kernel_eval(KernelSpec::rbf(0.8), d.instances.row(i).transpose(), x);
  expected /= 2.0 * static_cast<double>(d.size());
  CHECK(s.score(x) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("centroid and fld under label noise") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const PopulationDataset p = random_population(rng, 6, 3);
    const Vector clean = fit_centroid(p, 1.0).weights();
    const Vector fld = fit_fld(p, 0.1).weights();
    for (double rho : {0.1, 0.2, 0.3, 0.4}) {
      const PopulationDataset q = corrupt_population(p, NoiseRate(rho));
      const Scorer noisy = fit_centroid(q, 1.0);
      CHECK((noisy.weights() / (1 - 2 * rho) - clean).norm() <= 1e-10 * (1 + clean.norm()));
      const Vector s_clean = fit_centroid(p, 1.0).scores(p.support);
      const Vector s_noisy = noisy.scores(p.support);
      for (Eigen::Index i = 0; i < s_clean.size(); ++i)
        CHECK((s_clean(i) >= 0) == (s_noisy(i) >= 0));
      CHECK((fit_fld(q, 0.1).weights() - (1 - 2 * rho) * fld).norm() <= 1e-8 * (1 + fld.norm()));
    }
  }
}

TEST_CASE("whinge weights") {
  const PopulationDataset p = unhinged_failure_population();
  const Vector c = fit_centroid(p, 1.0).weights();
  CHECK((fit_whinge(p, 0.5, 1.0).weights() - 0.5 * c).norm() <= 1e-15);
  // c_neg = 1: only the negative point (-1, 1) with mass 1/3 contributes.
  const Vector neg = fit_whinge(p, 1.0, 1.0).weights();
  CHECK(neg(0) == Approx(1.0 / 3.0));
  CHECK(neg(1) == Approx(-1.0 / 3.0));
  CHECK_THROWS_AS(fit_whinge(p, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("rocchio") {
  SampleDataset balanced = gaussian_blobs(40, 2, 1.0, 2);
  balanced.labels.assign(40, 1);
  for (int i = 0; i < 20; ++i) balanced.labels[static_cast<std::size_t>(i)] = -1;
  const Vector probe = v2(0.4, 0.9);
  CHECK(fit_rocchio(balanced).score(probe) ==
        Approx(2.0 * fit_centroid(balanced, 1.0).score(probe)));

  // Unequal priors: the two rules disagree on the probe.
  SampleDataset d;
  d.instances.resize(3, 2);
  d.instances << 1, 0, 1, 0, 0, 1;
  d.labels = {1, 1, -1};
  const Vector x = v2(1, 1.5);
  CHECK(fit_rocchio(d).classify(x) == -1);
  CHECK(fit_centroid(d, 1.0).classify(x) == 1);

  // Symmetric pair: boundary is the perpendicular bisector.
  SampleDataset pair;
  pair.instances.resize(2, 2);
  pair.instances << 1, 1, 3, 3;
  pair.labels = {1, -1};
  const Scorer r = fit_rocchio(pair, KernelSpec::rbf(1.0));
  CHECK(r.score(v2(2, 2)) == Approx(0.0).scale(1));
  CHECK(r.score(v2(0, 4)) == Approx(0.0).scale(1));
  CHECK(r.score(v2(1.5, 1.5)) > 0);

  SampleDataset one = d;
  one.labels = {1, 1, 1};
  CHECK_THROWS_AS(fit_rocchio(one), std::invalid_argument);
}

TEST_CASE("fld closed form") {
  // Whitened data: E[X X^T] = I, so FLD at lambda 0 is the mean map.
  PopulationDataset w;
  w.support.resize(4, 2);
  w.support << 1, 0, -1, 0, 0, 1, 0, -1;
  w.support *= std::sqrt(2.0);
  w.mass = Vector::Constant(4, 0.25);
  w.eta.resize(4);
  w.eta << 1, 0.2, 0.7, 0.4;
  CHECK((fit_fld(w, 0.0).weights() - fit_centroid(w, 1.0).weights()).norm() <= 1e-12);

  const double g = 1.0 / 60.0;
  const PopulationDataset four = long_servedio_four_point(g);
  const Scorer f = fit_fld(four, 0.0);
  // The normal equations of the four-point problem, solved by Cramer's rule.
  const Eigen::Matrix2d m = (four.support.transpose() * four.mass.asDiagonal() * four.support);
  const Eigen::Vector2d b = four.support.transpose() * four.mass;
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  CHECK(f.weights()(0) == Approx((b(0) * m(1, 1) - m(0, 1) * b(1)) / det));
  CHECK(f.weights()(1) == Approx((m(0, 0) * b(1) - m(1, 0) * b(0)) / det));
  CHECK(f.weights()(0) > 0);
  CHECK(f.score(v2(g, -g)) < 0);
  CHECK(zero_one_risk(f, four) == Approx(0.5));

  PopulationDataset flat = four;
  flat.support.col(1).setZero();
  CHECK_THROWS_AS(fit_fld(flat, 0.0), SingularSystemError);
  CHECK_NOTHROW(fit_fld(flat, 1e-3));
}

TEST_CASE("erm agrees with closed forms") {
  const SampleDataset d = gaussian_blobs(120, 3, 2.0, 8);
  TrainConfig grad;
  grad.lambda = 0.5;
  grad.optimizer = GradientOptions{};
  const Vector sq = fit_erm(square_loss(), d, grad).weights();
  const Vector fld = fit_fld(d, 0.25).weights();
  CHECK((sq - fld).norm() <= 1e-6 * fld.norm());

  const Vector uh = fit_erm(unhinged_loss(), d, grad).weights();
  const Vector c = fit_centroid(d, 0.5).weights();
  CHECK((uh - c).norm() <= 1e-6 * c.norm());

  // Highly regularised hinge is the centroid.
  const SampleDataset scaled = scale_to_radius(d, 1.5);
  TrainConfig strong = grad;
  strong.lambda = 1.5 * 1.5;
  const Vector h = fit_erm(hinge_loss(), scaled, strong).weights();
  const Vector hc = fit_centroid(scaled, strong.lambda).weights();
  CHECK((h - hc).norm() <= 1e-4 * hc.norm());
}

TEST_CASE("erm descent and local optimality") {
  const SampleDataset d = gaussian_blobs(80, 2, 1.0, 31);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const char* name : {"hinge", "logistic", "square", "unhinged"}) {
    const Loss loss = loss_from_name(name);
    TrainConfig cfg;
    cfg.lambda = 0.05;
    cfg.optimizer = GradientOptions{};
    const ErmResult r = minimize_erm(loss, d, cfg);
    CHECK(r.objective <= erm_objective(loss, d, Vector::Zero(2), cfg.lambda) + 1e-12);
    CHECK(r.objective == Approx(erm_objective(loss, d, r.scorer.weights(), cfg.lambda)));
    for (int k = 0; k < 50; ++k) {
      const Vector step = 1e-3 * v2(normal(rng), normal(rng));
      CHECK(erm_objective(loss, d, r.scorer.weights() + step, cfg.lambda) >= r.objective - 1e-9);
    }
  }
}

TEST_CASE("erm with bias and rff features") {
  SampleDataset d = gaussian_blobs(100, 2, 3.0, 3);
  d.instances.col(0).array() += 5.0;
  TrainConfig cfg;
  cfg.lambda = 1e-3;
  cfg.optimizer = GradientOptions{};
  cfg.use_bias = true;
  const Scorer s = fit_erm(logistic_loss(), d, cfg);
  CHECK(s.bias() != 0.0);
  CHECK(zero_one_risk(s, d) < 0.15);

  cfg.use_bias = false;
  const Scorer r = fit_erm(logistic_loss(), d, cfg, KernelSpec::rff(1.0, 64, 1));
  CHECK(r.weights().size() == 64);
  CHECK_THROWS_AS(fit_erm(logistic_loss(), d, cfg, KernelSpec::rbf(1.0)), std::invalid_argument);
}

TEST_CASE("non-finite objective is a training error") {
  const Loss bad = make_loss(
      "bad", [](double) { return std::numeric_limits<double>::quiet_NaN(); },
      [](double v) { return v; }, [](double) { return 1.0; }, [](double) { return 1.0; });
  TrainConfig cfg;
  cfg.optimizer = GradientOptions{};
  CHECK_THROWS_AS(fit_erm(bad, gaussian_blobs(10, 2, 1.0, 1), cfg), TrainingError);
}

TEST_CASE("grid minimizer is exhaustive") {
  const PopulationDataset p = corrupt_population(long_servedio_population(0.25), NoiseRate(0.2));
  GridOptions opt{-2.0, 2.0, 0.05};
  const GridResult r = grid_minimize(logistic_loss(), p, opt);
  CHECK(r.objective == Approx(linear_risk(logistic_loss(), p, r.weights)));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> cell(0, 80);
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Vector2d w(-2.0 + 0.05 * cell(rng), -2.0 + 0.05 * cell(rng));
    CHECK(linear_risk(logistic_loss(), p, w) >= r.objective);
  }

  // Square loss: the grid minimizer lies within one cell of the least-squares fit.
  const GridResult sq = grid_minimize(square_loss(), p, GridOptions{-3.0, 3.0, 0.01});
  const Vector ls = fit_fld(p, 0.0).weights();
  CHECK(std::abs(sq.weights(0) - ls(0)) <= 0.01);
  CHECK(std::abs(sq.weights(1) - ls(1)) <= 0.01);

  // Symmetric objective: ties resolve to the lexicographically smallest point.
  PopulationDataset sym;
  sym.support = Matrix::Zero(1, 2);
  sym.mass = Vector::Ones(1);
  sym.eta = Vector::Constant(1, 0.5);
  const GridResult flat = grid_minimize(logistic_loss(), sym, GridOptions{-1.0, 1.0, 0.5});
  CHECK(flat.weights(0) == -1.0);
  CHECK(flat.weights(1) == -1.0);

  PopulationDataset three = unhinged_failure_population();
  three.support.conservativeResize(3, 3);
  CHECK_THROWS_AS(grid_minimize(logistic_loss(), three), std::invalid_argument);
  CHECK_THROWS_AS(grid_minimize(logistic_loss(), p, GridOptions{-1, 1, 0}), std::invalid_argument);
}

TEST_CASE("threshold tuning") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    const SampleDataset d = corrupt_sample(gaussian_blobs(60, 2, 1.0, 100 + k), NoiseRate(0.2),
                                           k).first;
    const Scorer s = fit_centroid(d, 1.0);
    Scorer tuned = s;
    tuned.set_threshold(tune_threshold(s, d));
    CHECK(zero_one_risk(tuned, d) == Approx(brute_force_threshold_error(s.scores(d.instances),
                                                                         d.labels)));
  }

  SampleDataset sep;
  sep.instances.resize(4, 1);
  sep.instances << -2, -1, 3, 4;
  sep.labels = {-1, -1, 1, 1};
  Scorer id = Scorer::linear(Vector::Ones(1));
  const double t = tune_threshold(id, sep);
  CHECK(t > -1.0);
  CHECK(t < 3.0);
  id.set_threshold(t);
  CHECK(zero_one_risk(id, sep) == 0.0);

  sep.labels = {1, 1, 1, 1};
  CHECK(tune_threshold(id, sep) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("scorer serialisation") {
  const SampleDataset d = gaussian_blobs(20, 2, 1.0, 2);
  const Vector x = v2(0.7, -0.1);
  std::vector<Scorer> scorers{fit_centroid(d, 1.0), fit_centroid(d, 1.0, KernelSpec::rbf(0.5)),
                              fit_centroid(d, 1.0, KernelSpec::rff(1.0, 32, 4))};
  scorers[0].set_threshold(0.125);
  for (const Scorer& s : scorers) {
    const Scorer back = Scorer::from_json(nlohmann::json::parse(s.to_json().dump()));
    CHECK(back.score(x) == s.score(x));
    CHECK(back.threshold() == s.threshold());
    CHECK(back.form() == s.form());
  }
  CHECK_THROWS_AS(Scorer::from_json(nlohmann::json::parse(R"({"form":"tree"})")), ParseError);
  CHECK_THROWS_AS(Scorer::linear(v2(1, std::nan(""))), std::invalid_argument);
}

TEST_CASE("classify resolves zero to +1") {
  const Scorer zero = Scorer::linear(Vector::Zero(2));
  CHECK(zero.classify(v2(1, 1)) == 1);
  const SampleDataset d = gaussian_blobs(10, 2, 1.0, 0);
  CHECK(zero_one_risk(zero, d) == 0.5);
}

TEST_CASE("train dispatch") {
  const SampleDataset d = gaussian_blobs(50, 2, 1.0, 9);
  TrainConfig cfg;
  CHECK(train(unhinged_loss(), d, cfg).weights() == fit_centroid(d, 1.0).weights());
  CHECK((train(square_loss(), d, cfg).weights() - fit_fld(d, 0.5).weights()).norm() <= 1e-15);
  CHECK_THROWS_AS(train(hinge_loss(), d, cfg), std::invalid_argument);
  cfg.use_bias = true;
  CHECK_THROWS_AS(train(unhinged_loss(), d, cfg), std::invalid_argument);
}

TEST_CASE("regularisation limit") {
  const SampleDataset d = scale_to_radius(gaussian_blobs(60, 2, 1.0, 13), 1.0);
  const std::vector<double> lambdas{1.0, 1e3, 1e6};
  const auto cos = verify_regularization_limit(logistic_loss(), d, lambdas);
  REQUIRE(cos.size() == 3);
  CHECK(cos.back() >= 0.999);
  const auto unh = verify_regularization_limit(unhinged_loss(), d, lambdas);
  for (double c : unh) CHECK(c == Approx(1.0).epsilon(1e-9));
  const std::vector<double> r2{1.0};
  CHECK(verify_regularization_limit(hinge_loss(), d, r2)[0] == Approx(1.0).epsilon(1e-8));
}
