#include "sln/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "sln/dataset.hpp"
#include "sln/eval.hpp"
#include "sln/experiment.hpp"
#include "sln/kernel.hpp"
#include "sln/learners.hpp"
#include "sln/noise.hpp"
#include "sln/random.hpp"

namespace sln {

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks)
    out << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " | measured "
        << c.measured << " | expected " << c.expected << "\n";
  return out.str();
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : checks)
    rows.push_back({{"suite", c.suite},
                    {"name", c.name},
                    {"passed", c.passed},
                    {"measured", c.measured},
                    {"expected", c.expected}});
  return {{"passed", passed()}, {"checks", rows}};
}

void SuiteReport::append(const SuiteReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  seconds += other.seconds;
}

double max_derivative_error(const Loss& loss, std::span<const double> grid, double h) {
  double worst = 0.0;
  for (double v : grid) {
    bool near_kink = false;
    for (double k : loss.kinks()) near_kink = near_kink || std::abs(v - k) < 10.0 * h;
    if (near_kink) continue;
    for (int y : {1, -1}) {
      const double fd = (loss.eval(y, v + h) - loss.eval(y, v - h)) / (2.0 * h);
      const double d = loss.deriv(y, v);
      worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
    }
  }
  return worst;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::string vec(const Vector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v(i));
  return out + ")";
}

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)), start_(Clock::now()) {}

  void check(std::string name, bool passed, std::string measured, std::string expected) {
    report_.checks.push_back({suite_, std::move(name), passed, std::move(measured), std::move(expected)});
  }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  void runtime_limit(double seconds) {
    const double t = elapsed();
    check("runtime", t < seconds, num(t) + " s", "< " + num(seconds) + " s");
  }

  SuiteReport finish() {
    report_.seconds = elapsed();
    return std::move(report_);
  }

 private:
  std::string suite_;
  Clock::time_point start_;
  SuiteReport report_;
};

PopulationDataset random_population(Rng& rng, int max_support, int dim) {
  std::uniform_int_distribution<int> size(1, max_support);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k = size(rng);
  PopulationDataset pop;
  pop.support.resize(k, dim);
  pop.mass.resize(k);
  pop.eta.resize(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < dim; ++j) pop.support(i, j) = normal(rng);
    pop.mass(i) = 0.05 + unit(rng);
    pop.eta(i) = unit(rng);
  }
  pop.mass /= pop.mass.sum();
  return pop;
}

std::vector<SampleDataset> limit_datasets(double radius) {
  std::vector<SampleDataset> out;
  for (std::uint64_t k = 0; k < 10; ++k)
    out.push_back(scale_to_radius(gaussian_blobs(200, 3, 2.0, derive_seed(0x11a, k)), radius));
  return out;
}

// ---------------------------------------------------------------------------

SuiteReport suite_failure_example() {
  Recorder r("failure-example");
  const PopulationDataset pop = unhinged_failure_population();

  const Scorer centroid = fit_centroid(pop, 1.0);
  const Vector expected = Eigen::Vector2d(1.0, -1.0);
  const double err = (centroid.weights() - expected).lpNorm<Eigen::Infinity>();
  r.check("unhinged weight", err <= 1e-12, vec(centroid.weights()), "(1, -1) within 1e-12");
  const double s1 = centroid.score(pop.support.row(0).transpose());
  r.check("unhinged misclassifies x1", s1 < 0.0, "score(x1) = " + num(s1), "< 0");

  const Scorer fld = fit_fld(pop, 1e-10);
  const Vector square_target = Eigen::Vector2d(1.0, 0.0);
  const double fld_err = (fld.weights() - square_target).lpNorm<Eigen::Infinity>();
  r.check("square-loss weight", fld_err <= 1e-4, vec(fld.weights()), "(1, 0) within 1e-4");
  int correct = 0;
  for (Eigen::Index i = 0; i < pop.size(); ++i)
    correct += fld.classify(pop.support.row(i).transpose()) == (pop.eta(i) > 0.5 ? 1 : -1);
  r.check("square-loss classifies all points", correct == 3, std::to_string(correct) + "/3", "3/3");
  r.runtime_limit(1.0);
  return r.finish();
}

SuiteReport suite_fld_closed_form() {
  Recorder r("fld-closed-form");
  const std::vector<std::pair<double, std::string>> gammas = {
      {1.0 / 60.0, "1/60"}, {1.0 / 13.0, "1/13"}, {1.0 / 12.5, "1/12.5"}};
  auto rel_err = [](const Vector& w, const Eigen::Vector2d& t) {
    return std::max(std::abs(w(0) - t(0)) / std::abs(t(0)), std::abs(w(1) - t(1)) / std::abs(t(1)));
  };
  for (const auto& [g, label] : gammas) {
    const PopulationDataset pop = long_servedio_four_point(g);
    const Scorer fld = fit_fld(pop, 0.0);
    const double denom = 8.0 * g * g + 3.0;
    const Eigen::Vector2d stated((8.0 * g + 3.0) / denom, -(g + 1.0) / (3.0 * g * denom));
    const Eigen::Vector2d normal_eq((8.0 * g + 3.0) / denom, (1.0 - g) / (3.0 * g * denom));
    const double e1 = rel_err(fld.weights(), stated);
    r.check("gamma=" + label + " reference closed form", e1 <= 1e-10,
            vec(fld.weights()) + " (rel err " + num(e1) + ")", vec(stated) + " within 1e-10 rel");
    const double e2 = rel_err(fld.weights(), normal_eq);
    r.check("gamma=" + label + " normal-equation solution", e2 <= 1e-10,
            vec(fld.weights()) + " (rel err " + num(e2) + ")", vec(normal_eq) + " within 1e-10 rel");
    if (label == "1/60") {
      const double risk = zero_one_risk(fld, pop);
      r.check("gamma=1/60 clean 0-1 error", risk == 0.5, num(risk), "0.5 exactly");
    }
  }
  return r.finish();
}

SuiteReport suite_svm_limit() {
  Recorder r("svm-limit");
  double worst = 0.0;
  for (const auto& data : limit_datasets(2.0)) {
    const double r2 = std::pow(max_row_norm(data.instances), 2);
    TrainConfig config;
    config.lambda = r2;
    config.optimizer = GradientOptions{};
    const Vector w = fit_erm(hinge_loss(), data, config).weights();
    const Vector c = fit_centroid(data, r2).weights();
    worst = std::max(worst, (w - c).norm() / c.norm());
  }
  r.check("hinge at lambda=R^2 equals centroid (10 datasets)", worst <= 1e-4,
          "max rel norm gap " + num(worst), "<= 1e-4");
  r.runtime_limit(10.0);
  return r.finish();
}

SuiteReport suite_potential_limit() {
  Recorder r("potential-limit");
  double worst_final = 1.0;
  double worst_drop = 0.0;
  std::string schedule;
  bool first = true;
  for (const auto& data : limit_datasets(2.0)) {
    const double r2 = std::pow(max_row_norm(data.instances), 2);
    std::vector<double> lambdas;
    for (int k = 0; k <= 6; ++k) lambdas.push_back(r2 * std::pow(10.0, k));
    const auto cos = verify_regularization_limit(logistic_loss(), data, lambdas);
    worst_final = std::min(worst_final, cos.back());
    for (std::size_t i = 0; i + 1 < cos.size(); ++i) worst_drop = std::max(worst_drop, cos[i] - cos[i + 1]);
    if (first) {
      for (double c : cos) schedule += (schedule.empty() ? "" : ", ") + num(c);
      first = false;
    }
  }
  r.check("logistic cosine at lambda=1e6 R^2 (10 datasets)", worst_final >= 0.999,
          "min " + num(worst_final), ">= 0.999");
  r.check("cosine schedule nondecreasing", worst_drop <= 1e-6, "max drop " + num(worst_drop),
          "<= 1e-6");
  r.check("cosine schedule, first dataset", true, "[" + schedule + "]", "reported");
  return r.finish();
}

SuiteReport suite_meanmap() {
  Recorder r("meanmap");
  Rng rng(0x3ea);
  std::vector<PopulationDataset> pops = {long_servedio_population(0.5), unhinged_failure_population()};
  for (int i = 0; i < 3; ++i) pops.push_back(random_population(rng, 8, 2));
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix random_probes(5, 2);
  for (Eigen::Index i = 0; i < random_probes.size(); ++i) random_probes.data()[i] = normal(rng);

  const std::vector<KernelSpec> kernels = {KernelSpec::linear(), KernelSpec::rbf(1.0)};
  for (const auto& spec : kernels)
    for (double rho : {0.1, 0.3, 0.45}) {
      double worst = 0.0;
      for (const auto& pop : pops) {
        Matrix probes(pop.size() + random_probes.rows(), 2);
        probes << pop.support, random_probes;
        worst = std::max(worst, verify_mean_map_scaling(pop, NoiseRate(rho), spec, probes));
      }
      r.check("exact " + spec.to_string() + " rho=" + num(rho), worst <= 1e-10, num(worst), "<= 1e-10");
    }

  const PopulationDataset pop = long_servedio_population(0.5);
  std::uint64_t stream = 0;
  for (const auto& spec : kernels)
    for (double rho : {0.1, 0.3, 0.45}) {
      const auto probes =
          empirical_mean_map_check(pop, NoiseRate(rho), spec, pop.support, 100000, derive_seed(7, stream++));
      int inside = 0;
      double worst_z = 0.0;
      for (const auto& p : probes) {
        inside += p.within_3_sigma;
        worst_z = std::max(worst_z, std::abs(p.estimate - p.exact) / p.sigma);
      }
      r.check("empirical " + spec.to_string() + " rho=" + num(rho) + " (1e5 draws)",
              inside == static_cast<int>(probes.size()),
              std::to_string(inside) + "/" + std::to_string(probes.size()) + " probes, max |z| " + num(worst_z),
              "all within 3 sigma");
    }
  return r.finish();
}

SuiteReport suite_gridscan() {
  Recorder r("gridscan");
  const PopulationDataset clean = long_servedio_population(1.0 / 60.0);
  const PopulationDataset noisy = corrupt_population(clean, NoiseRate(0.3));
  const std::vector<std::pair<Loss, Eigen::Vector2d>> cases = {
      {tangent_boost_loss(), {0.2, 1.3}}, {t_logistic_loss(), {1.025, 5.1}}};
  for (const auto& [loss, target] : cases) {
    const GridResult g = grid_minimize(loss, noisy);
    const double dist = (g.weights - target).norm();
    r.check(loss.name() + " minimiser", dist <= 0.05, vec(g.weights) + ", distance " + num(dist),
            vec(target) + " within 0.05");
    const double risk = zero_one_risk(Scorer::linear(g.weights), clean);
    r.check(loss.name() + " clean 0-1 error", risk == 0.5, num(risk), "0.5");
  }
  r.runtime_limit(60.0);
  return r.finish();
}

SuiteReport suite_regret() {
  Recorder r("regret");
  Rng rng(0x4e9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int chain_violations = 0;
  int ratio_violations = 0;
  int optimum_violations = 0;
  double worst_ratio_gap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const PopulationDataset pop = random_population(rng, 8, 2);
    const double bound = 1.0 + 4.0 * unit(rng);
    const double rho = 0.49 * unit(rng);
    std::vector<double> scores(static_cast<std::size_t>(pop.size()));
    for (double& s : scores) {
      const double u = unit(rng);
      s = u < 0.1 ? 0.0 : u < 0.2 ? bound * (unit(rng) < 0.5 ? -1 : 1) : bound * (2.0 * unit(rng) - 1.0);
    }
    const double r01 = zero_one_regret(scores, pop);
    const double ru = bounded_regret_unhinged(scores, pop, bound);
    if (r01 > ru + 1e-12) ++chain_violations;

    const PopulationDataset noisy = corrupt_population(pop, NoiseRate(rho));
    const double ru_noisy = bounded_regret_unhinged(scores, noisy, bound);
    const double gap = std::abs(ru - ru_noisy / (1.0 - 2.0 * rho)) / std::max(1.0, std::abs(ru));
    worst_ratio_gap = std::max(worst_ratio_gap, gap);
    if (gap > 1e-9) ++ratio_violations;

    std::vector<double> optimum(scores.size());
    for (Eigen::Index i = 0; i < pop.size(); ++i) {
      const double m = 2.0 * pop.eta(i) - 1.0;
      optimum[static_cast<std::size_t>(i)] = m > 0 ? bound : m < 0 ? -bound : 0.0;
    }
    if (std::abs(bounded_regret_unhinged(optimum, pop, bound)) > 1e-12) ++optimum_violations;
  }
  r.check("0-1 regret <= bounded unhinged regret (1000 tuples)", chain_violations == 0,
          std::to_string(chain_violations) + " violations", "0");
  r.check("clean regret = corrupted regret / (1 - 2 rho)", ratio_violations == 0,
          std::to_string(ratio_violations) + " violations, max gap " + num(worst_ratio_gap), "gap <= 1e-9");
  r.check("B sign(2 eta - 1) attains zero regret", optimum_violations == 0,
          std::to_string(optimum_violations) + " violations", "0");
  return r.finish();
}

SuiteReport suite_losses() {
  Recorder r("losses");
  const std::map<std::string, bool> expected = {
      {"unhinged", true}, {"whinge:0.5", true}, {"whinge:0.3", false}, {"hinge", false},
      {"logistic", false}, {"square", false}, {"tlogistic", false}, {"tangentboost", false}};
  const auto grid = default_v_grid();
  for (const auto& [name, robust] : expected) {
    const auto verdict = is_strongly_sln_robust(loss_from_name(name), grid, 1e-8);
    r.check("strong robustness verdict " + name, verdict.robust == robust,
            std::string(verdict.robust ? "robust" : "not robust") + " (max deviation " +
                num(verdict.max_deviation) + ")",
            robust ? "robust" : "not robust");
  }

  Rng rng(0x1055);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_identity = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const PopulationDataset pop = random_population(rng, 8, 2);
    const NoiseRate rho(0.45 * unit(rng));
    const PopulationDataset noisy = corrupt_population(pop, rho);
    std::vector<double> scores(static_cast<std::size_t>(pop.size()));
    for (double& s : scores) s = 10.0 * unit(rng) - 5.0;
    for (const auto& name : catalog_names()) {
      const Loss loss = loss_from_name(name);
      const double clean = population_risk(loss, scores, pop);
      const double corrected = population_risk(noise_correct(loss, rho), scores, noisy);
      worst_identity = std::max(worst_identity, std::abs(clean - corrected) / std::max(1.0, std::abs(clean)));
    }
  }
  r.check("noise-corrected risk identity (200 populations x catalog)", worst_identity <= 1e-10,
          "max rel gap " + num(worst_identity), "<= 1e-10");

  for (const auto& name : catalog_names()) {
    if (name == "zero_one") continue;
    const double err = max_derivative_error(loss_from_name(name), grid);
    r.check("finite-difference derivative " + name, err <= 1e-5, num(err), "<= 1e-5");
  }
  return r.finish();
}

SuiteReport suite_rff() {
  Recorder r("rff");
  const KernelSpec exact = KernelSpec::rbf(1.0);
  const KernelSpec approx = KernelSpec::rff(1.0, 2048, 2024);
  const FeatureMap map(approx, 2);
  Rng rng(0xff);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto unit_vector = [&] {
    Eigen::Vector2d v(normal(rng), normal(rng));
    return Vector(v.normalized());
  };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vector x = unit_vector();
    const Vector z = unit_vector();
    worst = std::max(worst, std::abs(map.apply(x).dot(map.apply(z)) - kernel_eval(exact, x, z)));
  }
  r.check("max |rff - rbf| over 100 unit pairs", worst <= 0.05, num(worst), "<= 0.05");

  const SampleDataset data = gaussian_blobs(500, 2, 4.0, 99);
  const Scorer exact_centroid = fit_centroid(data, 1.0, exact);
  const Scorer approx_centroid = fit_centroid(data, 1.0, approx);
  int agree = 0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const Vector x = data.instances.row(i).transpose();
    agree += exact_centroid.classify(x) == approx_centroid.classify(x);
  }
  const double rate = agree / static_cast<double>(data.size());
  r.check("rff centroid agrees with rbf centroid (500 points)", rate >= 0.99, num(rate), ">= 0.99");
  return r.finish();
}

SuiteReport suite_centroid() {
  Recorder r("centroid");
  const PopulationDataset longp = long_servedio_population(0.5);
  const Scorer c = fit_centroid(longp, 1.0);
  const Vector target = Eigen::Vector2d(0.625, 0.375);
  r.check("long gamma=1/2 weight", (c.weights() - target).lpNorm<Eigen::Infinity>() <= 1e-12,
          vec(c.weights()), vec(target));
  const double risk = zero_one_risk(c, longp);
  r.check("long gamma=1/2 clean 0-1 error", risk == 0.0, num(risk), "0");

  Rng rng(0xce);
  double worst_centroid = 0.0;
  double worst_fld = 0.0;
  int flips = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PopulationDataset pop = random_population(rng, 8, 3);
    const Scorer clean = fit_centroid(pop, 1.0);
    const Scorer clean_fld = fit_fld(pop, 0.1);
    for (double rho : {0.1, 0.2, 0.3, 0.4}) {
      const PopulationDataset noisy = corrupt_population(pop, NoiseRate(rho));
      const Scorer corrupted = fit_centroid(noisy, 1.0);
      worst_centroid = std::max(worst_centroid,
                                (corrupted.weights() / (1.0 - 2.0 * rho) - clean.weights()).lpNorm<Eigen::Infinity>());
      for (Eigen::Index i = 0; i < pop.size(); ++i) {
        const Vector x = pop.support.row(i).transpose();
        if (std::abs(clean.score(x)) > 1e-9) flips += clean.classify(x) != corrupted.classify(x);
      }
      const Scorer fld = fit_fld(noisy, 0.1);
      worst_fld = std::max(worst_fld,
                           (fld.weights() - (1.0 - 2.0 * rho) * clean_fld.weights()).lpNorm<Eigen::Infinity>());
    }
  }
  r.check("corrupted centroid / (1 - 2 rho) = clean centroid", worst_centroid <= 1e-10,
          num(worst_centroid), "<= 1e-10");
  r.check("corrupted centroid classifications unchanged", flips == 0, std::to_string(flips) + " flips",
          "0");
  r.check("corrupted FLD = (1 - 2 rho) clean FLD", worst_fld <= 1e-8, num(worst_fld), "<= 1e-8");
  return r.finish();
}

ExperimentConfig long_table_config(double gamma) {
  ExperimentConfig c;
  c.losses = {"unhinged", "hinge"};
  c.rhos = {0.0, 0.1, 0.2, 0.3, 0.4};
  c.trials = 125;
  c.n_train = 800;
  c.n_test = 1000;
  c.generator.kind = GeneratorConfig::Kind::long_servedio;
  c.generator.gamma = gamma;
  c.lambda = 1e-16;
  return c;
}

// The tabulated pattern is asserted on the support (1, 0), (1/12, 5/12),
// (1/12, -1/12). At gamma = 1/2 the same protocol is only reported: there
// the exact hinge minimiser stays perfect and the unhinged sample centroid
// occasionally tips at rho >= 0.3.
SuiteReport suite_long_experiment() {
  Recorder r("long-experiment");
  const ExperimentReport report = run_experiment(long_table_config(1.0 / 12.0));
  auto cell = [](const ExperimentRow* row) {
    return row ? num(row->mean) + " +- " + num(row->std) : std::string("missing");
  };
  for (double rho : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    const auto* row = report.find("unhinged", rho, "zero_one");
    r.check("gamma=1/12 unhinged rho=" + num(rho), row && row->failed == 0 && row->mean <= 0.01,
            cell(row), "<= 0.01");
  }
  const auto* h0 = report.find("hinge", 0.0, "zero_one");
  r.check("gamma=1/12 hinge rho=0", h0 && h0->failed == 0 && h0->mean <= 0.01, cell(h0), "<= 0.01");
  for (double rho : {0.3, 0.4}) {
    const auto* row = report.find("hinge", rho, "zero_one");
    r.check("gamma=1/12 hinge rho=" + num(rho), row && row->failed == 0 && row->mean >= 0.15,
            cell(row), ">= 0.15");
  }
  r.runtime_limit(120.0);

  const ExperimentReport half = run_experiment(long_table_config(0.5));
  for (const char* loss : {"unhinged", "hinge"})
    for (double rho : {0.3, 0.4})
      r.check(std::string("gamma=1/2 ") + loss + " rho=" + num(rho) + " (reported)", true,
              cell(half.find(loss, rho, "zero_one")), "not asserted");
  return r.finish();
}

// Features are standardised on the training sample; on the raw [0, 1]^20
// cube the 0.5 offset leaks sampling noise into the centroid direction.
SuiteReport suite_mease() {
  Recorder r("mease");
  ExperimentConfig c;
  c.losses = {"unhinged", "logistic"};
  c.rhos = {0.4};
  c.trials = 25;
  c.generator.kind = GeneratorConfig::Kind::mease;
  c.generator.standardize = true;
  c.lambda = 1e-6;
  c.metrics = {"one_minus_auc"};
  const ExperimentReport report = run_experiment(c);
  const auto* u = report.find("unhinged", 0.4, "one_minus_auc");
  const auto* l = report.find("logistic", 0.4, "one_minus_auc");
  const bool ok = u && l && u->failed == 0 && l->failed == 0 && u->mean <= l->mean + 0.02;
  r.check("unhinged 1-AUC <= logistic 1-AUC + 0.02 at rho=0.4, standardised",
          ok, u && l ? num(u->mean) + " vs " + num(l->mean) : "missing", "unhinged <= logistic + 0.02");

  c.generator.standardize = false;
  const ExperimentReport raw = run_experiment(c);
  const auto* ru = raw.find("unhinged", 0.4, "one_minus_auc");
  const auto* rl = raw.find("logistic", 0.4, "one_minus_auc");
  r.check("raw features (reported)", true,
          ru && rl ? num(ru->mean) + " vs " + num(rl->mean) : "missing", "not asserted");
  return r.finish();
}

const std::vector<std::pair<std::string, std::function<SuiteReport()>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<SuiteReport()>>> suites = {
      {"centroid", suite_centroid},   {"svm-limit", suite_svm_limit},
      {"potential-limit", suite_potential_limit},
      {"meanmap", suite_meanmap},     {"gridscan", suite_gridscan},
      {"fld-closed-form", suite_fld_closed_form}, {"failure-example", suite_failure_example},
      {"regret", suite_regret},       {"losses", suite_losses},
      {"rff", suite_rff},             {"long-experiment", suite_long_experiment},
      {"mease", suite_mease}};
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

SuiteReport run_suite(const std::string& requested) {
  static const std::map<std::string, std::string> aliases = {
      {"appendixE", "fld-closed-form"}, {"appendixF", "failure-example"}};
  const auto alias = aliases.find(requested);
  const std::string& name = alias == aliases.end() ? requested : alias->second;
  SuiteReport report;
  bool found = false;
  for (const auto& [suite, fn] : registry())
    if (name == "all" || name == suite) {
      report.append(fn());
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown verification suite '" + name + "'");
  return report;
}

}  // namespace sln
