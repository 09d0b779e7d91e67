#include "sln/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "sln/dataset.hpp"
#include "sln/eval.hpp"
#include "sln/noise.hpp"
#include "sln/random.hpp"

namespace sln {

std::string format_real(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

namespace {

std::string kind_name(GeneratorConfig::Kind kind) {
  switch (kind) {
    case GeneratorConfig::Kind::long_servedio:
      return "long";
    case GeneratorConfig::Kind::mease:
      return "mease";
    case GeneratorConfig::Kind::blobs:
      return "blobs";
    case GeneratorConfig::Kind::csv:
      return "csv";
    case GeneratorConfig::Kind::libsvm:
      return "libsvm";
  }
  return "long";
}

GeneratorConfig::Kind kind_from_name(const std::string& name) {
  if (name == "long") return GeneratorConfig::Kind::long_servedio;
  if (name == "mease") return GeneratorConfig::Kind::mease;
  if (name == "blobs") return GeneratorConfig::Kind::blobs;
  if (name == "csv") return GeneratorConfig::Kind::csv;
  if (name == "libsvm") return GeneratorConfig::Kind::libsvm;
  throw std::invalid_argument("unknown generator '" + name + "'");
}

void reject_unknown(const nlohmann::json& doc, const std::set<std::string>& known,
                    const std::string& where) {
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json gen = {{"kind", kind_name(generator.kind)},
                        {"gamma", generator.gamma},
                        {"separation", generator.separation},
                        {"dim", generator.dim},
                        {"path", generator.path},
                        {"train_fraction", generator.train_fraction},
                        {"standardize", generator.standardize}};
  return {{"losses", losses},
          {"rhos", rhos},
          {"trials", trials},
          {"n_train", n_train},
          {"n_test", n_test},
          {"generator", gen},
          {"lambda", lambda},
          {"kernel", kernel.to_string()},
          {"threshold_tuning", tune_threshold},
          {"use_bias", use_bias},
          {"base_seed", base_seed},
          {"metrics", metrics},
          {"optimizer", optimizer},
          {"gradient",
           {{"max_iters", gradient.max_iters},
            {"step", gradient.step},
            {"tol", gradient.tol},
            {"restarts", gradient.restarts}}},
          {"jobs", jobs}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc,
                                             const ExperimentConfig& defaults) {
  if (!doc.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  reject_unknown(doc,
                 {"losses", "rhos", "trials", "n_train", "n_test", "generator", "lambda", "kernel",
                  "threshold_tuning", "use_bias", "base_seed", "metrics", "optimizer", "gradient",
                  "jobs"},
                 "experiment config");
  ExperimentConfig c = defaults;
  c.losses = doc.value("losses", c.losses);
  c.rhos = doc.value("rhos", c.rhos);
  c.trials = doc.value("trials", c.trials);
  c.n_train = doc.value("n_train", c.n_train);
  c.n_test = doc.value("n_test", c.n_test);
  c.lambda = doc.value("lambda", c.lambda);
  if (doc.contains("kernel")) c.kernel = KernelSpec::parse(doc.at("kernel").get<std::string>());
  c.tune_threshold = doc.value("threshold_tuning", c.tune_threshold);
  c.use_bias = doc.value("use_bias", c.use_bias);
  c.base_seed = doc.value("base_seed", c.base_seed);
  c.metrics = doc.value("metrics", c.metrics);
  c.optimizer = doc.value("optimizer", c.optimizer);
  c.jobs = doc.value("jobs", c.jobs);
  if (doc.contains("generator")) {
    const auto& g = doc.at("generator");
    reject_unknown(g, {"kind", "gamma", "separation", "dim", "path", "train_fraction", "standardize"},
                   "generator config");
    if (g.contains("kind")) c.generator.kind = kind_from_name(g.at("kind").get<std::string>());
    c.generator.gamma = g.value("gamma", c.generator.gamma);
    c.generator.separation = g.value("separation", c.generator.separation);
    c.generator.dim = g.value("dim", c.generator.dim);
    c.generator.path = g.value("path", c.generator.path);
    c.generator.train_fraction = g.value("train_fraction", c.generator.train_fraction);
    c.generator.standardize = g.value("standardize", c.generator.standardize);
  }
  if (doc.contains("gradient")) {
    const auto& g = doc.at("gradient");
    reject_unknown(g, {"max_iters", "step", "tol", "restarts"}, "gradient config");
    c.gradient.max_iters = g.value("max_iters", c.gradient.max_iters);
    c.gradient.step = g.value("step", c.gradient.step);
    c.gradient.tol = g.value("tol", c.gradient.tol);
    c.gradient.restarts = g.value("restarts", c.gradient.restarts);
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  return from_json(doc, ExperimentConfig{});
}

Optimizer resolve_optimizer(const ExperimentConfig& config, const std::string& loss_name) {
  if (config.optimizer == "grad") return config.gradient;
  if (config.optimizer == "closed") return ClosedForm{};
  if (config.optimizer == "grid") return GridOptions{};
  if (config.optimizer != "auto")
    throw std::invalid_argument("unknown optimizer '" + config.optimizer + "'");
  const bool closed = loss_name == "unhinged" || loss_name.starts_with("whinge:") ||
                      (loss_name == "square" && config.kernel.has_explicit_features());
  if (closed && !config.use_bias) return ClosedForm{};
  return config.gradient;
}

namespace {

struct CellResult {
  bool ok = false;
  std::vector<double> values;  // one per metric
};

void validate(const ExperimentConfig& c) {
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.losses.empty() || c.rhos.empty() || c.metrics.empty())
    throw std::invalid_argument("losses, rhos and metrics must be non-empty");
  for (double r : c.rhos) NoiseRate{r};
  for (const auto& l : c.losses) loss_from_name(l);
  for (const auto& m : c.metrics)
    if (m != "zero_one" && m != "one_minus_auc")
      throw std::invalid_argument("unknown metric '" + m + "'");
  if (c.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  resolve_optimizer(c, c.losses.front());
}

struct TrialData {
  SampleDataset train;
  SampleDataset test;
};

class TrialSource {
 public:
  explicit TrialSource(const ExperimentConfig& c) : config_(c) {
    const auto& g = c.generator;
    if (g.kind == GeneratorConfig::Kind::long_servedio) {
      population_ = long_servedio_population(g.gamma);
    } else if (g.kind == GeneratorConfig::Kind::csv) {
      pool_ = load_csv(g.path);
    } else if (g.kind == GeneratorConfig::Kind::libsvm) {
      pool_ = load_libsvm(g.path);
    }
  }

  TrialData draw(std::uint64_t trial_seed) const {
    const auto& g = config_.generator;
    TrialData out;
    switch (g.kind) {
      case GeneratorConfig::Kind::long_servedio:
        out.train = sample_from_population(*population_, config_.n_train, derive_seed(trial_seed, 1));
        out.test = sample_from_population(*population_, config_.n_test, derive_seed(trial_seed, 2));
        break;
      case GeneratorConfig::Kind::mease:
        out.train = mease_sample(config_.n_train, derive_seed(trial_seed, 1));
        out.test = mease_sample(config_.n_test, derive_seed(trial_seed, 2));
        break;
      case GeneratorConfig::Kind::blobs:
        out.train = gaussian_blobs(config_.n_train, g.dim, g.separation, derive_seed(trial_seed, 1));
        out.test = gaussian_blobs(config_.n_test, g.dim, g.separation, derive_seed(trial_seed, 2));
        break;
      case GeneratorConfig::Kind::csv:
      case GeneratorConfig::Kind::libsvm: {
        auto [train, test] = train_test_split(*pool_, g.train_fraction, derive_seed(trial_seed, 3));
        out.train = std::move(train);
        out.test = std::move(test);
        break;
      }
    }
    if (g.standardize) {
      auto std_data = standardize(out.train, {out.test});
      out.train = std::move(std_data.train);
      out.test = std::move(std_data.others.front());
    }
    return out;
  }

 private:
  const ExperimentConfig& config_;
  std::optional<PopulationDataset> population_;
  std::optional<SampleDataset> pool_;
};

double metric_value(const std::string& metric, const Scorer& scorer, const SampleDataset& test) {
  if (metric == "zero_one") return zero_one_risk(scorer, test);
  return 1.0 - auc(scorer, test);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const TrialSource source(config);
  std::vector<Loss> losses;
  for (const auto& name : config.losses) losses.push_back(loss_from_name(name));

  const std::size_t n_rho = config.rhos.size();
  const std::size_t n_loss = losses.size();
  const std::size_t cells_per_trial = n_rho * n_loss;
  std::vector<CellResult> results(static_cast<std::size_t>(config.trials) * cells_per_trial);
  std::vector<std::string> errors(static_cast<std::size_t>(config.trials));

  auto run_trial = [&](int t) {
    const std::uint64_t trial_seed = config.base_seed + static_cast<std::uint64_t>(t);
    TrialData data;
    try {
      data = source.draw(trial_seed);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(t)] = e.what();
      return;
    }
    for (std::size_t r = 0; r < n_rho; ++r) {
      const auto [noisy, record] =
          corrupt_sample(data.train, NoiseRate(config.rhos[r]), derive_seed(trial_seed, 100 + r));
      for (std::size_t l = 0; l < n_loss; ++l) {
        CellResult& cell = results[static_cast<std::size_t>(t) * cells_per_trial + r * n_loss + l];
        try {
          TrainConfig tc;
          tc.lambda = config.lambda;
          tc.optimizer = resolve_optimizer(config, config.losses[l]);
          tc.use_bias = config.use_bias;
          tc.seed = derive_seed(trial_seed, 1000 + r * n_loss + l);
          Scorer scorer = train(losses[l], noisy, tc, config.kernel);
          if (config.tune_threshold) scorer.set_threshold(tune_threshold(scorer, noisy));
          for (const auto& m : config.metrics) cell.values.push_back(metric_value(m, scorer, data.test));
          cell.ok = true;
        } catch (const std::exception& e) {
          cell.ok = false;
          cell.values.clear();
          if (errors[static_cast<std::size_t>(t)].empty()) errors[static_cast<std::size_t>(t)] = e.what();
        }
      }
    }
  };

  if (config.jobs <= 1) {
    for (int t = 0; t < config.trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < config.jobs; ++w)
      workers.emplace_back([&] {
        for (int t = next++; t < config.trials; t = next++) run_trial(t);
      });
    for (auto& w : workers) w.join();
  }

  // Reduction in trial order regardless of execution order.
  ExperimentReport report;
  for (std::size_t l = 0; l < n_loss; ++l)
    for (std::size_t r = 0; r < n_rho; ++r)
      for (std::size_t m = 0; m < config.metrics.size(); ++m) {
        double sum = 0.0;
        int ok = 0;
        for (int t = 0; t < config.trials; ++t) {
          const auto& cell = results[static_cast<std::size_t>(t) * cells_per_trial + r * n_loss + l];
          if (!cell.ok) continue;
          sum += cell.values[m];
          ++ok;
        }
        const double mean = ok > 0 ? sum / ok : std::nan("");
        double sq = 0.0;
        for (int t = 0; t < config.trials; ++t) {
          const auto& cell = results[static_cast<std::size_t>(t) * cells_per_trial + r * n_loss + l];
          if (cell.ok) sq += (cell.values[m] - mean) * (cell.values[m] - mean);
        }
        const double sd = ok > 0 ? std::sqrt(sq / ok) : std::nan("");
        report.rows.push_back({losses[l].name(), config.rhos[r], config.metrics[m], mean, sd, ok,
                               config.trials - ok});
      }

  nlohmann::json failures = nlohmann::json::array();
  for (const auto& row : report.rows)
    if (row.failed > 0)
      failures.push_back({{"loss", row.loss}, {"rho", row.rho}, {"metric", row.metric},
                          {"failed", row.failed}});
  std::string first_error;
  for (const auto& e : errors)
    if (!e.empty()) {
      first_error = e;
      break;
    }
  report.metadata = {{"config", config.to_json()},
                     {"std", "population (divide by successful trials)"},
                     {"trial_seed", "base_seed + trial"},
                     {"threshold_tuning_data", "corrupted training sample"},
                     {"failures", failures},
                     {"first_error", first_error}};
  return report;
}

const ExperimentRow* ExperimentReport::find(const std::string& loss, double rho,
                                            const std::string& metric) const {
  for (const auto& row : rows)
    if (row.loss == loss && row.rho == rho && row.metric == metric) return &row;
  return nullptr;
}

std::string ExperimentReport::to_csv() const {
  std::string out = "loss,rho,metric,mean,std,trials\n";
  for (const auto& row : rows)
    out += row.loss + "," + format_real(row.rho) + "," + row.metric + "," + format_real(row.mean) +
           "," + format_real(row.std) + "," + std::to_string(row.trials) + "\n";
  return out;
}

std::string ExperimentReport::to_markdown() const {
  std::vector<std::string> metrics, losses;
  std::vector<double> rhos;
  for (const auto& row : rows) {
    if (std::find(metrics.begin(), metrics.end(), row.metric) == metrics.end())
      metrics.push_back(row.metric);
    if (std::find(losses.begin(), losses.end(), row.loss) == losses.end()) losses.push_back(row.loss);
    if (std::find(rhos.begin(), rhos.end(), row.rho) == rhos.end()) rhos.push_back(row.rho);
  }
  auto fixed2 = [](double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << x;
    return s.str();
  };

  std::ostringstream out;
  for (const auto& metric : metrics) {
    out << "### " << (metric == "zero_one" ? "0-1 error" : "1 - AUC") << "\n\n|";
    for (const auto& l : losses) out << " | " << l;
    out << " |\n|---";
    for (std::size_t i = 0; i < losses.size(); ++i) out << "|---";
    out << "|\n";
    for (double rho : rhos) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& l : losses)
        if (const auto* row = find(l, rho, metric); row && std::isfinite(row->mean))
          best = std::min(best, std::stod(fixed2(row->mean)));
      out << "| rho = " << format_real(rho);
      for (const auto& l : losses) {
        const auto* row = find(l, rho, metric);
        if (!row || !std::isfinite(row->mean)) {
          out << " | n/a";
          continue;
        }
        const std::string cell = fixed2(row->mean) + " ± " + fixed2(row->std);
        const bool is_best = std::stod(fixed2(row->mean)) == best;
        out << " | " << (is_best ? "**" + cell + "**" : cell);
      }
      out << " |\n";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace sln
