// Command-line front end: data generation, corruption, training, evaluation,
// benchmarks and the verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sln/dataset.hpp"
#include "sln/eval.hpp"
#include "sln/experiment.hpp"
#include "sln/learners.hpp"
#include "sln/loss.hpp"
#include "sln/noise.hpp"
#include "sln/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_meta(const std::string& out_path, const std::string& command, const json& config) {
  write_text(out_path + ".meta.json", json{{"command", command}, {"config", config}}.dump(2) + "\n");
}

struct GenArgs {
  std::string generator = "long";
  double gamma = 0.5;
  long n = 800;
  int dim = 2;
  double separation = 2.0;
  std::string out;
};

struct CorruptArgs {
  double rho = 0.0;
  std::string in, out;
};

struct TrainArgs {
  std::string loss = "unhinged";
  std::string kernel = "linear";
  double lambda = 1.0;
  std::string optimizer = "closed";
  bool bias = false;
  bool tune = false;
  int max_iters = 5000;
  int restarts = 5;
  std::string in, model_out;
};

struct EvalArgs {
  std::string model, in, out;
};

struct BenchArgs {
  std::string config, out, format;
  std::vector<std::string> losses;
  std::vector<double> rhos;
  std::vector<std::string> metrics;
  std::optional<int> trials;
  std::optional<double> lambda;
  std::optional<std::string> kernel;
  std::optional<std::string> generator;
  std::optional<std::string> data;
  bool tune = false;
  int jobs = 1;
};

struct VerifyArgs {
  std::string suite = "all";
  std::string json_out;
};

struct PlotArgs {
  std::string loss = "hinge";
  std::vector<double> rhos{0.0, 0.1, 0.2, 0.3, 0.4};
  double v_min = -3.0, v_max = 3.0, v_step = 0.05;
  std::string out;
};

int run_gen(const GenArgs& a, std::uint64_t seed) {
  sln::SampleDataset data;
  if (a.generator == "long") {
    data = sln::sample_from_population(sln::long_servedio_population(a.gamma), a.n, seed);
  } else if (a.generator == "mease") {
    data = sln::mease_sample(a.n, seed);
  } else if (a.generator == "blobs") {
    data = sln::gaussian_blobs(a.n, a.dim, a.separation, seed);
  } else if (a.generator == "failure") {
    data = sln::sample_from_population(sln::unhinged_failure_population(), a.n, seed);
  } else {
    throw UsageError("unknown generator '" + a.generator + "'");
  }
  std::ostringstream csv;
  sln::write_csv(data, csv);
  write_text(a.out, csv.str());
  write_meta(a.out, "gen",
             {{"generator", a.generator}, {"gamma", a.gamma}, {"n", a.n}, {"dim", a.dim},
              {"separation", a.separation}, {"seed", seed}});
  return kOk;
}

int run_corrupt(const CorruptArgs& a, std::uint64_t seed) {
  const auto [noisy, record] = sln::corrupt_sample(sln::load_csv(a.in), sln::NoiseRate(a.rho), seed);
  std::ostringstream csv;
  sln::write_csv(noisy, csv);
  write_text(a.out, csv.str());
  write_meta(a.out, "corrupt",
             {{"in", a.in}, {"rho", a.rho}, {"seed", seed}, {"flipped", record.flipped_count}});
  return kOk;
}

sln::Optimizer optimizer_from(const std::string& name, int max_iters, int restarts) {
  if (name == "closed") return sln::ClosedForm{};
  if (name == "grid") return sln::GridOptions{};
  if (name == "grad") {
    sln::GradientOptions g;
    g.max_iters = max_iters;
    g.restarts = restarts;
    return g;
  }
  throw UsageError("unknown optimizer '" + name + "'");
}

int run_train(const TrainArgs& a, std::uint64_t seed) {
  const sln::SampleDataset data = sln::load_csv(a.in);
  const sln::KernelSpec spec = sln::KernelSpec::parse(a.kernel);
  sln::TrainConfig config;
  config.lambda = a.lambda;
  config.optimizer = optimizer_from(a.optimizer, a.max_iters, a.restarts);
  config.use_bias = a.bias;
  config.seed = seed;
  sln::Scorer scorer = sln::train(sln::loss_from_name(a.loss), data, config, spec);
  if (a.tune) scorer.set_threshold(sln::tune_threshold(scorer, data));
  write_text(a.model_out, scorer.to_json().dump(2) + "\n");
  write_meta(a.model_out, "train",
             {{"loss", a.loss}, {"kernel", spec.to_string()}, {"lambda", a.lambda},
              {"optimizer", a.optimizer}, {"bias", a.bias}, {"tune_threshold", a.tune},
              {"max_iters", a.max_iters}, {"restarts", a.restarts}, {"in", a.in}, {"seed", seed}});
  return kOk;
}

int run_eval(const EvalArgs& a) {
  const sln::Scorer scorer = sln::Scorer::from_json(read_json(a.model));
  const sln::SampleDataset data = sln::load_csv(a.in);
  const sln::MetricReport m = sln::evaluate(scorer, data);
  const json result = {{"zero_one", m.zero_one_error}, {"one_minus_auc", m.one_minus_auc}, {"n", m.n}};
  if (a.out.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    write_text(a.out, result.dump(2) + "\n");
    write_meta(a.out, "eval", {{"model", a.model}, {"in", a.in}});
  }
  return kOk;
}

int run_bench(const BenchArgs& a, std::optional<std::uint64_t> seed) {
  sln::ExperimentConfig config;
  if (!a.config.empty()) config = sln::ExperimentConfig::from_json(read_json(a.config));
  if (!a.losses.empty()) config.losses = a.losses;
  if (!a.rhos.empty()) config.rhos = a.rhos;
  if (!a.metrics.empty()) config.metrics = a.metrics;
  if (a.trials) config.trials = *a.trials;
  if (a.lambda) config.lambda = *a.lambda;
  if (a.kernel) config.kernel = sln::KernelSpec::parse(*a.kernel);
  if (a.tune) config.tune_threshold = true;
  if (seed) config.base_seed = *seed;
  if (a.generator) {
    json g = config.to_json().at("generator");
    g["kind"] = *a.generator;
    if (a.data) g["path"] = *a.data;
    config = sln::ExperimentConfig::from_json({{"generator", g}}, config);
  }
  config.jobs = a.jobs;

  std::string format = a.format;
  if (format.empty()) format = a.out.ends_with(".md") ? "md" : "csv";
  if (format != "csv" && format != "md") throw UsageError("--format must be csv or md");

  const sln::ExperimentReport report = sln::run_experiment(config);
  const std::string text = format == "md" ? report.to_markdown() : report.to_csv();
  json meta = report.metadata;
  meta["config"].erase("jobs");  // output must not depend on the worker count
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
    write_text(a.out + ".meta.json", json{{"command", "bench"}, {"report", meta}}.dump(2) + "\n");
  }
  return kOk;
}

int run_verify(const VerifyArgs& a) {
  const sln::SuiteReport report = sln::run_suite(a.suite);
  std::cout << report.to_text();
  std::cout << (report.passed() ? "all checks passed" : "verification FAILED") << "\n";
  if (!a.json_out.empty()) write_text(a.json_out, report.to_json().dump(2) + "\n");
  return report.passed() ? kOk : kFailure;
}

int run_plot(const PlotArgs& a) {
  if (!(a.v_step > 0) || a.v_max < a.v_min) throw UsageError("bad --v-range/--v-step");
  std::vector<double> grid;
  for (int i = 0; a.v_min + i * a.v_step <= a.v_max + 1e-12; ++i) grid.push_back(a.v_min + i * a.v_step);
  std::vector<sln::NoiseRate> rhos;
  for (double r : a.rhos) rhos.emplace_back(r);
  const auto rows = sln::unhinge_family_plot_data(sln::loss_from_name(a.loss), rhos, grid);
  std::string text = "rho,v,value\n";
  for (const auto& row : rows)
    text += sln::format_real(row.rho) + "," + sln::format_real(row.v) + "," + sln::format_real(row.value) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
    write_meta(a.out, "plot-data",
               {{"loss", a.loss}, {"rhos", a.rhos}, {"v_min", a.v_min}, {"v_max", a.v_max},
                {"v_step", a.v_step}});
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Label-noise robust classification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "Random seed (default: $SLN_SEED, else 0)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Draw a labelled sample and write it as CSV");
  gen_cmd->add_option("--generator", gen.generator, "long | mease | blobs | failure")->capture_default_str();
  gen_cmd->add_option("--gamma", gen.gamma)->capture_default_str();
  gen_cmd->add_option("-n,--n", gen.n)->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim)->capture_default_str();
  gen_cmd->add_option("--separation", gen.separation)->capture_default_str();
  gen_cmd->add_option("--out", gen.out)->required();

  CorruptArgs corrupt;
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Flip labels with probability rho");
  corrupt_cmd->add_option("--rho", corrupt.rho)->required();
  corrupt_cmd->add_option("--in", corrupt.in)->required();
  corrupt_cmd->add_option("--out", corrupt.out)->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Fit a scorer and write it as JSON");
  train_cmd->add_option("--loss", tr.loss)->capture_default_str();
  train_cmd->add_option("--kernel", tr.kernel, "linear | rbf:<sigma> | rff:<sigma>:<dim>:<seed>")
      ->capture_default_str();
  train_cmd->add_option("--lambda", tr.lambda)->capture_default_str();
  train_cmd->add_option("--optimizer", tr.optimizer, "closed | grad | grid")->capture_default_str();
  train_cmd->add_flag("--bias", tr.bias, "Fit an unregularised bias (grad only)");
  train_cmd->add_flag("--tune-threshold", tr.tune, "Tune the threshold on the training data");
  train_cmd->add_option("--max-iters", tr.max_iters)->capture_default_str();
  train_cmd->add_option("--restarts", tr.restarts)->capture_default_str();
  train_cmd->add_option("--in", tr.in)->required();
  train_cmd->add_option("--model-out", tr.model_out)->required();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Report 0-1 error and 1 - AUC of a model on a CSV");
  eval_cmd->add_option("--model", ev.model)->required();
  eval_cmd->add_option("--in", ev.in)->required();
  eval_cmd->add_option("--out", ev.out);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a multi-trial noisy-label experiment");
  bench_cmd->add_option("--config", bench.config, "JSON experiment config");
  bench_cmd->add_option("--out", bench.out, "Output file (.csv or .md); stdout if omitted");
  bench_cmd->add_option("--format", bench.format, "csv | md");
  bench_cmd->add_option("--losses", bench.losses)->delimiter(',');
  bench_cmd->add_option("--rhos", bench.rhos)->delimiter(',');
  bench_cmd->add_option("--metrics", bench.metrics, "zero_one,one_minus_auc")->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials);
  bench_cmd->add_option("--lambda", bench.lambda);
  bench_cmd->add_option("--kernel", bench.kernel);
  bench_cmd->add_option("--generator", bench.generator, "long | mease | blobs | csv | libsvm");
  bench_cmd->add_option("--data", bench.data, "Dataset path for csv/libsvm generators");
  bench_cmd->add_flag("--tune-threshold", bench.tune);
  bench_cmd->add_option("--jobs", bench.jobs)->check(CLI::PositiveNumber)->capture_default_str();

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("suite", ver.suite, "all | " + [] {
    std::string s;
    for (const auto& n : sln::suite_names()) s += (s.empty() ? "" : " | ") + n;
    return s;
  }())->capture_default_str();
  verify_cmd->add_option("--json", ver.json_out, "Also write the report as JSON");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot-data", "Noise-corrected loss curves as CSV");
  plot_cmd->add_option("--loss", plot.loss)->capture_default_str();
  plot_cmd->add_option("--rhos", plot.rhos)->delimiter(',');
  plot_cmd->add_option("--v-min", plot.v_min)->capture_default_str();
  plot_cmd->add_option("--v-max", plot.v_max)->capture_default_str();
  plot_cmd->add_option("--v-step", plot.v_step)->capture_default_str();
  plot_cmd->add_option("--out", plot.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    std::optional<std::uint64_t> seed = seed_flag;
    if (!seed) {
      if (const char* env = std::getenv("SLN_SEED")) {
        try {
          seed = std::stoull(env);
        } catch (const std::exception&) {
          throw UsageError(std::string("SLN_SEED is not an unsigned integer: ") + env);
        }
      }
    }
    const std::uint64_t resolved = seed.value_or(0);

    if (*gen_cmd) return run_gen(gen, resolved);
    if (*corrupt_cmd) return run_corrupt(corrupt, resolved);
    if (*train_cmd) return run_train(tr, resolved);
    if (*eval_cmd) return run_eval(ev);
    if (*bench_cmd) return run_bench(bench, seed);
    if (*verify_cmd) return run_verify(ver);
    if (*plot_cmd) return run_plot(plot);
  } catch (const sln::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
