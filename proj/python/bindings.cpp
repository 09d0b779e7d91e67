#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sln/dataset.hpp"
#include "sln/eval.hpp"
#include "sln/experiment.hpp"
#include "sln/kernel.hpp"
#include "sln/learners.hpp"
#include "sln/loss.hpp"
#include "sln/noise.hpp"
#include "sln/verify.hpp"

namespace py = pybind11;
using namespace sln;

namespace {

Optimizer optimizer_named(const std::string& name) {
  if (name == "closed") return ClosedForm{};
  if (name == "grad") return GradientOptions{};
  if (name == "grid") return GridOptions{};
  throw std::invalid_argument("optimizer must be closed, grad or grid");
}

template <class Data>
Scorer train_any(const std::string& loss, const Data& data, double lambda,
                 const std::string& optimizer, const std::string& kernel, std::uint64_t seed,
                 bool use_bias) {
  TrainConfig config;
  config.lambda = lambda;
  config.optimizer = optimizer_named(optimizer);
  config.seed = seed;
  config.use_bias = use_bias;
  return train(loss_from_name(loss), data, config, KernelSpec::parse(kernel));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Label-noise robust linear and kernel classifiers";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<TrainingError>(m, "TrainingError", PyExc_RuntimeError);
  py::register_exception<SingularSystemError>(m, "SingularSystemError", PyExc_RuntimeError);

  py::class_<Loss>(m, "Loss")
      .def_property_readonly("name", &Loss::name)
      .def("__call__", &Loss::eval, py::arg("y"), py::arg("v"))
      .def("deriv", &Loss::deriv, py::arg("y"), py::arg("v"))
      .def_property_readonly("convex", &Loss::is_convex_in_v)
      .def_property_readonly("convex_potential", &Loss::is_convex_potential)
      .def("__repr__", [](const Loss& l) { return "<Loss " + l.name() + ">"; });

  m.def("loss", [](const std::string& name) { return loss_from_name(name); }, py::arg("name"));
  m.def("catalog_names", &catalog_names);
  m.def("noise_correct", [](const Loss& l, double rho) { return noise_correct(l, NoiseRate(rho)); },
        py::arg("loss"), py::arg("rho"));
  m.def(
      "is_strongly_sln_robust",
      [](const Loss& l, double tol) {
        const auto grid = default_v_grid();
        return is_strongly_sln_robust(l, grid, tol).robust;
      },
      py::arg("loss"), py::arg("tol") = 1e-8);

  py::class_<SampleDataset>(m, "SampleDataset")
      .def(py::init([](Matrix x, std::vector<int> y) {
             SampleDataset d{std::move(x), std::move(y)};
             d.validate();
             return d;
           }),
           py::arg("instances"), py::arg("labels"))
      .def_readonly("instances", &SampleDataset::instances)
      .def_readonly("labels", &SampleDataset::labels)
      .def("__len__", [](const SampleDataset& d) { return d.size(); });

  py::class_<PopulationDataset>(m, "PopulationDataset")
      .def(py::init([](Matrix support, Vector mass, Vector eta) {
             PopulationDataset p{std::move(support), std::move(mass), std::move(eta)};
             p.validate();
             return p;
           }),
           py::arg("support"), py::arg("mass"), py::arg("eta"))
      .def_readonly("support", &PopulationDataset::support)
      .def_readonly("mass", &PopulationDataset::mass)
      .def_readonly("eta", &PopulationDataset::eta);

  m.def("long_servedio_population", &long_servedio_population, py::arg("gamma"));
  m.def("unhinged_failure_population", &unhinged_failure_population);
  m.def("sample_from_population", &sample_from_population, py::arg("population"), py::arg("n"),
        py::arg("seed"));
  m.def("mease_sample", &mease_sample, py::arg("n"), py::arg("seed"));
  m.def("gaussian_blobs", &gaussian_blobs, py::arg("n"), py::arg("dim"), py::arg("separation"),
        py::arg("seed"));
  m.def("load_csv", [](const std::string& path) { return load_csv(path); }, py::arg("path"));
  m.def("load_libsvm", [](const std::string& path) { return load_libsvm(path); }, py::arg("path"));

  m.def(
      "corrupt_sample",
      [](const SampleDataset& d, double rho, std::uint64_t seed) {
        return corrupt_sample(d, NoiseRate(rho), seed).first;
      },
      py::arg("data"), py::arg("rho"), py::arg("seed"));
  m.def("corrupt_population",
        [](const PopulationDataset& p, double rho) { return corrupt_population(p, NoiseRate(rho)); },
        py::arg("population"), py::arg("rho"));

  py::class_<Scorer>(m, "Scorer")
      .def_property_readonly("weights", &Scorer::weights)
      .def_property_readonly("bias", &Scorer::bias)
      .def_property("threshold", &Scorer::threshold, &Scorer::set_threshold)
      .def("scores", &Scorer::scores, py::arg("x"))
      .def("classify",
           [](const Scorer& s, const Matrix& x) {
             std::vector<int> out(static_cast<std::size_t>(x.rows()));
             for (Eigen::Index i = 0; i < x.rows(); ++i)
               out[static_cast<std::size_t>(i)] = s.classify(x.row(i).transpose());
             return out;
           },
           py::arg("x"))
      .def("to_json", [](const Scorer& s) { return s.to_json().dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return Scorer::from_json(nlohmann::json::parse(text)); });

  const auto train_doc = "Fits a scorer; optimizer is closed, grad or grid.";
  m.def("train", &train_any<SampleDataset>, train_doc, py::arg("loss"), py::arg("data"),
        py::arg("lambda_") = 1.0, py::arg("optimizer") = "closed", py::arg("kernel") = "linear",
        py::arg("seed") = 0, py::arg("use_bias") = false);
  m.def("train", &train_any<PopulationDataset>, train_doc, py::arg("loss"), py::arg("data"),
        py::arg("lambda_") = 1.0, py::arg("optimizer") = "closed", py::arg("kernel") = "linear",
        py::arg("seed") = 0, py::arg("use_bias") = false);
  m.def("fit_centroid",
        [](const PopulationDataset& p, double lambda, const std::string& kernel) {
          return fit_centroid(p, lambda, KernelSpec::parse(kernel));
        },
        py::arg("data"), py::arg("lambda_") = 1.0, py::arg("kernel") = "linear");
  m.def("fit_centroid",
        [](const SampleDataset& d, double lambda, const std::string& kernel) {
          return fit_centroid(d, lambda, KernelSpec::parse(kernel));
        },
        py::arg("data"), py::arg("lambda_") = 1.0, py::arg("kernel") = "linear");
  m.def("fit_fld",
        [](const PopulationDataset& p, double lambda) { return fit_fld(p, lambda); },
        py::arg("data"), py::arg("lambda_"));
  m.def("fit_fld", [](const SampleDataset& d, double lambda) { return fit_fld(d, lambda); },
        py::arg("data"), py::arg("lambda_"));
  m.def("tune_threshold", &tune_threshold, py::arg("scorer"), py::arg("data"));

  m.def("zero_one_risk", py::overload_cast<const Scorer&, const SampleDataset&>(&zero_one_risk),
        py::arg("scorer"), py::arg("data"));
  m.def("zero_one_risk", py::overload_cast<const Scorer&, const PopulationDataset&>(&zero_one_risk),
        py::arg("scorer"), py::arg("data"));
  m.def("auc", &auc, py::arg("scorer"), py::arg("data"));

  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        const auto report =
            run_experiment(ExperimentConfig::from_json(nlohmann::json::parse(config_json)));
        py::list rows;
        for (const auto& r : report.rows) {
          py::dict row;
          row["loss"] = r.loss;
          row["rho"] = r.rho;
          row["metric"] = r.metric;
          row["mean"] = r.mean;
          row["std"] = r.std;
          row["trials"] = r.trials;
          row["failed"] = r.failed;
          rows.append(row);
        }
        return rows;
      },
      py::arg("config_json"), "Runs a multi-trial experiment from a JSON config string.");

  m.def("suite_names", &suite_names);
  m.def(
      "verify",
      [](const std::string& suite) {
        const auto report = run_suite(suite);
        return py::make_tuple(report.passed(), report.to_text());
      },
      py::arg("suite"));
}
