#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sln/kernel.hpp"

namespace sln {

/// Raised on malformed CSV/LIBSVM/JSON input. `line()` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Finite sample: one row per instance, labels in {-1, +1}.
struct SampleDataset {
  Matrix instances;
  std::vector<int> labels;

  Eigen::Index size() const noexcept { return instances.rows(); }
  Eigen::Index dim() const noexcept { return instances.cols(); }
  /// Throws std::invalid_argument if an invariant is broken.
  void validate() const;

  Matrix positives() const;
  Matrix negatives() const;
};

/// Weighted population: support points with probability mass and P(Y=1|x).
struct PopulationDataset {
  Matrix support;
  Vector mass;
  Vector eta;

  Eigen::Index size() const noexcept { return support.rows(); }
  Eigen::Index dim() const noexcept { return support.cols(); }
  void validate() const;

  /// P(Y = 1).
  double prior() const { return mass.dot(eta); }
};

/// Empirical distribution of a sample: mass 1/n, eta in {0, 1}.
PopulationDataset to_population(const SampleDataset& sample);

/// Support {(1,0), (g,5g), (g,-g)} with mass {1/4, 1/4, 1/2}, all positive.
PopulationDataset long_servedio_population(double gamma);
/// The same distribution as four equally likely points, (g,-g) listed twice.
PopulationDataset long_servedio_four_point(double gamma);

/// x1=(1,2), x2=(1,-4) positive, x3=(-1,1) negative, each with mass 1/3.
PopulationDataset unhinged_failure_population();

SampleDataset sample_from_population(const PopulationDataset& pop, Eigen::Index n,
                                     std::uint64_t seed);

/// Uniform on [0,1]^20, label +1 iff the first five coordinates sum to more than 2.5.
SampleDataset mease_sample(Eigen::Index n, std::uint64_t seed);
int mease_label(const VectorRef& x);

/// Two isotropic unit-variance Gaussian classes with means (+-separation/2, 0, ...).
SampleDataset gaussian_blobs(Eigen::Index n, int dim, double separation, std::uint64_t seed);

/// Rescales all instances so that max_i |x_i| = radius.
SampleDataset scale_to_radius(const SampleDataset& data, double radius);

/// Largest Euclidean norm among the rows.
double max_row_norm(const Matrix& rows);

/// Seeded random split; the first part holds round(train_fraction * n) rows.
std::pair<SampleDataset, SampleDataset> train_test_split(const SampleDataset& data,
                                                         double train_fraction,
                                                         std::uint64_t seed);

SampleDataset load_csv(const std::filesystem::path& path);
SampleDataset read_csv(std::istream& in);
void write_csv(const SampleDataset& data, std::ostream& out);
void save_csv(const SampleDataset& data, const std::filesystem::path& path);

SampleDataset load_libsvm(const std::filesystem::path& path);
SampleDataset read_libsvm(std::istream& in);

nlohmann::json population_to_json(const PopulationDataset& pop);
PopulationDataset population_from_json(const nlohmann::json& doc);

/// Per-feature affine map x -> (x - mean) / scale.
struct Standardizer {
  Vector mean;
  Vector scale;

  static Standardizer fit(const SampleDataset& train);
  SampleDataset apply(const SampleDataset& data) const;

  nlohmann::json to_json() const;
  static Standardizer from_json(const nlohmann::json& doc);
};

struct StandardizedData {
  SampleDataset train;
  std::vector<SampleDataset> others;
  Standardizer transform;
};

/// Fits on `train` (std floor 1e-12) and applies the same map to `others`.
StandardizedData standardize(const SampleDataset& train, const std::vector<SampleDataset>& others = {});

}  // namespace sln
