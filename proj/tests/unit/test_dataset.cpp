#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sln/dataset.hpp"

using namespace sln;
using doctest::Approx;

namespace {

std::size_t parse_error_line(const std::string& text, bool libsvm = false) {
  std::istringstream in(text);
  try {
    if (libsvm)
      read_libsvm(in);
    else
      read_csv(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 9999;
}

}  // namespace

TEST_CASE("csv parsing") {
  std::istringstream in("a,b,label\n1,2,1\n\n3.5,-4,-1\n");
  const SampleDataset d = read_csv(in);
  REQUIRE(d.size() == 2);
  CHECK(d.dim() == 2);
  CHECK(d.instances(1, 0) == 3.5);
  CHECK(d.instances(1, 1) == -4.0);
  CHECK(d.labels == std::vector<int>{1, -1});

  std::istringstream zero_one("x,label\n0.5,0\n0.25,1\n");
  CHECK(read_csv(zero_one).labels == std::vector<int>{-1, 1});
}

TEST_CASE("csv errors carry line numbers") {
  CHECK(parse_error_line("a,b,label\n1,2,1\n1,x,1\n") == 3);
  CHECK(parse_error_line("a,b,label\n1,2,1\n1,2\n") == 3);
  CHECK(parse_error_line("a,b,label\n1,2,1\n1,2,2\n") == 3);
  CHECK(parse_error_line("a,b,target\n1,2,1\n") == 1);
  CHECK(parse_error_line("a,label\n1,-1\n2,0\n") == 2);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), ParseError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), ParseError);
}

TEST_CASE("csv round trip") {
  const SampleDataset d = gaussian_blobs(20, 3, 1.5, 4);
  std::stringstream buf;
  write_csv(d, buf);
  const SampleDataset back = read_csv(buf);
  CHECK(back.labels == d.labels);
  CHECK(back.instances == d.instances);
}

TEST_CASE("libsvm parsing") {
  std::istringstream in("+1 1:0.5 3:2 # comment\n-1 2:1\n\n");
  const SampleDataset d = read_libsvm(in);
  REQUIRE(d.size() == 2);
  CHECK(d.dim() == 3);
  CHECK(d.instances(0, 0) == 0.5);
  CHECK(d.instances(0, 1) == 0.0);
  CHECK(d.instances(0, 2) == 2.0);
  CHECK(d.instances(1, 1) == 1.0);
  CHECK(d.labels == std::vector<int>{1, -1});

  CHECK(parse_error_line("1 1:2\n1 3:1 2:1\n", true) == 2);
  CHECK(parse_error_line("1 1:2\nfoo 1:1\n", true) == 2);
  CHECK(parse_error_line("1 1:2\n\n1 0:1\n", true) == 3);
  CHECK(parse_error_line("1 1:2\n-1 2\n", true) == 2);
  CHECK(parse_error_line("1 1:2\n3 1:1\n", true) == 2);
}

TEST_CASE("dataset validation") {
  SampleDataset d;
  d.instances = Matrix::Zero(2, 1);
  d.labels = {1};
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.labels = {1, 0};
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.labels = {1, -1};
  CHECK_NOTHROW(d.validate());

  PopulationDataset p = unhinged_failure_population();
  CHECK_NOTHROW(p.validate());
  p.mass(0) = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = unhinged_failure_population();
  p.eta(1) = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("long-servedio construction") {
  const PopulationDataset p = long_servedio_population(0.5);
  REQUIRE(p.size() == 3);
  CHECK(p.support(1, 0) == 0.5);
  CHECK(p.support(1, 1) == 2.5);
  CHECK(p.support(2, 0) == 0.5);
  CHECK(p.support(2, 1) == -0.5);
  CHECK(p.mass.sum() == Approx(1.0));
  CHECK(p.mass(2) == 0.5);
  CHECK(p.prior() == 1.0);

  const PopulationDataset four = long_servedio_four_point(0.1);
  CHECK(four.size() == 4);
  CHECK(four.mass == Vector::Constant(4, 0.25));
  CHECK_THROWS(long_servedio_population(0.0));
  CHECK_THROWS(long_servedio_population(1.0));

  // Empirical frequency of the first support point, within 3 binomial sigma.
  const Eigen::Index n = 40000;
  const SampleDataset s = sample_from_population(p, n, 77);
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < n; ++i) hits += s.instances(i, 0) == 1.0;
  const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(n));
  CHECK(std::abs(static_cast<double>(hits) / n - 0.25) <= 3 * sigma);
  for (int y : s.labels) CHECK(y == 1);
}

TEST_CASE("sampling is deterministic") {
  const PopulationDataset p = unhinged_failure_population();
  const SampleDataset a = sample_from_population(p, 50, 5);
  const SampleDataset b = sample_from_population(p, 50, 5);
  CHECK(a.instances == b.instances);
  CHECK(a.labels == b.labels);
  CHECK(mease_sample(30, 1).instances == mease_sample(30, 1).instances);
  CHECK(gaussian_blobs(30, 2, 1.0, 1).instances != gaussian_blobs(30, 2, 1.0, 2).instances);
}

TEST_CASE("mease labels") {
  Vector x = Vector::Zero(20);
  x.head(5).setConstant(0.5);
  CHECK(mease_label(x) == -1);  // sum exactly 2.5 is not > 2.5
  x(0) += 1e-9;
  CHECK(mease_label(x) == 1);
  x.tail(15).setConstant(1.0);
  x.head(5).setConstant(0.1);
  CHECK(mease_label(x) == -1);

  const SampleDataset d = mease_sample(500, 8);
  CHECK(d.dim() == 20);
  CHECK(d.instances.minCoeff() >= 0.0);
  CHECK(d.instances.maxCoeff() <= 1.0);
  for (Eigen::Index i = 0; i < d.size(); ++i)
    CHECK(d.labels[static_cast<std::size_t>(i)] == mease_label(d.instances.row(i).transpose()));
}

TEST_CASE("radius scaling") {
  const SampleDataset d = scale_to_radius(gaussian_blobs(50, 3, 2.0, 3), 2.0);
  CHECK(max_row_norm(d.instances) == Approx(2.0));
}

TEST_CASE("train/test split") {
  const SampleDataset d = gaussian_blobs(101, 2, 1.0, 12);
  const auto [train, test] = train_test_split(d, 0.8, 3);
  CHECK(train.size() == 81);
  CHECK(test.size() == 20);
  const auto again = train_test_split(d, 0.8, 3);
  CHECK(again.first.instances == train.instances);
  // Every original row lands in exactly one part.
  CHECK(train.instances.sum() + test.instances.sum() == Approx(d.instances.sum()));
  CHECK_THROWS(train_test_split(d, 1.5, 0));
}

TEST_CASE("standardizer") {
  SampleDataset d = gaussian_blobs(200, 3, 3.0, 21);
  d.instances.col(2).setConstant(4.0);
  const StandardizedData s = standardize(d, {d});
  const Vector mean = s.train.instances.colwise().mean().transpose();
  CHECK(mean.cwiseAbs().maxCoeff() <= 1e-12);
  const Matrix sq = s.train.instances.array().square().matrix();
  CHECK(sq.col(0).mean() == Approx(1.0));
  CHECK(sq.col(1).mean() == Approx(1.0));
  CHECK(s.transform.scale(2) == 1.0);
  CHECK(s.train.instances.col(2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.others[0].instances == s.train.instances);

  // Standardizing standardized data changes nothing.
  const StandardizedData twice = standardize(s.train);
  CHECK((twice.train.instances - s.train.instances).norm() <= 1e-10);

  const Standardizer back = Standardizer::from_json(s.transform.to_json());
  CHECK(back.mean == s.transform.mean);
  CHECK(back.scale == s.transform.scale);

  SampleDataset other = gaussian_blobs(5, 2, 1.0, 0);
  CHECK_THROWS_AS(s.transform.apply(other), std::invalid_argument);
}

TEST_CASE("population json round trip") {
  const PopulationDataset p = long_servedio_population(0.25);
  const PopulationDataset back = population_from_json(population_to_json(p));
  CHECK(back.support == p.support);
  CHECK(back.mass == p.mass);
  CHECK(back.eta == p.eta);
}

TEST_CASE("empirical population") {
  SampleDataset d;
  d.instances = Matrix::Identity(4, 2);
  d.labels = {1, -1, 1, 1};
  const PopulationDataset p = to_population(d);
  CHECK(p.mass == Vector::Constant(4, 0.25));
  CHECK(p.prior() == Approx(0.75));
  CHECK(d.positives().rows() == 3);
  CHECK(d.negatives().rows() == 1);
}
