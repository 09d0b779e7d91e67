#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sln/dataset.hpp"
#include "sln/noise.hpp"

using namespace sln;
using doctest::Approx;

TEST_CASE("zero noise is the identity") {
  const SampleDataset d = gaussian_blobs(200, 2, 1.0, 1);
  const auto [noisy, record] = corrupt_sample(d, NoiseRate(0.0), 9);
  CHECK(noisy.labels == d.labels);
  CHECK(noisy.instances == d.instances);
  CHECK(record.flipped_count == 0);

  const PopulationDataset p = unhinged_failure_population();
  CHECK(corrupt_population(p, NoiseRate(0.0)).eta == p.eta);
}

TEST_CASE("flip rate within three sigma") {
  const Eigen::Index n = 20000;
  const SampleDataset d = gaussian_blobs(n, 1, 1.0, 2);
  for (double rho : {0.1, 0.3, 0.45}) {
    const auto [noisy, record] = corrupt_sample(d, NoiseRate(rho), 33);
    Eigen::Index flips = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      flips += noisy.labels[static_cast<std::size_t>(i)] != d.labels[static_cast<std::size_t>(i)];
    CHECK(flips == record.flipped_count);
    const double sigma = std::sqrt(rho * (1 - rho) / static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(flips) / n - rho) <= 3 * sigma);
    CHECK(noisy.instances == d.instances);
  }
}

TEST_CASE("corruption is deterministic in the seed") {
  const SampleDataset d = gaussian_blobs(300, 2, 1.0, 3);
  const auto a = corrupt_sample(d, NoiseRate(0.2), 5).first;
  const auto b = corrupt_sample(d, NoiseRate(0.2), 5).first;
  const auto c = corrupt_sample(d, NoiseRate(0.2), 6).first;
  CHECK(a.labels == b.labels);
  CHECK(a.labels != c.labels);
}

TEST_CASE("population corruption") {
  PopulationDataset p = unhinged_failure_population();
  const PopulationDataset q = corrupt_population(p, NoiseRate(0.2));
  CHECK(q.eta(0) == Approx(0.8));
  CHECK(q.eta(2) == Approx(0.2));
  CHECK(q.mass == p.mass);
  CHECK(q.support == p.support);

  // Corrupting twice composes the rates as r1 + r2 - 2 r1 r2.
  for (double r1 : {0.05, 0.2, 0.4})
    for (double r2 : {0.1, 0.3}) {
      const PopulationDataset twice =
          corrupt_population(corrupt_population(p, NoiseRate(r1)), NoiseRate(r2));
      const PopulationDataset once = corrupt_population(p, NoiseRate(r1 + r2 - 2 * r1 * r2));
      CHECK((twice.eta - once.eta).cwiseAbs().maxCoeff() <= 1e-12);
    }

  // 2 eta - 1 shrinks by exactly 1 - 2 rho.
  p.eta << 0.9, 0.3, 0.55;
  const PopulationDataset r = corrupt_population(p, NoiseRate(0.35));
  for (Eigen::Index i = 0; i < 3; ++i)
    CHECK(2 * r.eta(i) - 1 == Approx(0.3 * (2 * p.eta(i) - 1)));
}

TEST_CASE("noise rate bounds") {
  CHECK_THROWS_AS(NoiseRate(0.5), std::domain_error);
  CHECK_THROWS_AS(NoiseRate(-0.01), std::domain_error);
  CHECK_NOTHROW(NoiseRate(0.499));
}

TEST_CASE("mean map scaling") {
  Matrix probes(3, 2);
  probes << 0, 0, 1, 1, -2, 0.5;
  const PopulationDataset p = long_servedio_population(0.5);
  for (const auto& spec : {KernelSpec::linear(), KernelSpec::rbf(1.0)})
    for (double rho : {0.1, 0.3, 0.45})
      CHECK(verify_mean_map_scaling(p, NoiseRate(rho), spec, probes) <= 1e-10);

  // Linear embedding is the signed mean itself.
  const PopulationDataset u = unhinged_failure_population();
  const Vector e = signed_mean_embedding(u, KernelSpec::linear(), Matrix::Identity(2, 2));
  CHECK(e(0) == Approx(1.0));
  CHECK(e(1) == Approx(-1.0));

  const auto checks = empirical_mean_map_check(u, NoiseRate(0.3), KernelSpec::rbf(1.0), probes,
                                               50000, 4);
  REQUIRE(checks.size() == 3);
  for (const auto& c : checks) CHECK(c.within_3_sigma);
}
