#include "sln/noise.hpp"

#include <algorithm>
#include <cmath>

#include "sln/random.hpp"

namespace sln {

std::pair<SampleDataset, CorruptionRecord> corrupt_sample(const SampleDataset& data,
                                                          NoiseRate rho, std::uint64_t seed) {
  data.validate();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampleDataset noisy = data;
  Eigen::Index flipped = 0;
  for (auto& y : noisy.labels) {
    if (unit(rng) < rho.value()) {
      y = -y;
      ++flipped;
    }
  }
  return {std::move(noisy), CorruptionRecord{rho, seed, flipped}};
}

PopulationDataset corrupt_population(const PopulationDataset& pop, NoiseRate rho) {
  PopulationDataset noisy = pop;
  noisy.eta = (rho.shrinkage() * pop.eta.array() + rho.value()).matrix();
  return noisy;
}

Vector signed_mean_embedding(const PopulationDataset& pop, const KernelSpec& spec,
                             const Matrix& probes) {
  const Vector signed_mass = (pop.mass.array() * (2.0 * pop.eta.array() - 1.0)).matrix();
  return gram(spec, probes, pop.support) * signed_mass;
}

double verify_mean_map_scaling(const PopulationDataset& pop, NoiseRate rho,
                               const KernelSpec& spec, const Matrix& probes) {
  pop.validate();
  const Vector clean = signed_mean_embedding(pop, spec, probes);
  const Vector noisy = signed_mean_embedding(corrupt_population(pop, rho), spec, probes);
  const Vector rescaled = noisy / rho.shrinkage();
  // Deviation is measured against E|k(X, x)| so probes where the signed
  // embedding cancels to ~0 do not amplify round-off.
  const Vector magnitude = gram(spec, probes, pop.support).cwiseAbs() * pop.mass;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < clean.size(); ++i) {
    const double denom = std::max({std::abs(clean(i)), magnitude(i), 1e-300});
    const double gap = std::abs(clean(i) - rescaled(i));
    worst = std::max(worst, gap == 0.0 ? 0.0 : gap / denom);
  }
  return worst;
}

std::vector<MeanMapProbeCheck> empirical_mean_map_check(const PopulationDataset& pop,
                                                        NoiseRate rho, const KernelSpec& spec,
                                                        const Matrix& probes, Eigen::Index n,
                                                        std::uint64_t seed) {
  const SampleDataset clean_draw = sample_from_population(pop, n, derive_seed(seed, 0));
  const auto [noisy, record] = corrupt_sample(clean_draw, rho, derive_seed(seed, 1));
  const Vector exact = signed_mean_embedding(pop, spec, probes);

  const Matrix k = gram(spec, probes, noisy.instances);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = noisy.labels[static_cast<std::size_t>(i)];

  std::vector<MeanMapProbeCheck> out;
  out.reserve(static_cast<std::size_t>(probes.rows()));
  const double nd = static_cast<double>(n);
  for (Eigen::Index p = 0; p < probes.rows(); ++p) {
    const Eigen::ArrayXd terms = (k.row(p).transpose().array() * y.array()) / rho.shrinkage();
    const double mean = terms.mean();
    const double var = (terms - mean).square().sum() / (nd - 1.0);
    const double sigma = std::sqrt(var / nd);
    out.push_back({exact(p), mean, sigma, std::abs(mean - exact(p)) <= 3.0 * sigma});
  }
  return out;
}

}  // namespace sln
