#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sln/dataset.hpp"
#include "sln/kernel.hpp"
#include "sln/loss.hpp"

namespace sln {

struct CorruptionRecord {
  NoiseRate rho;
  std::uint64_t seed;
  Eigen::Index flipped_count;
};

/// Flips each label independently with probability rho. One uniform draw is
/// consumed per label, in index order.
std::pair<SampleDataset, CorruptionRecord> corrupt_sample(const SampleDataset& data,
                                                          NoiseRate rho, std::uint64_t seed);

/// Exact corruption: eta -> (1 - 2 rho) eta + rho; support and mass unchanged.
PopulationDataset corrupt_population(const PopulationDataset& pop, NoiseRate rho);

/// E_D[Y k(X, x)] for every probe row x, computed exactly over the support.
Vector signed_mean_embedding(const PopulationDataset& pop, const KernelSpec& spec,
                             const Matrix& probes);

/// Largest relative gap, over probes, between E_D[Y k(X,x)] and
/// E_Dbar[Ybar k(X,x)] / (1 - 2 rho).
double verify_mean_map_scaling(const PopulationDataset& pop, NoiseRate rho,
                               const KernelSpec& spec, const Matrix& probes);

struct MeanMapProbeCheck {
  double exact;     // clean E_D[Y k(X, x)]
  double estimate;  // (1 / (1 - 2 rho)) * mean of ybar_i k(x_i, x) over a corrupted sample
  double sigma;     // standard error of `estimate`
  bool within_3_sigma;
};

/// Monte-Carlo counterpart of verify_mean_map_scaling on n corrupted draws.
std::vector<MeanMapProbeCheck> empirical_mean_map_check(const PopulationDataset& pop,
                                                        NoiseRate rho, const KernelSpec& spec,
                                                        const Matrix& probes, Eigen::Index n,
                                                        std::uint64_t seed);

}  // namespace sln
