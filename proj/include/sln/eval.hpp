#pragma once

#include <span>

#include "sln/dataset.hpp"
#include "sln/learners.hpp"
#include "sln/loss.hpp"

namespace sln {

struct MetricReport {
  double zero_one_error = 0.0;
  double one_minus_auc = 0.0;
  Eigen::Index n = 0;
};

/// Mean of 1[y (s(x) - t) < 0] + 1/2 1[s(x) = t].
double zero_one_risk(const Scorer& scorer, const SampleDataset& data);
/// Exact expectation over the support, weighted by mass and eta.
double zero_one_risk(const Scorer& scorer, const PopulationDataset& pop);

/// P(s(X+) > s(X-)) + 1/2 P(s(X+) = s(X-)). Throws std::invalid_argument
/// unless both classes are present.
double auc(const Scorer& scorer, const SampleDataset& data);
double auc_from_scores(std::span<const double> scores, std::span<const int> labels);

MetricReport evaluate(const Scorer& scorer, const SampleDataset& data);

/// sum_i mass_i [eta_i l_1(s_i) + (1 - eta_i) l_{-1}(s_i)].
double population_risk(const Loss& loss, const Scorer& scorer, const PopulationDataset& pop);
/// Same, for an arbitrary scorer given by its values on the support.
double population_risk(const Loss& loss, std::span<const double> scores,
                       const PopulationDataset& pop);

/// sum_i mass_i min(eta_i, 1 - eta_i).
double bayes_zero_one_risk(const PopulationDataset& pop);
double zero_one_regret(std::span<const double> scores, const PopulationDataset& pop);
double zero_one_regret(const Scorer& scorer, const PopulationDataset& pop);

/// Unhinged risk minus the optimum over scorers bounded by B, 1 - B E|2 eta - 1|.
/// Throws std::domain_error if B < 1 or some |score| exceeds B.
double bounded_regret_unhinged(std::span<const double> scores, const PopulationDataset& pop,
                               double bound);
double bounded_regret_unhinged(const Scorer& scorer, const PopulationDataset& pop, double bound);

}  // namespace sln
