#include "sln/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace sln {

namespace {

double zero_one_term(int y, double margin) {
  if (margin == 0.0) return 0.5;
  return y * margin < 0 ? 1.0 : 0.0;
}

std::vector<double> support_scores(const Scorer& scorer, const PopulationDataset& pop) {
  const Vector s = scorer.scores(pop.support);
  return {s.data(), s.data() + s.size()};
}

}  // namespace

double zero_one_risk(const Scorer& scorer, const SampleDataset& data) {
  data.validate();
  const Vector s = scorer.scores(data.instances);
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    total += zero_one_term(data.labels[static_cast<std::size_t>(i)], s(i) - scorer.threshold());
  return total / static_cast<double>(s.size());
}

double zero_one_risk(const Scorer& scorer, const PopulationDataset& pop) {
  pop.validate();
  const Vector s = scorer.scores(pop.support);
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double m = s(i) - scorer.threshold();
    total += pop.mass(i) * (pop.eta(i) * zero_one_term(1, m) +
                            (1.0 - pop.eta(i)) * zero_one_term(-1, m));
  }
  return total;
}

double auc_from_scores(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("auc: scores and labels differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Mann-Whitney with midranks for ties.
  double positive_rank_sum = 0.0;
  std::size_t n_pos = 0;
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k;
    while (end < n && scores[order[end]] == scores[order[k]]) ++end;
    const double midrank = 0.5 * static_cast<double>(k + 1 + end);
    for (std::size_t i = k; i < end; ++i)
      if (labels[order[i]] == 1) {
        positive_rank_sum += midrank;
        ++n_pos;
      }
    k = end;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("auc needs both classes present");
  const double np = static_cast<double>(n_pos);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

double auc(const Scorer& scorer, const SampleDataset& data) {
  data.validate();
  const Vector s = scorer.scores(data.instances);
  return auc_from_scores(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())),
                         data.labels);
}

MetricReport evaluate(const Scorer& scorer, const SampleDataset& data) {
  return {zero_one_risk(scorer, data), 1.0 - auc(scorer, data), data.size()};
}

double population_risk(const Loss& loss, std::span<const double> scores,
                       const PopulationDataset& pop) {
  pop.validate();
  if (static_cast<Eigen::Index>(scores.size()) != pop.size())
    throw std::invalid_argument("need one score per support point");
  double total = 0.0;
  for (Eigen::Index i = 0; i < pop.size(); ++i) {
    const double v = scores[static_cast<std::size_t>(i)];
    const double p = pop.mass(i) * pop.eta(i);
    const double q = pop.mass(i) * (1.0 - pop.eta(i));
    if (p != 0.0) total += p * loss.positive(v);
    if (q != 0.0) total += q * loss.negative(v);
  }
  return total;
}

double population_risk(const Loss& loss, const Scorer& scorer, const PopulationDataset& pop) {
  return population_risk(loss, support_scores(scorer, pop), pop);
}

double bayes_zero_one_risk(const PopulationDataset& pop) {
  return (pop.mass.array() * pop.eta.array().min(1.0 - pop.eta.array())).sum();
}

double zero_one_regret(std::span<const double> scores, const PopulationDataset& pop) {
  return population_risk(zero_one_loss(), scores, pop) - bayes_zero_one_risk(pop);
}

double zero_one_regret(const Scorer& scorer, const PopulationDataset& pop) {
  return zero_one_risk(scorer, pop) - bayes_zero_one_risk(pop);
}

double bounded_regret_unhinged(std::span<const double> scores, const PopulationDataset& pop,
                               double bound) {
  if (!(bound >= 1.0)) throw std::domain_error("score bound B must be at least 1");
  for (double s : scores)
    if (!(std::abs(s) <= bound))
      throw std::domain_error("scorer leaves the bounded class [-B, B]");
  const double optimum =
      1.0 - bound * (pop.mass.array() * (2.0 * pop.eta.array() - 1.0).abs()).sum();
  return population_risk(unhinged_loss(), scores, pop) - optimum;
}

double bounded_regret_unhinged(const Scorer& scorer, const PopulationDataset& pop, double bound) {
  return bounded_regret_unhinged(support_scores(scorer, pop), pop, bound);
}

}  // namespace sln
