#include "ids/cascade.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ids {

namespace {
constexpr double kCriticalBand = 1e-12;  // |mean - 1| below this counts as critical
constexpr double kFixedPointTol = 1e-12;
constexpr int kMaxFixedPointIters = 100000;

// Probability that a random neighbor of degree d transmits nothing vs. the
// per-degree vulnerability, shared by the weight and pmf computations.
std::vector<double> vulnerability_weights(const SocialState& s, const ModelParams& p) {
  const DegreeDistribution& dist = s.dist();
  std::vector<double> num(static_cast<std::size_t>(dist.max_degree()), 0.0);
  for (int d = 1; d <= dist.max_degree(); ++d) {
    double w = dist.neighbor_weight(d);
    if (w <= 0.0) continue;
    num[d - 1] = w * (s.share(d, Action::protect) * p.infect_prob_protected +
                      s.unprotected_share(d) * p.infect_prob_unprotected);
  }
  return num;
}
}  // namespace

std::vector<double> infected_neighbor_weights(const SocialState& s, const ModelParams& p) {
  std::vector<double> num = vulnerability_weights(s, p);
  double total = 0.0;
  for (double v : num) total += v;
  if (total <= 0.0)
    throw std::domain_error(
        "infected_neighbor_weights: no infection can transmit at this state");
  for (double& v : num) v /= total;
  return num;
}

std::vector<double> offspring_pmf(const SocialState& s, const ModelParams& p) {
  std::vector<double> weights = infected_neighbor_weights(s, p);
  double gamma = transmission_prob(s, p);
  int d_max = s.max_degree();
  std::vector<double> pmf(static_cast<std::size_t>(d_max), 0.0);
  for (int d = 1; d <= d_max; ++d) {
    double w = weights[d - 1];
    if (w <= 0.0) continue;
    int trials = d - 1;
    if (gamma >= 1.0) {
      pmf[trials] += w;
      continue;
    }
    // Binomial(d-1, gamma) by the multiplicative recurrence.
    double prob = std::pow(1.0 - gamma, trials);
    double ratio = gamma / (1.0 - gamma);
    for (int n = 0; n <= trials; ++n) {
      pmf[n] += w * prob;
      prob *= ratio * (trials - n) / (n + 1.0);
    }
  }
  return pmf;
}

double extinction_root(std::span<const double> pmf) {
  double total = 0.0, mean = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    if (pmf[n] < -1e-12 || !std::isfinite(pmf[n]))
      throw std::invalid_argument("extinction_root: pmf entries must be nonnegative");
    total += pmf[n];
    mean += static_cast<double>(n) * pmf[n];
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::invalid_argument("extinction_root: pmf must sum to one");

  // Subcritical or critical processes die out.
  if (mean < 1.0 + kCriticalBand) return 1.0;

  // Iterating s <- Q(s) from zero walks up monotonically to the smallest root.
  double s = 0.0;
  for (int iter = 0; iter < kMaxFixedPointIters; ++iter) {
    double next = 0.0;
    for (std::size_t n = pmf.size(); n-- > 0;) next = next * s + pmf[n];
    assert(next >= s - 1e-15);
    if (std::abs(next - s) < kFixedPointTol) return next;
    s = next;
  }
  return s;
}

double mean_offspring(const SocialState& s, const ModelParams& p) {
  double gamma = transmission_prob(s, p);
  if (gamma <= 0.0) return 0.0;
  std::vector<double> weights = infected_neighbor_weights(s, p);
  double mean = 0.0;
  for (int d = 2; d <= s.max_degree(); ++d)
    mean += weights[d - 1] * (d - 1);
  return mean * gamma;
}

double cascade_probability(const SocialState& s, const ModelParams& p) {
  double gamma = transmission_prob(s, p);
  if (gamma <= 0.0) return 0.0;
  std::vector<double> pmf = offspring_pmf(s, p);
  double root = extinction_root(pmf);
  if (root >= 1.0) return 0.0;
  const DegreeDistribution& dist = s.dist();
  double survive_none = 0.0;
  for (int d = 1; d <= dist.max_degree(); ++d)
    survive_none += dist.fraction(d) * std::pow(1.0 - gamma * (1.0 - root), d);
  return 1.0 - survive_none;
}

CascadeReport analyze_cascade(const SocialState& s, const ModelParams& p) {
  CascadeReport report;
  double gamma = transmission_prob(s, p);
  if (gamma <= 0.0) return report;
  report.infected_neighbor_weights = infected_neighbor_weights(s, p);
  report.offspring_pmf = offspring_pmf(s, p);
  report.extinction_prob = extinction_root(report.offspring_pmf);
  report.mean_offspring = mean_offspring(s, p);
  report.cascade_prob = cascade_probability(s, p);
  return report;
}

}  // namespace ids
