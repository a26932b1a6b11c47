#pragma once

#include <span>
#include <vector>

#include "ids/exposure.hpp"
#include "ids/model.hpp"

namespace ids {

// Branching-process view of an unbounded infection started at one node.
//
// Removing the hop cap, a single infection spreads as a Galton-Watson tree:
// an infected neighbor of degree d transmits to each of its d-1 remaining
// neighbors independently with the transmission probability of the state.

// Degree distribution of a neighbor conditional on it being infected.
// Throws std::domain_error when the transmission probability is zero
// (the conditional distribution is undefined then).
std::vector<double> infected_neighbor_weights(const SocialState& s, const ModelParams& p);

// Offspring count distribution on {0, .., max_degree-1}: mixture of
// Binomial(d-1, transmission) over the infected-neighbor degree weights.
// Throws std::domain_error when the transmission probability is zero.
std::vector<double> offspring_pmf(const SocialState& s, const ModelParams& p);

// Smallest nonnegative fixed point of the probability generating function of
// the given offspring distribution, i.e. the extinction probability of one
// infection line. Returns 1 whenever the mean offspring count is at most 1.
double extinction_root(std::span<const double> pmf);

// Mean offspring count; zero when nothing can transmit.
double mean_offspring(const SocialState& s, const ModelParams& p);

// Probability that a single seeded infection grows without bound.
double cascade_probability(const SocialState& s, const ModelParams& p);

struct CascadeReport {
  std::vector<double> infected_neighbor_weights;
  std::vector<double> offspring_pmf;
  double extinction_prob = 1.0;  // smallest root of Q(s) = s
  double mean_offspring = 0.0;
  double cascade_prob = 0.0;
};

// All of the above in one pass. Degenerate states (nothing transmits) come
// back with empty weight vectors and zero cascade probability.
CascadeReport analyze_cascade(const SocialState& s, const ModelParams& p);

}  // namespace ids
