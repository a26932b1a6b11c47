#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ids/exposure.hpp"
#include "ids/model.hpp"

namespace ids {

// Monte-Carlo estimate of the cascade probability on sampled graphs, used to
// validate the branching-process analytics on finite networks.

struct SimConfig {
  int node_count = 10000;
  int trials = 100;
  // A trial counts as a cascade when at least this fraction of nodes ends up
  // infected; finite-size stand-in for an unbounded infected cluster.
  double cascade_fraction = 0.01;
  std::uint64_t seed = 0;
  // Drop self-loops and duplicate edges after matching. Off by default; the
  // analytics are calibrated to the raw multigraph.
  bool simplify = false;
};

struct Graph {
  // adjacency[v] lists neighbors; a self-loop stores v twice so that the list
  // length equals the drawn degree.
  std::vector<std::vector<std::int32_t>> adjacency;

  int node_count() const { return static_cast<int>(adjacency.size()); }
  std::size_t stub_count() const;  // sum of list lengths = 2 * edges
};

// Configuration-model multigraph: node degrees drawn i.i.d. from the degree
// fractions (redrawing one uniformly chosen node's degree while the stub sum
// is odd), stubs matched uniformly at random.
Graph sample_configuration_graph(const DegreeDistribution& dist, int node_count,
                                 std::mt19937_64& rng);

// Assigns protection per degree with the state's protected shares, draws each
// node's vulnerability once, infects a uniformly chosen seed by fiat, and
// spreads: every newly infected node attacks each neighbor independently with
// the indirect-attack probability; attacked vulnerable nodes become infected.
// No hop limit. Returns the final infected count.
int assign_and_simulate(const Graph& graph, const SocialState& state,
                        const ModelParams& p, std::mt19937_64& rng);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  int hits = 0;
  int trials = 0;
};

// Fraction of independent trials (fresh graph each) whose infected count
// reaches cascade_fraction * node_count, with its binomial standard error.
// Deterministic given the config seed: trial seeds come from a SplitMix64
// stream feeding per-trial mt19937_64 generators, so results do not depend
// on evaluation order.
McEstimate empirical_cascade_probability(const ModelParams& p, const SocialState& state,
                                         const SimConfig& config);

// SplitMix64 finalizer used for seed derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace ids
