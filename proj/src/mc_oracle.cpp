#include "ids/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ids {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n) via the fixed-point multiply; the bias of ~n/2^64
// is irrelevant at these scales.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

int sample_degree(const std::vector<double>& cumulative, std::mt19937_64& rng) {
  double u = uniform01(rng);
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<int>(it - cumulative.begin()) + 1;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::size_t Graph::stub_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency) total += list.size();
  return total;
}

Graph sample_configuration_graph(const DegreeDistribution& dist, int node_count,
                                 std::mt19937_64& rng) {
  if (node_count < 2)
    throw std::invalid_argument("sample_configuration_graph: need at least 2 nodes");

  std::vector<double> cumulative(static_cast<std::size_t>(dist.max_degree()));
  double acc = 0.0;
  for (int d = 1; d <= dist.max_degree(); ++d) {
    acc += dist.fraction(d);
    cumulative[d - 1] = acc;
  }
  cumulative.back() = 1.0;

  std::vector<int> degree(static_cast<std::size_t>(node_count));
  long long stub_sum = 0;
  for (int v = 0; v < node_count; ++v) {
    degree[v] = sample_degree(cumulative, rng);
    stub_sum += degree[v];
  }
  while (stub_sum % 2 != 0) {
    std::size_t v = uniform_index(rng, degree.size());
    stub_sum -= degree[v];
    degree[v] = sample_degree(cumulative, rng);
    stub_sum += degree[v];
  }

  std::vector<std::int32_t> stubs;
  stubs.reserve(static_cast<std::size_t>(stub_sum));
  for (int v = 0; v < node_count; ++v)
    stubs.insert(stubs.end(), static_cast<std::size_t>(degree[v]),
                 static_cast<std::int32_t>(v));

  // Fisher-Yates, then pair consecutive stubs.
  for (std::size_t i = stubs.size(); i > 1; --i)
    std::swap(stubs[i - 1], stubs[uniform_index(rng, i)]);

  Graph graph;
  graph.adjacency.resize(static_cast<std::size_t>(node_count));
  for (int v = 0; v < node_count; ++v)
    graph.adjacency[v].reserve(static_cast<std::size_t>(degree[v]));
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    graph.adjacency[stubs[i]].push_back(stubs[i + 1]);
    graph.adjacency[stubs[i + 1]].push_back(stubs[i]);
  }
  return graph;
}

namespace {
void simplify_graph(Graph& graph) {
  for (std::size_t v = 0; v < graph.adjacency.size(); ++v) {
    auto& list = graph.adjacency[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.erase(std::remove(list.begin(), list.end(), static_cast<std::int32_t>(v)),
               list.end());
  }
}
}  // namespace

int assign_and_simulate(const Graph& graph, const SocialState& state,
                        const ModelParams& p, std::mt19937_64& rng) {
  int n = graph.node_count();
  int d_max = state.max_degree();

  // One vulnerability draw per node: will it get infected if attacked?
  std::vector<char> vulnerable(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    int d = std::clamp(static_cast<int>(graph.adjacency[v].size()), 1, d_max);
    bool is_protected = uniform01(rng) < state.share(d, Action::protect);
    double infect_prob =
        is_protected ? p.infect_prob_protected : p.infect_prob_unprotected;
    vulnerable[v] = uniform01(rng) < infect_prob;
  }

  std::vector<char> infected(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> frontier;
  std::int32_t seed_node = static_cast<std::int32_t>(uniform_index(rng, static_cast<std::size_t>(n)));
  infected[seed_node] = 1;  // by fiat, regardless of its own vulnerability
  frontier.push_back(seed_node);
  int count = 1;

  while (!frontier.empty()) {
    std::int32_t u = frontier.back();
    frontier.pop_back();
    for (std::int32_t v : graph.adjacency[u]) {
      if (uniform01(rng) >= p.indirect_attack_prob) continue;
      if (infected[v] || !vulnerable[v]) continue;
      infected[v] = 1;
      ++count;
      frontier.push_back(v);
    }
  }
  return count;
}

McEstimate empirical_cascade_probability(const ModelParams& p, const SocialState& state,
                                         const SimConfig& config) {
  if (config.node_count < state.max_degree() + 1)
    throw std::invalid_argument("empirical_cascade_probability: node_count too small");
  if (config.trials < 1)
    throw std::invalid_argument("empirical_cascade_probability: trials must be >= 1");
  if (!(config.cascade_fraction > 0.0 && config.cascade_fraction < 1.0))
    throw std::invalid_argument("empirical_cascade_probability: cascade_fraction in (0,1)");

  double threshold = config.cascade_fraction * config.node_count;
  int hits = 0;
  for (int trial = 0; trial < config.trials; ++trial) {
    std::mt19937_64 rng(mix64(config.seed + static_cast<std::uint64_t>(trial)));
    Graph graph = sample_configuration_graph(state.dist(), config.node_count, rng);
    if (config.simplify) simplify_graph(graph);
    int count = assign_and_simulate(graph, state, p, rng);
    if (count >= threshold) ++hits;
  }

  McEstimate est;
  est.hits = hits;
  est.trials = config.trials;
  est.estimate = static_cast<double>(hits) / config.trials;
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / config.trials);
  return est;
}

}  // namespace ids
