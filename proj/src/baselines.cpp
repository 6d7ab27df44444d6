#include "dcplace/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace dcplace {

namespace {

void check_k(const Graph& graph, std::size_t k) {
  if (k == 0) throw ArgumentError("k must be positive");
  if (k >= graph.node_count()) {
    throw ArgumentError("k = " + std::to_string(k) + " must be below n = " +
                        std::to_string(graph.node_count()));
  }
}

void check_connected(const Graph& graph) {
  if (!graph.is_connected()) throw DisconnectedError("graph is not connected");
}

// C(n, k), saturating at `cap + 1`.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n-k+i) is divisible by i at every step
    std::uint64_t product = 0;
    if (__builtin_mul_overflow(result, n - k + i, &product)) return cap + 1;
    result = product / i;
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace

std::vector<std::vector<double>> service_distance_matrix(const Graph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<double>> matrix(n);
  for (NodeId s = 0; s < n; ++s) {
    DistanceField field = shortest_distances(graph, s);
    field.dist[s] = graph.self_cost(s);
    matrix[s] = std::move(field.dist);
  }
  return matrix;
}

GreedyResult greedy_placement(const Graph& graph, std::size_t k) {
  check_k(graph, k);
  check_connected(graph);
  const std::size_t n = graph.node_count();
  const auto dist = service_distance_matrix(graph);
  const auto demand = graph.demands();

  std::vector<double> current(n, kInfinity);
  std::vector<char> chosen(n, 0);
  std::vector<NodeId> sites;
  GreedyResult result;
  for (std::size_t round = 0; round < k; ++round) {
    NodeId best = 0;
    double best_cost = kInfinity;
    for (NodeId c = 0; c < n; ++c) {
      if (chosen[c]) continue;
      const auto& row = dist[c];
      double cost = 0.0;
      for (std::size_t v = 0; v < n; ++v) cost += demand[v] * std::min(current[v], row[v]);
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    chosen[best] = 1;
    sites.push_back(best);
    for (std::size_t v = 0; v < n; ++v) current[v] = std::min(current[v], dist[best][v]);
    result.cost_after.push_back(best_cost);
  }
  result.placement = Placement(std::move(sites));
  return result;
}

OptimalResult brute_force_optimal(const Graph& graph, std::size_t k, std::uint64_t subset_budget) {
  check_k(graph, k);
  check_connected(graph);
  const std::size_t n = graph.node_count();
  if (binomial_capped(n, k, subset_budget) > subset_budget) {
    throw TooLargeError("instance too large: C(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") exceeds the budget of " + std::to_string(subset_budget) + " subsets");
  }
  const auto dist = service_distance_matrix(graph);
  const auto demand = graph.demands();

  std::vector<NodeId> subset(k);
  std::iota(subset.begin(), subset.end(), NodeId{0});
  std::vector<NodeId> best_subset = subset;
  double best_cost = kInfinity;
  while (true) {
    double cost = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double d = kInfinity;
      for (NodeId s : subset) d = std::min(d, dist[s][v]);
      cost += demand[v] * d;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_subset = subset;
    }
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return {Placement(std::move(best_subset)), best_cost};
}

Placement random_placement(const Graph& graph, std::size_t k, std::uint64_t seed) {
  check_k(graph, k);
  std::vector<NodeId> nodes(graph.node_count());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, nodes.size() - 1);
    std::swap(nodes[i], nodes[pick(rng)]);
  }
  nodes.resize(k);
  std::sort(nodes.begin(), nodes.end());
  return Placement(std::move(nodes));
}

}  // namespace dcplace
