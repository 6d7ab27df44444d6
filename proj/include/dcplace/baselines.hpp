// baselines.hpp - centralized comparison algorithms

#ifndef DCPLACE_BASELINES_HPP
#define DCPLACE_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "dcplace/graph.hpp"

namespace dcplace {

// The instance has more k-subsets than the enumeration budget allows.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// Row s holds d(s, v) for every v, with self-costs on the diagonal.
std::vector<std::vector<double>> service_distance_matrix(const Graph& graph);

struct GreedyResult {
  Placement placement;            // sites in selection order
  std::vector<double> cost_after; // cost after each addition
};

// Adds, one at a time, the site that minimises the total cost together with
// the sites already chosen. Lowest id wins ties. O(n^2 k) after the n
// shortest-path runs.
GreedyResult greedy_placement(const Graph& graph, std::size_t k);

struct OptimalResult {
  Placement placement;
  double cost = 0.0;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;

// Exhaustive search over all k-subsets; the lexicographically smallest
// optimum wins. Throws TooLargeError if C(n, k) exceeds `subset_budget`.
OptimalResult brute_force_optimal(const Graph& graph, std::size_t k,
                                  std::uint64_t subset_budget = kDefaultSubsetBudget);

// Uniform k-subset, ascending ids. Requires 1 <= k < n.
Placement random_placement(const Graph& graph, std::size_t k, std::uint64_t seed);

}  // namespace dcplace

#endif  // DCPLACE_BASELINES_HPP
