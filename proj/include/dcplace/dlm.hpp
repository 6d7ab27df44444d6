// dlm.hpp - distributed Lloyd iteration for k-median placement
//
// Each iteration partitions the graph into Voronoi regions around the current
// sites, builds a minimum spanning tree per region rooted at that region's
// site, and moves the site to the tree's cost center. The loop stops when no
// site moves farther than eta, or after max_iter iterations.

#ifndef DCPLACE_DLM_HPP
#define DCPLACE_DLM_HPP

#include <cstdint>
#include <vector>

#include "dcplace/graph.hpp"
#include "dcplace/netsim.hpp"
#include "dcplace/voronoi.hpp"

namespace dcplace {

struct DlmConfig {
  std::size_t k = 1;
  double eta = 0.0;
  std::size_t max_iter = 100;
  std::uint64_t seed = 0;
  TieMode tie_mode = TieMode::lowest_id();
  // Order of equal-distance edges in each region's MST. lowest-id is the
  // lexicographic order; seeded-uniform draws a fresh edge order per
  // iteration from mst_ties.seed.
  TieMode mst_ties = TieMode::seeded_uniform(0);

  // Throws ArgumentError unless 1 <= k < n, max_iter >= 1 and eta >= 0.
  void validate(const Graph& graph) const;
};

struct DlmIteration {
  Placement placement;  // sites after this iteration
  Partition partition;  // the partition they were computed from
  double cost = 0.0;    // full-graph cost of `placement`
  double max_center_shift = 0.0;
  SimStats stats;       // broadcast plus per-region message passing
  TieMode tie_mode;     // partition ties as resolved in this iteration
};

struct DlmTrace {
  Placement initial_placement;
  double initial_cost = 0.0;
  std::vector<DlmIteration> iterations;
  bool converged = false;
  // Lowest-cost placement over all iterations (the latest one among equals).
  Placement final_placement;
  double final_cost = 0.0;
  std::size_t final_iteration = 0;
  SimStats total_stats;
};

// Cost center of the whole graph's MST plus k-1 nodes drawn without
// replacement from the 3k nodes nearest to it.
Placement initialize_placement(const Graph& graph, const DlmConfig& config);

struct DlmStep {
  Placement placement;
  Partition partition;
  double cost = 0.0;
  SimStats stats;
};

// One iteration. With seeded MST ties the edge order comes from
// config.mst_ties.seed as given; run_dlm varies it per iteration.
DlmStep dlm_step(const Graph& graph, const Placement& placement, const DlmConfig& config);

DlmTrace run_dlm(const Graph& graph, const DlmConfig& config);

}  // namespace dcplace

#endif  // DCPLACE_DLM_HPP
