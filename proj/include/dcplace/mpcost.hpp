// mpcost.hpp - two-pass message passing for the serving cost of every tree node
//
// For a rooted tree T, cost(v | T) = w(v) d(v,v) + sum_{u != v} w(u) d_T(v,u).
// The upward pass sends each parent the subtree mass f and the accumulated
// weighted distance g; the root then knows its own cost. The downward pass
// moves the cost across each tree edge with the rerooting identity
//
//   cost(u) = cost(v) + w(T_v(u)) d(u,v) - w(v) d(v,v)
//                     - w(T_u(v)) d(v,u) + w(u) d(u,u)
//
// where w(T_u(v)) is the child's own upward mass. Both passes send exactly
// two scalars per tree edge.

#ifndef DCPLACE_MPCOST_HPP
#define DCPLACE_MPCOST_HPP

#include <vector>

#include "dcplace/netsim.hpp"
#include "dcplace/region_tree.hpp"

namespace dcplace {

// Indexed by local tree position; root entries stay 0.
struct UpwardMessages {
  std::vector<double> f_up;  // subtree demand mass w(T_v(r))
  std::vector<double> g_up;  // weighted distance of the subtree to the parent
};

struct UpwardResult {
  UpwardMessages messages;
  double root_cost = 0.0;
};

// cost_at[i] = cost(tree.node(i) | T).
struct CostTable {
  std::vector<double> cost_at;
};

UpwardResult upward_pass(const RootedRegionTree& tree);

// Throws ArgumentError if `up` does not match the tree's size.
CostTable downward_pass(const RootedRegionTree& tree, const UpwardMessages& up, double root_cost);

struct TreeCenter {
  NodeId center = 0;
  CostTable table;
};

// Both passes, then the lowest-cost node (lowest id on ties).
TreeCenter tree_cost_center(const RootedRegionTree& tree);

// The same two passes executed as node-local handlers on the netsim kernel,
// one scalar per message. Values are bit-identical to the direct passes.
struct SimulatedPasses {
  UpwardResult upward;
  CostTable table;
  SimStats upward_stats;
  SimStats downward_stats;
};

SimulatedPasses simulate_cost_passes(const RootedRegionTree& tree);

// Lowest-cost local index of a table, lowest index on ties.
std::size_t argmin_cost(const CostTable& table);

}  // namespace dcplace

#endif  // DCPLACE_MPCOST_HPP
