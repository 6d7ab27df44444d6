// region_tree.hpp - spanning tree of one region, rooted for message passing

#ifndef DCPLACE_REGION_TREE_HPP
#define DCPLACE_REGION_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dcplace/graph.hpp"

namespace dcplace {

// Minimum spanning tree of the subgraph induced by `region` (Kruskal; equal
// distances ordered by (min endpoint, max endpoint)). Edges come back with
// u < v in acceptance order. Throws DisconnectedError if the induced
// subgraph is disconnected.
std::vector<Edge> region_mst(const Graph& graph, std::span<const NodeId> region);

// As above, but equal distances are ordered by a per-edge key hashed from
// `tie_seed` and the endpoints. Different seeds select different minimum
// spanning trees when distances repeat, as on unit-distance graphs.
std::vector<Edge> region_mst(const Graph& graph, std::span<const NodeId> region,
                             std::uint64_t tie_seed);

// A rooted spanning tree over one region. Per-node data is indexed by local
// position: local index i is node nodes()[i], and nodes() is ascending, so a
// lower local index means a lower node id.
class RootedRegionTree {
 public:
  RootedRegionTree(const Graph& graph, std::span<const NodeId> region,
                   std::span<const Edge> tree_edges, NodeId root);

  std::size_t size() const { return nodes_.size(); }
  std::span<const NodeId> nodes() const { return nodes_; }
  NodeId node(std::size_t local) const { return nodes_[local]; }
  std::size_t local_index(NodeId v) const;

  std::size_t root() const { return root_; }
  NodeId root_node() const { return nodes_[root_]; }
  std::optional<std::size_t> parent(std::size_t local) const { return parent_[local]; }
  std::span<const std::size_t> children(std::size_t local) const { return children_[local]; }
  // Distance of the edge to the parent; 0 at the root.
  double parent_dist(std::size_t local) const { return parent_dist_[local]; }
  double demand(std::size_t local) const { return demand_[local]; }
  double self_cost(std::size_t local) const { return self_cost_[local]; }
  double total_demand() const;

  // Root first, every parent before its children.
  std::span<const std::size_t> top_down() const { return order_; }

  // Tree edges in global ids, u < v.
  std::vector<Edge> edges() const;

 private:
  std::vector<NodeId> nodes_;
  std::size_t root_ = 0;
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<double> parent_dist_;
  std::vector<double> demand_;
  std::vector<double> self_cost_;
  std::vector<std::size_t> order_;
};

// Roots `tree_edges` (a spanning tree of `region`) at `root`. Throws
// ArgumentError if the root is outside the region or the edges are not a
// spanning tree of it.
RootedRegionTree root_tree(std::span<const Edge> tree_edges, std::span<const NodeId> region,
                           NodeId root, const Graph& graph);

}  // namespace dcplace

#endif  // DCPLACE_REGION_TREE_HPP
