// graph.hpp - weighted undirected graph, shortest paths and the k-median cost
//
// A Graph is immutable after construction. Node ids are dense 0..n-1, every
// edge distance is strictly positive, and each node carries a non-negative
// demand w(v) and a self-cost d(v,v) charged when v hosts a data center.

#ifndef DCPLACE_GRAPH_HPP
#define DCPLACE_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcplace {

using NodeId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Error hierarchy. Every failure raised by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A node or region cannot be reached from where it needs to be.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

// An operation that requires a connected graph or region got a disconnected one.
class DisconnectedError : public Error {
 public:
  using Error::Error;
};

struct Edge {
  NodeId u;
  NodeId v;
  double dist;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId id;
  double dist;
};

class Graph {
 public:
  // Builds a graph with `node_count` nodes. `demand` and `self_cost` default
  // to 1 and 0 per node when empty. Throws ArgumentError on self-loops,
  // duplicate edges, non-positive or non-finite distances, out-of-range ids,
  // and negative or non-finite demands/self-costs.
  Graph(std::size_t node_count, std::span<const Edge> edges,
        std::vector<double> demand = {}, std::vector<double> self_cost = {});

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  // Neighbors sorted by id.
  std::span<const Neighbor> neighbors(NodeId v) const;

  double demand(NodeId v) const { return demand_.at(v); }
  double self_cost(NodeId v) const { return self_cost_.at(v); }
  std::span<const double> demands() const { return demand_; }
  std::span<const double> self_costs() const { return self_cost_; }
  double total_demand() const;

  std::optional<double> edge_distance(NodeId u, NodeId v) const;
  bool valid(NodeId v) const { return v < adjacency_.size(); }

  // Each undirected edge once, u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

  Graph with_demand(std::vector<double> demand) const;
  Graph with_self_cost(std::vector<double> self_cost) const;

  bool is_connected() const;
  bool is_tree() const { return is_connected() && edge_count_ + 1 == node_count(); }

 private:
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> demand_;
  std::vector<double> self_cost_;
  std::size_t edge_count_ = 0;
};

// An ordered set of distinct data-center sites. Index i names region i.
class Placement {
 public:
  Placement() = default;
  explicit Placement(std::vector<NodeId> sites);

  std::span<const NodeId> sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  NodeId operator[](std::size_t i) const { return sites_[i]; }
  bool contains(NodeId v) const;

  // Throws ArgumentError if any site is not a node of `graph`.
  void check_against(const Graph& graph) const;
  // Additionally requires 1 <= k < n.
  void check_k_median(const Graph& graph) const;

  friend bool operator==(const Placement&, const Placement&) = default;

 private:
  std::vector<NodeId> sites_;
};

struct DistanceField {
  NodeId source = 0;
  std::vector<double> dist;                   // kInfinity when unreachable
  std::vector<std::optional<NodeId>> parent;  // predecessor on a shortest path
};

// Dijkstra from `source`. Among equal-distance predecessors the lowest id wins.
DistanceField shortest_distances(const Graph& graph, NodeId source);

// Shortest distances from `source` restricted to the subgraph induced by
// `member` (a per-node mask). Nodes outside the mask stay at kInfinity.
std::vector<double> induced_distances(const Graph& graph, NodeId source,
                                      std::span<const char> member);

// d(s, v) as used by the cost function: the shortest-path distance for
// s != v, and the node self-cost for s == v.
inline double service_distance(const Graph& graph, const DistanceField& from_site,
                               NodeId v) {
  return v == from_site.source ? graph.self_cost(v) : from_site.dist[v];
}

// Nearest site for every node, ties to the lowest site id.
std::vector<NodeId> serving_assignment(const Graph& graph, const Placement& placement);

// Sum over v of w(v) * d(s(v;S), v). Throws UnreachableError when a node
// cannot reach any site.
double placement_cost(const Graph& graph, const Placement& placement);

// Exact cost center of `region`: the member minimising the weighted distance
// sum over the region, distances measured inside the induced subgraph.
// Lowest id wins ties. Throws DisconnectedError for a disconnected region.
NodeId cost_center_exact(const Graph& graph, std::span<const NodeId> region);

// Cost of serving `region` from `site` with induced-subgraph distances.
double region_cost(const Graph& graph, std::span<const NodeId> region, NodeId site);

}  // namespace dcplace

#endif  // DCPLACE_GRAPH_HPP
