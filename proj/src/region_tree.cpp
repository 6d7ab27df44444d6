#include "dcplace/region_tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

namespace dcplace {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

std::vector<NodeId> sorted_region(const Graph& graph, std::span<const NodeId> region) {
  if (region.empty()) throw ArgumentError("region must be non-empty");
  std::vector<NodeId> nodes(region.begin(), region.end());
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
    throw ArgumentError("region contains duplicate nodes");
  }
  for (NodeId v : nodes) {
    if (!graph.valid(v)) throw ArgumentError("region node " + std::to_string(v) + " out of range");
  }
  return nodes;
}

std::size_t position(std::span<const NodeId> sorted, NodeId v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) {
    throw ArgumentError("node " + std::to_string(v) + " is not in the region");
  }
  return static_cast<std::size_t>(it - sorted.begin());
}

template <typename Key>
std::vector<Edge> kruskal(const Graph& graph, std::span<const NodeId> region, Key key) {
  const std::vector<NodeId> nodes = sorted_region(graph, region);
  std::vector<Edge> candidates;
  for (NodeId u : nodes) {
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (u < nb.id && std::binary_search(nodes.begin(), nodes.end(), nb.id)) {
        candidates.push_back({u, nb.id, nb.dist});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const Edge& a, const Edge& b) { return key(a) < key(b); });

  DisjointSets sets(nodes.size());
  std::vector<Edge> tree;
  tree.reserve(nodes.size() - 1);
  for (const Edge& e : candidates) {
    if (sets.unite(position(nodes, e.u), position(nodes, e.v))) {
      tree.push_back(e);
      if (tree.size() + 1 == nodes.size()) break;
    }
  }
  if (tree.size() + 1 != nodes.size()) {
    throw DisconnectedError("region of " + std::to_string(nodes.size()) +
                            " nodes is not connected");
  }
  return tree;
}

std::uint64_t edge_hash(std::uint64_t seed, NodeId u, NodeId v) {
  std::uint64_t z = seed ^ ((std::uint64_t{u} << 32) | v);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<Edge> region_mst(const Graph& graph, std::span<const NodeId> region) {
  return kruskal(graph, region, [](const Edge& e) { return std::tuple(e.dist, e.u, e.v); });
}

std::vector<Edge> region_mst(const Graph& graph, std::span<const NodeId> region,
                             std::uint64_t tie_seed) {
  return kruskal(graph, region, [tie_seed](const Edge& e) {
    return std::tuple(e.dist, edge_hash(tie_seed, e.u, e.v), e.u, e.v);
  });
}

RootedRegionTree::RootedRegionTree(const Graph& graph, std::span<const NodeId> region,
                                   std::span<const Edge> tree_edges, NodeId root)
    : nodes_(sorted_region(graph, region)) {
  const std::size_t n = nodes_.size();
  root_ = position(nodes_, root);
  if (tree_edges.size() + 1 != n) {
    throw ArgumentError("a spanning tree of " + std::to_string(n) + " nodes needs " +
                        std::to_string(n - 1) + " edges");
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const Edge& e : tree_edges) {
    const auto dist = graph.edge_distance(e.u, e.v);
    if (!dist || *dist != e.dist) {
      throw ArgumentError("tree edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") is not an edge of the graph");
    }
    const std::size_t a = position(nodes_, e.u);
    const std::size_t b = position(nodes_, e.v);
    adj[a].push_back({b, e.dist});
    adj[b].push_back({a, e.dist});
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  parent_.assign(n, std::nullopt);
  children_.assign(n, {});
  parent_dist_.assign(n, 0.0);
  demand_.resize(n);
  self_cost_.resize(n);
  std::vector<char> seen(n, 0);
  order_.reserve(n);
  order_.push_back(root_);
  seen[root_] = 1;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const std::size_t v = order_[head];
    for (auto [u, dist] : adj[v]) {
      if (seen[u]) continue;
      seen[u] = 1;
      parent_[u] = v;
      parent_dist_[u] = dist;
      children_[v].push_back(u);
      order_.push_back(u);
    }
  }
  if (order_.size() != n) throw ArgumentError("tree edges do not span the region");

  for (std::size_t i = 0; i < n; ++i) {
    demand_[i] = graph.demand(nodes_[i]);
    self_cost_[i] = graph.self_cost(nodes_[i]);
  }
}

std::size_t RootedRegionTree::local_index(NodeId v) const { return position(nodes_, v); }

double RootedRegionTree::total_demand() const {
  return std::accumulate(demand_.begin(), demand_.end(), 0.0);
}

std::vector<Edge> RootedRegionTree::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (parent_[v]) {
      NodeId a = nodes_[v];
      NodeId b = nodes_[*parent_[v]];
      if (a > b) std::swap(a, b);
      out.push_back({a, b, parent_dist_[v]});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return out;
}

RootedRegionTree root_tree(std::span<const Edge> tree_edges, std::span<const NodeId> region,
                           NodeId root, const Graph& graph) {
  return RootedRegionTree(graph, region, tree_edges, root);
}

}  // namespace dcplace
