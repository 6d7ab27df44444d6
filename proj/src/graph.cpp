#include "dcplace/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

namespace dcplace {

namespace {

void check_weights(const std::vector<double>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw ArgumentError(std::string(what) + " of node " + std::to_string(i) +
                          " must be finite and non-negative");
    }
  }
}

using HeapEntry = std::pair<double, NodeId>;
using MinHeap =
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>>;

}  // namespace

Graph::Graph(std::size_t node_count, std::span<const Edge> edges, std::vector<double> demand,
             std::vector<double> self_cost)
    : adjacency_(node_count), demand_(std::move(demand)), self_cost_(std::move(self_cost)) {
  if (node_count == 0) throw ArgumentError("graph needs at least one node");
  if (node_count > std::numeric_limits<NodeId>::max()) throw ArgumentError("too many nodes");
  if (demand_.empty()) demand_.assign(node_count, 1.0);
  if (self_cost_.empty()) self_cost_.assign(node_count, 0.0);
  if (demand_.size() != node_count) throw ArgumentError("demand vector size mismatch");
  if (self_cost_.size() != node_count) throw ArgumentError("self-cost vector size mismatch");
  check_weights(demand_, "demand");
  check_weights(self_cost_, "self-cost");

  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") references a missing node");
    }
    if (e.u == e.v) throw ArgumentError("self-loop on node " + std::to_string(e.u));
    if (!std::isfinite(e.dist) || e.dist <= 0.0) {
      throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") must have a finite positive distance");
    }
    adjacency_[e.u].push_back({e.v, e.dist});
    adjacency_[e.v].push_back({e.u, e.dist});
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    auto& adj = adjacency_[v];
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    auto dup = std::adjacent_find(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.id == b.id;
    });
    if (dup != adj.end()) {
      throw ArgumentError("duplicate edge (" + std::to_string(v) + "," + std::to_string(dup->id) +
                          ")");
    }
  }
  edge_count_ = edges.size();
}

std::span<const Neighbor> Graph::neighbors(NodeId v) const {
  if (!valid(v)) throw ArgumentError("node " + std::to_string(v) + " out of range");
  return adjacency_[v];
}

double Graph::total_demand() const {
  double total = 0.0;
  for (double w : demand_) total += w;
  return total;
}

std::optional<double> Graph::edge_distance(NodeId u, NodeId v) const {
  if (!valid(u) || !valid(v)) return std::nullopt;
  const auto& adj = adjacency_[u];
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Neighbor& n, NodeId id) { return n.id < id; });
  if (it == adj.end() || it->id != v) return std::nullopt;
  return it->dist;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (const Neighbor& n : adjacency_[u]) {
      if (u < n.id) out.push_back({u, n.id, n.dist});
    }
  }
  return out;
}

Graph Graph::with_demand(std::vector<double> demand) const {
  const auto list = edges();
  return Graph(node_count(), list, std::move(demand), self_cost_);
}

Graph Graph::with_self_cost(std::vector<double> self_cost) const {
  const auto list = edges();
  return Graph(node_count(), list, demand_, std::move(self_cost));
}

bool Graph::is_connected() const {
  std::vector<char> seen(node_count(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (const Neighbor& n : adjacency_[u]) {
      if (!seen[n.id]) {
        seen[n.id] = 1;
        ++reached;
        stack.push_back(n.id);
      }
    }
  }
  return reached == node_count();
}

Placement::Placement(std::vector<NodeId> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw ArgumentError("placement must contain at least one site");
  auto sorted = sites_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ArgumentError("placement contains duplicate sites");
  }
}

bool Placement::contains(NodeId v) const {
  return std::find(sites_.begin(), sites_.end(), v) != sites_.end();
}

void Placement::check_against(const Graph& graph) const {
  if (sites_.empty()) throw ArgumentError("empty placement");
  for (NodeId s : sites_) {
    if (!graph.valid(s)) throw ArgumentError("site " + std::to_string(s) + " is not a node");
  }
}

void Placement::check_k_median(const Graph& graph) const {
  check_against(graph);
  if (sites_.size() >= graph.node_count()) {
    throw ArgumentError("k must be smaller than the number of nodes");
  }
}

DistanceField shortest_distances(const Graph& graph, NodeId source) {
  if (!graph.valid(source)) {
    throw ArgumentError("source " + std::to_string(source) + " out of range");
  }
  const std::size_t n = graph.node_count();
  DistanceField field{source, std::vector<double>(n, kInfinity),
                      std::vector<std::optional<NodeId>>(n)};
  std::vector<char> done(n, 0);
  MinHeap heap;
  field.dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (done[nb.id]) continue;
      const double cand = d + nb.dist;
      auto& best = field.dist[nb.id];
      if (cand < best) {
        best = cand;
        field.parent[nb.id] = u;
        heap.push({cand, nb.id});
      } else if (cand == best && u < *field.parent[nb.id]) {
        field.parent[nb.id] = u;
      }
    }
  }
  return field;
}

std::vector<double> induced_distances(const Graph& graph, NodeId source,
                                      std::span<const char> member) {
  const std::size_t n = graph.node_count();
  std::vector<double> dist(n, kInfinity);
  std::vector<char> done(n, 0);
  MinHeap heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (!member[nb.id] || done[nb.id]) continue;
      if (d + nb.dist < dist[nb.id]) {
        dist[nb.id] = d + nb.dist;
        heap.push({dist[nb.id], nb.id});
      }
    }
  }
  return dist;
}

namespace {

// Per-node (site index, service distance) of the nearest site.
std::vector<std::pair<std::size_t, double>> nearest_sites(const Graph& graph,
                                                          const Placement& placement) {
  if (placement.empty()) throw ArgumentError("empty placement");
  placement.check_against(graph);
  const std::size_t n = graph.node_count();
  std::vector<std::pair<std::size_t, double>> best(n, {0, kInfinity});
  std::vector<NodeId> best_site(n, std::numeric_limits<NodeId>::max());
  for (std::size_t i = 0; i < placement.size(); ++i) {
    const NodeId site = placement[i];
    const DistanceField field = shortest_distances(graph, site);
    for (NodeId v = 0; v < n; ++v) {
      const double d = service_distance(graph, field, v);
      if (d < best[v].second || (d == best[v].second && site < best_site[v])) {
        best[v] = {i, d};
        best_site[v] = site;
      }
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (best[v].second == kInfinity) {
      throw UnreachableError("unreachable demand: node " + std::to_string(v) +
                             " cannot reach any site");
    }
  }
  return best;
}

}  // namespace

std::vector<NodeId> serving_assignment(const Graph& graph, const Placement& placement) {
  const auto best = nearest_sites(graph, placement);
  std::vector<NodeId> out(best.size());
  for (std::size_t v = 0; v < best.size(); ++v) out[v] = placement[best[v].first];
  return out;
}

double placement_cost(const Graph& graph, const Placement& placement) {
  const auto best = nearest_sites(graph, placement);
  double total = 0.0;
  for (NodeId v = 0; v < best.size(); ++v) total += graph.demand(v) * best[v].second;
  return total;
}

double region_cost(const Graph& graph, std::span<const NodeId> region, NodeId site) {
  std::vector<char> member(graph.node_count(), 0);
  for (NodeId v : region) member.at(v) = 1;
  if (!member.at(site)) throw ArgumentError("site is not a member of the region");
  const auto dist = induced_distances(graph, site, member);
  double total = 0.0;
  for (NodeId v : region) {
    if (dist[v] == kInfinity) throw DisconnectedError("region is not connected");
    total += graph.demand(v) * (v == site ? graph.self_cost(v) : dist[v]);
  }
  return total;
}

NodeId cost_center_exact(const Graph& graph, std::span<const NodeId> region) {
  if (region.empty()) throw ArgumentError("region must be non-empty");
  std::vector<NodeId> sorted(region.begin(), region.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ArgumentError("region contains duplicate nodes");
  }
  NodeId best = sorted.front();
  double best_cost = kInfinity;
  for (NodeId s : sorted) {
    const double c = region_cost(graph, sorted, s);
    if (c < best_cost) {
      best_cost = c;
      best = s;
    }
  }
  return best;
}

}  // namespace dcplace
