#include "dcplace/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dcplace/baselines.hpp"
#include "dcplace/dlm.hpp"
#include "dcplace/mpcost.hpp"
#include "dcplace/netsim.hpp"
#include "dcplace/region_tree.hpp"
#include "dcplace/voronoi.hpp"

namespace dcplace {

namespace {

bool close(double a, double b, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

template <class Fn>
CheckResult check(const std::string& name, Fn&& fn) {
  CheckResult r{name, false, ""};
  try {
    r.detail = fn();
    r.passed = r.detail.empty();
    if (r.passed) r.detail = "ok";
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::string symmetric_positive(const Graph& graph) {
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (!(nb.dist > 0.0)) return "non-positive distance on edge from " + std::to_string(u);
      const auto back = graph.edge_distance(nb.id, u);
      if (!back || *back != nb.dist) {
        return "edge " + std::to_string(u) + "-" + std::to_string(nb.id) + " is not symmetric";
      }
    }
  }
  return {};
}

// Tree distances from one node by walking the tree.
double tree_cost_from_scratch(const RootedRegionTree& tree, std::size_t from) {
  const std::size_t n = tree.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (auto p = tree.parent(v)) {
      adj[v].push_back({*p, tree.parent_dist(v)});
      adj[*p].push_back({v, tree.parent_dist(v)});
    }
  }
  std::vector<double> dist(n, -1.0);
  std::vector<std::size_t> stack{from};
  dist[from] = 0.0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (auto [u, d] : adj[v]) {
      if (dist[u] < 0.0) {
        dist[u] = dist[v] + d;
        stack.push_back(u);
      }
    }
  }
  double cost = tree.demand(from) * tree.self_cost(from);
  for (std::size_t v = 0; v < n; ++v) {
    if (v != from) cost += tree.demand(v) * dist[v];
  }
  return cost;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const Graph& graph, const VerifyOptions& options) {
  std::vector<CheckResult> results;
  const std::size_t n = graph.node_count();

  results.push_back(check("graph: symmetric adjacency with positive distances",
                          [&] { return symmetric_positive(graph); }));
  results.push_back(check("graph: connected", [&]() -> std::string {
    return graph.is_connected() ? "" : "graph is disconnected";
  }));
  if (!results.back().passed || n < 2) return results;

  const std::size_t k = std::clamp<std::size_t>(options.k, 1, n - 1);
  const Placement sample = random_placement(graph, k, options.seed);

  results.push_back(check("netsim: broadcast distances equal Dijkstra", [&]() -> std::string {
    const BroadcastResult heard = first_arrival_broadcast(graph, sample.sites());
    std::vector<double> best(n, kInfinity);
    for (NodeId s : sample.sites()) {
      const DistanceField field = shortest_distances(graph, s);
      for (NodeId v = 0; v < n; ++v) best[v] = std::min(best[v], field.dist[v]);
    }
    for (NodeId v = 0; v < n; ++v) {
      if (!close(heard.records[v].nearest_dist, best[v])) {
        return "node " + std::to_string(v) + " learnt a wrong distance";
      }
    }
    if (heard.stats.messages_sent > 2 * k * graph.edge_count()) return "flooding sent too much";
    return {};
  }));

  results.push_back(check("voronoi: partition invariants", [&]() -> std::string {
    const Partition part = voronoi_partition(graph, sample);
    for (std::size_t i = 0; i < k; ++i) {
      if (part.region_of[sample[i]] != i) return "generator outside its own region";
    }
    for (NodeId v = 0; v < n; ++v) {
      if (sample.contains(v)) continue;
      const auto p = part.region_parent[v];
      if (!p || !graph.edge_distance(*p, v)) return "region parent is not a neighbour";
      if (!(part.nearest_dist[*p] < part.nearest_dist[v])) return "region parent is not closer";
      if (part.region_of[*p] != part.region_of[v]) return "region parent in another region";
      const double own = part.dist_by_generator[part.region_of[v]][v];
      if (own != part.nearest_dist[v]) return "node not at minimum distance to its generator";
    }
    return {};
  }));

  results.push_back(check("mpcost: passes match per-node recomputation", [&]() -> std::string {
    std::vector<NodeId> everyone(n);
    std::iota(everyone.begin(), everyone.end(), NodeId{0});
    const RootedRegionTree tree = root_tree(region_mst(graph, everyone), everyone, 0, graph);
    const SimulatedPasses sim = simulate_cost_passes(tree);
    if (sim.upward_stats.messages_sent != 2 * (n - 1) ||
        sim.downward_stats.messages_sent != 2 * (n - 1)) {
      return "message count differs from 2(n-1) per pass";
    }
    const TreeCenter direct = tree_cost_center(tree);
    if (direct.table.cost_at != sim.table.cost_at) return "simulated and direct passes differ";
    const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, options.oracle_nodes));
    for (std::size_t v = 0; v < n; v += stride) {
      if (!close(sim.table.cost_at[v], tree_cost_from_scratch(tree, v))) {
        return "cost of node " + std::to_string(tree.node(v)) + " differs from recomputation";
      }
    }
    return {};
  }));

  results.push_back(check("dlm: placements stay valid", [&]() -> std::string {
    DlmConfig config;
    config.k = k;
    config.seed = options.seed;
    config.max_iter = 50;
    const DlmTrace trace = run_dlm(graph, config);
    for (const auto& it : trace.iterations) {
      if (it.placement.size() != k) return "iteration lost a site";
      if (!std::isfinite(it.cost) || it.cost < 0.0) return "iteration cost not finite";
    }
    if (!close(trace.final_cost, placement_cost(graph, trace.final_placement))) {
      return "final cost does not match the placement";
    }
    return {};
  }));
  return results;
}

}  // namespace dcplace
