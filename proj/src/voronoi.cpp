#include "dcplace/voronoi.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

namespace dcplace {

std::string to_string(const TieMode& mode) {
  return mode.kind == TieMode::Kind::kLowestId ? "lowest-id" : "seeded-uniform";
}

TieMode parse_tie_mode(const std::string& name, std::uint64_t seed) {
  if (name == "lowest-id") return TieMode::lowest_id();
  if (name == "seeded-uniform") return TieMode::seeded_uniform(seed);
  throw ArgumentError("unknown tie mode '" + name + "'");
}

std::vector<std::vector<NodeId>> Partition::regions() const {
  std::vector<std::vector<NodeId>> out(region_count());
  for (NodeId v = 0; v < region_of.size(); ++v) out[region_of[v]].push_back(v);
  return out;
}

Partition voronoi_partition(const Graph& graph, const Placement& generators, TieMode tie_mode) {
  generators.check_against(graph);
  const std::size_t n = graph.node_count();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();

  BroadcastResult heard = first_arrival_broadcast(graph, generators.sites());

  Partition part{generators, std::vector<std::uint32_t>(n, kUnassigned),
                 std::vector<double>(n), std::vector<std::optional<NodeId>>(n),
                 std::move(heard.dist_by_source), heard.stats};

  std::unordered_map<NodeId, std::uint32_t> index_of;
  for (std::uint32_t i = 0; i < generators.size(); ++i) {
    index_of[generators[i]] = i;
    part.region_of[generators[i]] = i;
  }
  for (NodeId v = 0; v < n; ++v) part.nearest_dist[v] = heard.records[v].nearest_dist;

  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    if (!generators.contains(v)) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return std::pair(part.nearest_dist[a], a) < std::pair(part.nearest_dist[b], b);
  });

  std::mt19937_64 rng(tie_mode.seed);
  for (NodeId v : order) {
    const ArrivalRecord& rec = heard.records[v];
    NodeId via;
    if (rec.tied_sources.size() == 1) {
      part.region_of[v] = index_of.at(rec.tied_sources.front());
      via = rec.tied_parents.front();
    } else {
      const auto& candidates = rec.shortest_path_neighbors;
      if (tie_mode.kind == TieMode::Kind::kLowestId) {
        via = candidates.front();
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        via = candidates[pick(rng)];
      }
      part.region_of[v] = part.region_of[via];
    }
    if (part.region_of[v] == kUnassigned) {
      throw Error("voronoi: node " + std::to_string(v) + " inherited from an unassigned neighbour");
    }
    part.region_parent[v] = via;
  }
  return part;
}

bool is_centroidal(const Graph& graph, const Placement& generators, TieMode tie_mode) {
  const Partition part = voronoi_partition(graph, generators, tie_mode);
  const auto regions = part.regions();
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (cost_center_exact(graph, regions[i]) != generators[i]) return false;
  }
  return true;
}

}  // namespace dcplace
