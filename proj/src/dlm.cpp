#include "dcplace/dlm.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "dcplace/mpcost.hpp"
#include "dcplace/region_tree.hpp"

namespace dcplace {

namespace {

std::vector<Edge> spanning_tree(const Graph& graph, std::span<const NodeId> region,
                                const TieMode& ties) {
  if (ties.kind == TieMode::Kind::kSeededUniform) return region_mst(graph, region, ties.seed);
  return region_mst(graph, region);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void DlmConfig::validate(const Graph& graph) const {
  if (k == 0) throw ArgumentError("k must be positive");
  if (k >= graph.node_count()) {
    throw ArgumentError("k = " + std::to_string(k) + " must be below n = " +
                        std::to_string(graph.node_count()));
  }
  if (max_iter == 0) throw ArgumentError("max_iter must be at least 1");
  if (!(eta >= 0.0)) throw ArgumentError("eta must be non-negative");
}

Placement initialize_placement(const Graph& graph, const DlmConfig& config) {
  config.validate(graph);
  std::vector<NodeId> everyone(graph.node_count());
  std::iota(everyone.begin(), everyone.end(), NodeId{0});
  const auto mst = spanning_tree(graph, everyone, config.mst_ties);
  const RootedRegionTree tree = root_tree(mst, everyone, 0, graph);
  const NodeId center = tree.node(argmin_cost(simulate_cost_passes(tree).table));

  const DistanceField field = shortest_distances(graph, center);
  std::vector<NodeId> others;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (v != center) others.push_back(v);
  }
  std::sort(others.begin(), others.end(), [&](NodeId a, NodeId b) {
    return std::pair(field.dist[a], a) < std::pair(field.dist[b], b);
  });
  others.resize(std::min(others.size(), 3 * config.k));

  // partial Fisher-Yates
  std::mt19937_64 rng(config.seed);
  std::vector<NodeId> sites{center};
  for (std::size_t i = 0; i + 1 < config.k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, others.size() - 1);
    std::swap(others[i], others[pick(rng)]);
    sites.push_back(others[i]);
  }
  return Placement(std::move(sites));
}

DlmStep dlm_step(const Graph& graph, const Placement& placement, const DlmConfig& config) {
  placement.check_k_median(graph);
  DlmStep step;
  step.partition = voronoi_partition(graph, placement, config.tie_mode);
  step.stats = step.partition.broadcast_stats;

  const auto regions = step.partition.regions();
  std::vector<NodeId> centers;
  centers.reserve(regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto mst = spanning_tree(graph, regions[i], config.mst_ties);
    const RootedRegionTree tree = root_tree(mst, regions[i], placement[i], graph);
    const SimulatedPasses passes = simulate_cost_passes(tree);
    step.stats += passes.upward_stats;
    step.stats += passes.downward_stats;
    centers.push_back(tree.node(argmin_cost(passes.table)));
  }
  step.placement = Placement(std::move(centers));
  step.cost = placement_cost(graph, step.placement);
  return step;
}

DlmTrace run_dlm(const Graph& graph, const DlmConfig& config) {
  config.validate(graph);
  DlmTrace trace;
  trace.initial_placement = initialize_placement(graph, config);
  trace.initial_cost = placement_cost(graph, trace.initial_placement);

  Placement current = trace.initial_placement;
  for (std::size_t t = 1; t <= config.max_iter; ++t) {
    DlmConfig step_config = config;
    if (config.tie_mode.kind == TieMode::Kind::kSeededUniform) {
      step_config.tie_mode.seed = mix(config.tie_mode.seed, t);
    }
    if (config.mst_ties.kind == TieMode::Kind::kSeededUniform) {
      step_config.mst_ties.seed = mix(config.mst_ties.seed, t);
    }
    DlmStep step = dlm_step(graph, current, step_config);

    double shift = 0.0;
    for (std::size_t i = 0; i < step.placement.size(); ++i) {
      shift = std::max(shift, step.partition.dist_by_generator[i][step.placement[i]]);
    }
    trace.total_stats += step.stats;
    current = step.placement;
    trace.iterations.push_back(
        {std::move(step.placement), std::move(step.partition), step.cost, shift, step.stats,
         step_config.tie_mode});
    if (shift <= config.eta) {
      trace.converged = true;
      break;
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.iterations.size(); ++i) {
    if (trace.iterations[i].cost <= trace.iterations[best].cost) best = i;
  }
  trace.final_iteration = best;
  trace.final_placement = trace.iterations[best].placement;
  trace.final_cost = trace.iterations[best].cost;
  return trace;
}

}  // namespace dcplace
