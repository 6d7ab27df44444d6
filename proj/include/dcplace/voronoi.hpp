// voronoi.hpp - distributed Voronoi partitioning driven by generator broadcasts

#ifndef DCPLACE_VORONOI_HPP
#define DCPLACE_VORONOI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcplace/graph.hpp"
#include "dcplace/netsim.hpp"

namespace dcplace {

// How a node equidistant from several generators picks the neighbour whose
// region it joins.
struct TieMode {
  enum class Kind { kLowestId, kSeededUniform };
  Kind kind = Kind::kLowestId;
  std::uint64_t seed = 0;

  static TieMode lowest_id() { return {}; }
  static TieMode seeded_uniform(std::uint64_t seed) { return {Kind::kSeededUniform, seed}; }
};

std::string to_string(const TieMode& mode);
TieMode parse_tie_mode(const std::string& name, std::uint64_t seed);

struct Partition {
  Placement generators;
  std::vector<std::uint32_t> region_of;      // region index per node
  std::vector<double> nearest_dist;          // min_i d(s_i, v)
  std::vector<std::optional<NodeId>> region_parent;  // none for generators
  // dist_by_generator[i][v] = d(s_i, v), what every node learnt during the broadcast.
  std::vector<std::vector<double>> dist_by_generator;
  SimStats broadcast_stats;

  std::size_t region_count() const { return generators.size(); }
  // Members of every region, ascending ids.
  std::vector<std::vector<NodeId>> regions() const;
};

// Assigns every node to a generator region. Non-generators are handled in
// nondecreasing nearest distance (then id); a node with a unique nearest
// generator joins it through its first-arrival parent, a tied node joins the
// region of a neighbour on a shortest path to one of its nearest generators.
// Throws UnreachableError if the graph is disconnected.
Partition voronoi_partition(const Graph& graph, const Placement& generators,
                            TieMode tie_mode = TieMode::lowest_id());

// True when every region's exact cost center is its own generator.
bool is_centroidal(const Graph& graph, const Placement& generators,
                   TieMode tie_mode = TieMode::lowest_id());

}  // namespace dcplace

#endif  // DCPLACE_VORONOI_HPP
