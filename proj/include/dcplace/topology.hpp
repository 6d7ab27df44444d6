// topology.hpp - synthetic topologies, demand generation and graph file I/O

#ifndef DCPLACE_TOPOLOGY_HPP
#define DCPLACE_TOPOLOGY_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dcplace/graph.hpp"

namespace dcplace {

class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed graph or demand file. The message carries "path:line: ...".
class FormatError : public Error {
 public:
  using Error::Error;
};

enum class DemandDistribution { kPareto, kUniform, kConstant };

std::string to_string(DemandDistribution d);
DemandDistribution parse_demand_distribution(const std::string& name);

// pareto:   scale / U^(1/shape), U ~ uniform(0,1]
// uniform:  uniform(0, 2*scale], mean equal to scale
// constant: every node gets `scale`
struct DemandSpec {
  DemandDistribution distribution = DemandDistribution::kPareto;
  double shape = 1.16;
  double scale = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// rows x cols lattice, 4-neighbour, unit distances, unit demand. Node id of
// cell (r, c) is r * cols + c.
Graph gen_grid(std::size_t rows, std::size_t cols);

// Watts-Strogatz small world: ring lattice of even degree `base_degree`, each
// lattice edge rewired with probability `rewire_prob`. Regenerates (from the
// continuing random stream) until connected, at most `max_retries` times.
Graph gen_small_world(std::size_t n, std::size_t base_degree, double rewire_prob,
                      std::uint64_t seed, int max_retries = 100);

std::vector<double> gen_demand(std::size_t n, const DemandSpec& spec);

// Edge file: "<u> <v> <distance>" per line, '#' comments and blank lines
// skipped. Demand file: "<node_id> <demand> [self_cost]" per line, missing
// nodes default to demand 1 and self-cost 0.
Graph load_graph(const std::filesystem::path& edge_path,
                 const std::optional<std::filesystem::path>& demand_path = std::nullopt);

void save_graph(const Graph& graph, const std::filesystem::path& edge_path,
                const std::filesystem::path& demand_path);

}  // namespace dcplace

#endif  // DCPLACE_TOPOLOGY_HPP
