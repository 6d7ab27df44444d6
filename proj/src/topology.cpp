#include "dcplace/topology.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace dcplace {

std::string to_string(DemandDistribution d) {
  switch (d) {
    case DemandDistribution::kPareto:
      return "pareto";
    case DemandDistribution::kUniform:
      return "uniform";
    case DemandDistribution::kConstant:
      return "constant";
  }
  return "unknown";
}

DemandDistribution parse_demand_distribution(const std::string& name) {
  if (name == "pareto") return DemandDistribution::kPareto;
  if (name == "uniform") return DemandDistribution::kUniform;
  if (name == "constant") return DemandDistribution::kConstant;
  throw ArgumentError("unknown demand distribution '" + name + "'");
}

void DemandSpec::validate() const {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw ArgumentError("demand shape must be > 0");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ArgumentError("demand scale must be > 0");
}

Graph gen_grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ArgumentError("grid dimensions must be positive");
  if (rows * cols < 2) throw ArgumentError("grid needs at least two nodes");
  std::vector<Edge> edges;
  edges.reserve(2 * rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto id = static_cast<NodeId>(r * cols + c);
      if (c + 1 < cols) edges.push_back({id, id + 1, 1.0});
      if (r + 1 < rows) edges.push_back({id, static_cast<NodeId>(id + cols), 1.0});
    }
  }
  return Graph(rows * cols, edges);
}

namespace {

using EdgeKey = std::pair<NodeId, NodeId>;

EdgeKey key(NodeId a, NodeId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// One Watts-Strogatz draw. Adjacency sets keep neighbour order deterministic.
std::vector<std::set<NodeId>> watts_strogatz(std::size_t n, std::size_t base_degree,
                                             double rewire_prob, std::mt19937_64& rng) {
  std::vector<std::set<NodeId>> adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= base_degree / 2; ++j) {
      const auto v = static_cast<NodeId>((u + j) % n);
      adj[u].insert(v);
      adj[v].insert(static_cast<NodeId>(u));
    }
  }
  if (rewire_prob <= 0.0) return adj;

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t j = 1; j <= base_degree / 2; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const auto v = static_cast<NodeId>((u + j) % n);
      if (coin(rng) >= rewire_prob) continue;
      // a saturated node has nowhere to go
      if (adj[u].size() >= n - 1) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(pick(rng));
      } while (w == u || adj[u].count(w) != 0);
      adj[u].erase(v);
      adj[v].erase(static_cast<NodeId>(u));
      adj[u].insert(w);
      adj[w].insert(static_cast<NodeId>(u));
    }
  }
  return adj;
}

}  // namespace

Graph gen_small_world(std::size_t n, std::size_t base_degree, double rewire_prob,
                      std::uint64_t seed, int max_retries) {
  if (base_degree == 0 || base_degree % 2 != 0) {
    throw ArgumentError("small-world base degree must be even and positive");
  }
  if (base_degree >= n) throw ArgumentError("small-world base degree must be below n");
  if (!(rewire_prob >= 0.0 && rewire_prob <= 1.0)) {
    throw ArgumentError("rewire probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    const auto adj = watts_strogatz(n, base_degree, rewire_prob, rng);
    std::vector<Edge> edges;
    edges.reserve(n * base_degree / 2);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v : adj[u]) {
        if (u < v) edges.push_back({u, v, 1.0});
      }
    }
    Graph graph(n, edges);
    if (graph.is_connected()) return graph;
  }
  throw GenerationError("small-world generator failed to produce a connected graph within " +
                        std::to_string(max_retries) + " retries");
}

std::vector<double> gen_demand(std::size_t n, const DemandSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& w : out) {
    switch (spec.distribution) {
      case DemandDistribution::kPareto: {
        const double u = 1.0 - unit(rng);  // (0, 1]
        w = spec.scale / std::pow(u, 1.0 / spec.shape);
        break;
      }
      case DemandDistribution::kUniform:
        w = 2.0 * spec.scale * (1.0 - unit(rng));
        break;
      case DemandDistribution::kConstant:
        w = spec.scale;
        break;
    }
  }
  return out;
}

namespace {

[[noreturn]] void format_error(const std::filesystem::path& path, std::size_t line,
                               const std::string& what) {
  throw FormatError(path.string() + ":" + std::to_string(line) + ": " + what);
}

// Strips comments; returns false for lines with nothing left.
bool content_of(std::string& line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return line.find_first_not_of(" \t\r") != std::string::npos;
}

bool parse_node_id(const std::string& token, NodeId& out) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    const unsigned long long value = std::stoull(token);
    if (value >= std::numeric_limits<NodeId>::max()) return false;
    out = static_cast<NodeId>(value);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_real(const std::string& token, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(token, &used);
    return used == token.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

Graph load_graph(const std::filesystem::path& edge_path,
                 const std::optional<std::filesystem::path>& demand_path) {
  std::ifstream in(edge_path);
  if (!in) throw FormatError(edge_path.string() + ": cannot open edge file");

  std::vector<Edge> edges;
  std::map<EdgeKey, double> seen;
  std::size_t node_count = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!content_of(line)) continue;
    std::istringstream fields(line);
    std::string a, b, c, extra;
    if (!(fields >> a >> b >> c) || (fields >> extra)) {
      format_error(edge_path, lineno, "expected '<u> <v> <distance>'");
    }
    Edge e{};
    if (!parse_node_id(a, e.u) || !parse_node_id(b, e.v)) {
      format_error(edge_path, lineno, "node ids must be non-negative integers");
    }
    if (!parse_real(c, e.dist)) format_error(edge_path, lineno, "distance is not a number");
    if (e.dist <= 0.0) format_error(edge_path, lineno, "distance must be positive");
    if (e.u == e.v) format_error(edge_path, lineno, "self-loop");
    auto [it, inserted] = seen.emplace(key(e.u, e.v), e.dist);
    if (!inserted) {
      format_error(edge_path, lineno,
                   it->second == e.dist ? "duplicate edge"
                                        : "duplicate edge with conflicting distance");
    }
    node_count = std::max<std::size_t>(node_count, std::max(e.u, e.v) + std::size_t{1});
    edges.push_back(e);
  }
  if (edges.empty()) throw FormatError(edge_path.string() + ": edge file contains no edges");

  std::map<NodeId, std::pair<double, double>> node_values;
  if (demand_path) {
    std::ifstream din(*demand_path);
    if (!din) throw FormatError(demand_path->string() + ": cannot open demand file");
    lineno = 0;
    while (std::getline(din, line)) {
      ++lineno;
      if (!content_of(line)) continue;
      std::istringstream fields(line);
      std::vector<std::string> tokens;
      for (std::string t; fields >> t;) tokens.push_back(t);
      if (tokens.size() < 2 || tokens.size() > 3) {
        format_error(*demand_path, lineno, "expected '<node_id> <demand> [self_cost]'");
      }
      NodeId id = 0;
      double demand = 0.0;
      double self_cost = 0.0;
      if (!parse_node_id(tokens[0], id)) format_error(*demand_path, lineno, "bad node id");
      if (!parse_real(tokens[1], demand) || demand < 0.0) {
        format_error(*demand_path, lineno, "demand must be a non-negative number");
      }
      if (tokens.size() == 3 && (!parse_real(tokens[2], self_cost) || self_cost < 0.0)) {
        format_error(*demand_path, lineno, "self-cost must be a non-negative number");
      }
      if (!node_values.emplace(id, std::pair{demand, self_cost}).second) {
        format_error(*demand_path, lineno, "node listed twice");
      }
      node_count = std::max<std::size_t>(node_count, id + std::size_t{1});
    }
  }

  std::vector<double> demand(node_count, 1.0);
  std::vector<double> self_cost(node_count, 0.0);
  for (const auto& [id, values] : node_values) {
    demand[id] = values.first;
    self_cost[id] = values.second;
  }
  return Graph(node_count, edges, std::move(demand), std::move(self_cost));
}

void save_graph(const Graph& graph, const std::filesystem::path& edge_path,
                const std::filesystem::path& demand_path) {
  std::ofstream eout(edge_path);
  if (!eout) throw Error(edge_path.string() + ": cannot open for writing");
  for (const Edge& e : graph.edges()) {
    eout << e.u << ' ' << e.v << ' ' << format_real(e.dist) << '\n';
  }
  if (!eout) throw Error(edge_path.string() + ": write failed");

  const auto self = graph.self_costs();
  const bool with_self = std::any_of(self.begin(), self.end(), [](double c) { return c != 0.0; });
  std::ofstream dout(demand_path);
  if (!dout) throw Error(demand_path.string() + ": cannot open for writing");
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    dout << v << ' ' << format_real(graph.demand(v));
    if (with_self) dout << ' ' << format_real(graph.self_cost(v));
    dout << '\n';
  }
  if (!dout) throw Error(demand_path.string() + ": write failed");
}

}  // namespace dcplace
