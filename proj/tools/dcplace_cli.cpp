// dcplace - command line front end: generate, place, experiment, summarize, verify

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcplace/baselines.hpp"
#include "dcplace/dlm.hpp"
#include "dcplace/harness.hpp"
#include "dcplace/topology.hpp"
#include "dcplace/verify.hpp"
#include "dcplace/voronoi.hpp"

namespace {

using namespace dcplace;

struct GenerateArgs {
  std::string topology = "grid";
  std::size_t rows = 20;
  std::size_t cols = 20;
  std::size_t n = 400;
  std::size_t degree = 4;
  double rewire = 0.1;
  std::uint64_t seed = 1;
  std::string demand = "pareto";
  double shape = 1.16;
  double scale = 1.0;
  std::string edges_out;
  std::string demand_out;
};

int run_generate(const GenerateArgs& a) {
  const TopologyKind kind = parse_topology(a.topology);
  Graph graph = kind == TopologyKind::kGrid ? gen_grid(a.rows, a.cols)
                : kind == TopologyKind::kSmallWorld
                    ? gen_small_world(a.n, a.degree, a.rewire, a.seed)
                    : throw ArgumentError("generate supports grid and small-world");
  DemandSpec spec{parse_demand_distribution(a.demand), a.shape, a.scale, a.seed};
  graph = graph.with_demand(gen_demand(graph.node_count(), spec));
  save_graph(graph, a.edges_out, a.demand_out);
  std::cout << "wrote " << graph.node_count() << " nodes, " << graph.edge_count() << " edges\n";
  return 0;
}

struct PlaceArgs {
  std::string edges;
  std::string demand;
  std::string algorithm = "dlm";
  std::size_t k = 2;
  std::uint64_t seed = 1;
  double eta = 0.0;
  std::size_t max_iter = 100;
  std::string tie_mode = "lowest-id";
  std::string mst_ties = "seeded-uniform";
  std::string out;
};

int run_place(const PlaceArgs& a) {
  const Graph graph = load_graph(
      a.edges, a.demand.empty() ? std::nullopt : std::optional<std::filesystem::path>(a.demand));
  nlohmann::json j;
  Placement placement;
  switch (parse_algorithm(a.algorithm)) {
    case Algorithm::kDlm: {
      DlmConfig config;
      config.k = a.k;
      config.seed = a.seed;
      config.eta = a.eta;
      config.max_iter = a.max_iter;
      config.tie_mode = parse_tie_mode(a.tie_mode, a.seed);
      config.mst_ties = parse_tie_mode(a.mst_ties, a.seed);
      const DlmTrace trace = run_dlm(graph, config);
      placement = trace.final_placement;
      j["iterations"] = trace.iterations.size();
      j["converged"] = trace.converged;
      j["messages_sent"] = trace.total_stats.messages_sent;
      break;
    }
    case Algorithm::kGreedy:
      placement = greedy_placement(graph, a.k).placement;
      j["iterations"] = nullptr;
      break;
    case Algorithm::kBrute:
      placement = brute_force_optimal(graph, a.k).placement;
      j["iterations"] = nullptr;
      break;
    case Algorithm::kRandom:
      placement = random_placement(graph, a.k, a.seed);
      j["iterations"] = nullptr;
      break;
  }
  const Partition part = voronoi_partition(graph, placement);
  std::vector<std::size_t> sizes;
  for (const auto& region : part.regions()) sizes.push_back(region.size());
  j["sites"] = std::vector<NodeId>(placement.sites().begin(), placement.sites().end());
  j["cost"] = placement_cost(graph, placement);
  j["per_region_sizes"] = sizes;

  const std::string text = j.dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out);
    if (!(out << text)) throw Error(a.out + ": write failed");
  }
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string topology;
  std::vector<std::size_t> sizes;
  std::vector<double> ratios;
  std::size_t instances = 0;
  std::vector<std::string> algorithms;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool full_sweep = false;
  unsigned threads = 0;
  bool threads_set = false;
  std::optional<std::size_t> degree;
  std::optional<double> rewire;
  std::string graph_file;
  std::optional<double> eta;
  std::optional<std::size_t> max_iter;
  std::string tie_mode;
  std::string mst_ties;
  std::string demand;
  std::optional<double> shape;
  std::optional<double> scale;
  bool no_algorithms = false;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig c;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw ArgumentError(a.config + ": cannot open config");
    std::stringstream buf;
    buf << in.rdbuf();
    c = config_from_json(buf.str());
  }
  if (!a.topology.empty()) c.topology = parse_topology(a.topology);
  if (a.full_sweep) c.sizes = ExperimentConfig::full_sizes();
  if (!a.sizes.empty()) c.sizes = a.sizes;
  if (!a.ratios.empty()) c.k_ratios = a.ratios;
  if (a.instances) c.instances_per_cell = a.instances;
  if (a.no_algorithms) c.algorithms.clear();
  if (!a.algorithms.empty()) {
    c.algorithms.clear();
    for (const auto& name : a.algorithms) c.algorithms.push_back(parse_algorithm(name));
  }
  if (a.seed) c.master_seed = *a.seed;
  if (!a.out.empty()) c.output_path = a.out;
  if (a.threads_set) c.threads = a.threads;
  if (a.degree) c.small_world_degree = *a.degree;
  if (a.rewire) c.rewire_prob = *a.rewire;
  if (!a.graph_file.empty()) c.graph_file = a.graph_file;
  if (a.eta) c.dlm.eta = *a.eta;
  if (a.max_iter) c.dlm.max_iter = *a.max_iter;
  if (!a.tie_mode.empty()) c.dlm.tie_mode = parse_tie_mode(a.tie_mode, 0);
  if (!a.mst_ties.empty()) c.dlm.mst_ties = parse_tie_mode(a.mst_ties, 0);
  if (!a.demand.empty()) c.demand.distribution = parse_demand_distribution(a.demand);
  if (a.shape) c.demand.shape = *a.shape;
  if (a.scale) c.demand.scale = *a.scale;

  const auto rows = run_experiment(c);
  if (c.output_path.empty()) write_results_csv(std::cout, rows);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += !r.error.empty();
  std::cerr << rows.size() << " rows, " << failed << " with errors\n";
  return 0;
}

int run_summarize(const std::string& in, const std::string& baseline, const std::string& out) {
  const auto rows = read_results_csv(in);
  const auto summary = summarize(rows, baseline);
  if (out.empty()) {
    write_summary_csv(std::cout, summary);
  } else {
    std::ofstream f(out, std::ios::binary);
    write_summary_csv(f, summary);
    if (!f) throw Error(out + ": write failed");
  }
  return 0;
}

int run_verify(const std::string& edges, const std::string& demand, const VerifyOptions& opts) {
  const Graph graph = load_graph(
      edges, demand.empty() ? std::nullopt : std::optional<std::filesystem::path>(demand));
  bool ok = true;
  for (const CheckResult& r : run_invariant_suite(graph, opts)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed) std::cout << ": " << r.detail;
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-center placement on graphs: distributed Lloyd iteration and baselines"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic topology and demand file");
  generate->add_option("--topology", gen.topology, "grid | small-world")->capture_default_str();
  generate->add_option("--rows", gen.rows, "Grid rows")->capture_default_str();
  generate->add_option("--cols", gen.cols, "Grid columns")->capture_default_str();
  generate->add_option("-n,--nodes", gen.n, "Small-world node count")->capture_default_str();
  generate->add_option("--degree", gen.degree, "Small-world base degree")->capture_default_str();
  generate->add_option("--rewire", gen.rewire, "Small-world rewiring probability")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--demand", gen.demand, "pareto | uniform | constant")
      ->capture_default_str();
  generate->add_option("--shape", gen.shape, "Pareto shape")->capture_default_str();
  generate->add_option("--scale", gen.scale, "Demand scale")->capture_default_str();
  generate->add_option("--edges-out", gen.edges_out, "Edge list output")->required();
  generate->add_option("--demand-out", gen.demand_out, "Demand file output")->required();

  PlaceArgs place;
  auto* place_cmd = app.add_subcommand("place", "Place k sites on one graph and print JSON");
  place_cmd->add_option("--edges", place.edges, "Edge list")->required();
  place_cmd->add_option("--demand", place.demand, "Demand file");
  place_cmd->add_option("--algorithm", place.algorithm, "dlm | greedy | brute | random")
      ->capture_default_str();
  place_cmd->add_option("-k", place.k, "Number of sites")->capture_default_str();
  place_cmd->add_option("--seed", place.seed, "Random seed")->capture_default_str();
  place_cmd->add_option("--eta", place.eta, "DLM termination threshold")->capture_default_str();
  place_cmd->add_option("--max-iter", place.max_iter, "DLM iteration cap")->capture_default_str();
  place_cmd->add_option("--tie-mode", place.tie_mode, "lowest-id | seeded-uniform")
      ->capture_default_str();
  place_cmd->add_option("--mst-ties", place.mst_ties, "Equal-distance MST edge order: lowest-id | seeded-uniform")
      ->capture_default_str();
  place_cmd->add_option("--out", place.out, "Output JSON (stdout when omitted)");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a sweep and write result rows as CSV");
  exp_cmd->add_option("--config", exp.config, "JSON config file");
  exp_cmd->add_option("--topology", exp.topology, "grid | small-world | file");
  exp_cmd->add_option("--sizes", exp.sizes, "Node counts");
  exp_cmd->add_option("--ratios", exp.ratios, "k/n ratios");
  exp_cmd->add_option("--instances", exp.instances, "Instances per cell");
  exp_cmd->add_option("--algorithms", exp.algorithms, "dlm greedy brute random");
  exp_cmd->add_flag("--no-algorithms", exp.no_algorithms, "Run with an empty algorithm set");
  exp_cmd->add_option("--seed", exp.seed, "Master seed");
  exp_cmd->add_option("--out", exp.out, "Results CSV (stdout when omitted)");
  exp_cmd->add_flag("--full-sweep", exp.full_sweep, "Sizes 400..1000, 2000, 3000, 4000");
  exp_cmd->add_option("--threads", exp.threads, "Worker threads, 0 = all cores")
      ->each([&](const std::string&) { exp.threads_set = true; });
  exp_cmd->add_option("--degree", exp.degree, "Small-world base degree");
  exp_cmd->add_option("--rewire", exp.rewire, "Small-world rewiring probability");
  exp_cmd->add_option("--graph-file", exp.graph_file, "Edge list for the file topology");
  exp_cmd->add_option("--eta", exp.eta, "DLM termination threshold");
  exp_cmd->add_option("--max-iter", exp.max_iter, "DLM iteration cap");
  exp_cmd->add_option("--tie-mode", exp.tie_mode, "lowest-id | seeded-uniform");
  exp_cmd->add_option("--mst-ties", exp.mst_ties, "lowest-id | seeded-uniform");
  exp_cmd->add_option("--demand", exp.demand, "pareto | uniform | constant");
  exp_cmd->add_option("--shape", exp.shape, "Pareto shape");
  exp_cmd->add_option("--scale", exp.scale, "Demand scale");

  std::string sum_in, sum_baseline = "greedy", sum_out;
  auto* sum_cmd = app.add_subcommand("summarize", "Cost ratios per cell from a results CSV");
  sum_cmd->add_option("--in", sum_in, "Results CSV")->required();
  sum_cmd->add_option("--baseline", sum_baseline, "Baseline algorithm")->capture_default_str();
  sum_cmd->add_option("--out", sum_out, "Summary CSV (stdout when omitted)");

  std::string ver_edges, ver_demand;
  VerifyOptions ver_opts;
  auto* ver_cmd = app.add_subcommand("verify", "Run the invariant suite on a graph file");
  ver_cmd->add_option("--edges", ver_edges, "Edge list")->required();
  ver_cmd->add_option("--demand", ver_demand, "Demand file");
  ver_cmd->add_option("-k", ver_opts.k, "Generators for partition checks")->capture_default_str();
  ver_cmd->add_option("--seed", ver_opts.seed, "Random seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(gen);
    if (*place_cmd) return run_place(place);
    if (*exp_cmd) return run_experiment_cmd(exp);
    if (*sum_cmd) return run_summarize(sum_in, sum_baseline, sum_out);
    if (*ver_cmd) return run_verify(ver_edges, ver_demand, ver_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
