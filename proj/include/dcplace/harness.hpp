// harness.hpp - reproducible DLM-vs-baseline experiment sweeps and summaries

#ifndef DCPLACE_HARNESS_HPP
#define DCPLACE_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcplace/baselines.hpp"
#include "dcplace/dlm.hpp"
#include "dcplace/topology.hpp"

namespace dcplace {

enum class TopologyKind { kGrid, kSmallWorld, kFile };
enum class Algorithm { kDlm, kGreedy, kBrute, kRandom };

std::string to_string(TopologyKind kind);
std::string to_string(Algorithm algorithm);
TopologyKind parse_topology(const std::string& name);
Algorithm parse_algorithm(const std::string& name);

struct ExperimentConfig {
  TopologyKind topology = TopologyKind::kGrid;
  std::vector<std::size_t> sizes{400, 500, 600, 700, 800, 900, 1000};
  std::vector<double> k_ratios{0.005, 0.010, 0.015};
  std::size_t instances_per_cell = 5;
  DemandSpec demand;
  DlmConfig dlm;  // k and seed are set per cell
  std::vector<Algorithm> algorithms{Algorithm::kDlm, Algorithm::kGreedy};
  std::uint64_t master_seed = 1;
  std::string output_path;

  std::size_t small_world_degree = 4;
  double rewire_prob = 0.1;
  std::string graph_file;   // topology == kFile; sizes are ignored
  std::uint64_t brute_budget = kDefaultSubsetBudget;
  unsigned threads = 1;     // 0 picks the hardware concurrency

  static std::vector<std::size_t> full_sizes();  // 400..1000, 2000, 3000, 4000

  void validate() const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

// max(1, round(ratio * n)).
std::size_t k_for(double ratio, std::size_t n);

// Seed for instance `instance` of a topology at size n. Cells sharing
// (topology, n, instance) see the same graph and demand.
std::uint64_t instance_seed(std::uint64_t master_seed, TopologyKind kind, std::size_t n,
                            std::size_t instance);

// Builds the graph of one instance, including its synthetic demand.
Graph make_instance(const ExperimentConfig& config, std::size_t n, std::uint64_t seed);

struct ResultRow {
  std::string topology;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t instance = 0;
  std::uint64_t instance_seed = 0;
  std::string algorithm;
  std::optional<double> cost;  // empty when the run failed
  std::optional<std::size_t> iterations;        // DLM only
  std::optional<std::uint64_t> messages_sent;   // DLM only
  double runtime_ms = 0.0;
  std::string error;
};

// Rows come back in canonical order (size, ratio, instance, algorithm)
// regardless of thread count, and are written to output_path when set.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& in);
std::vector<ResultRow> read_results_csv(const std::string& path);

struct SummaryRow {
  std::string topology;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string algorithm;
  std::string baseline;
  std::size_t instances = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::string warning;
};

// Per (topology, n, k) cell and algorithm: statistics of cost / baseline cost
// over the instances where both succeeded. Cells without a baseline produce a
// single warning row.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows, const std::string& baseline);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// RFC 4180 helpers.
std::string csv_escape(const std::string& field);
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

}  // namespace dcplace

#endif  // DCPLACE_HARNESS_HPP
