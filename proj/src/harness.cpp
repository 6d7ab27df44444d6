#include "dcplace/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace dcplace {

using nlohmann::json;

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kGrid:
      return "grid";
    case TopologyKind::kSmallWorld:
      return "small-world";
    case TopologyKind::kFile:
      return "file";
  }
  return "unknown";
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDlm:
      return "dlm";
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kBrute:
      return "brute";
    case Algorithm::kRandom:
      return "random";
  }
  return "unknown";
}

TopologyKind parse_topology(const std::string& name) {
  if (name == "grid") return TopologyKind::kGrid;
  if (name == "small-world") return TopologyKind::kSmallWorld;
  if (name == "file") return TopologyKind::kFile;
  throw ArgumentError("unknown topology '" + name + "'");
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "dlm") return Algorithm::kDlm;
  if (name == "greedy") return Algorithm::kGreedy;
  if (name == "brute") return Algorithm::kBrute;
  if (name == "random") return Algorithm::kRandom;
  throw ArgumentError("unknown algorithm '" + name + "'");
}

std::vector<std::size_t> ExperimentConfig::full_sizes() {
  return {400, 500, 600, 700, 800, 900, 1000, 2000, 3000, 4000};
}

void ExperimentConfig::validate() const {
  if (topology == TopologyKind::kFile && graph_file.empty()) {
    throw ArgumentError("file topology needs graph_file");
  }
  if (topology != TopologyKind::kFile) {
    for (std::size_t n : sizes) {
      if (n < 2) throw ArgumentError("every size must be at least 2");
    }
  }
  for (double r : k_ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ArgumentError("k ratios must be positive");
  }
  if (instances_per_cell == 0) throw ArgumentError("instances_per_cell must be positive");
  demand.validate();
  if (dlm.max_iter == 0) throw ArgumentError("dlm max_iter must be at least 1");
  if (!(dlm.eta >= 0.0)) throw ArgumentError("dlm eta must be non-negative");
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix(seed ^ splitmix(value));
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// rows x cols with rows the largest divisor not above sqrt(n).
std::pair<std::size_t, std::size_t> grid_shape(std::size_t n) {
  std::size_t rows = 1;
  for (std::size_t r = 1; r * r <= n; ++r) {
    if (n % r == 0) rows = r;
  }
  return {rows, n / rows};
}

}  // namespace

std::size_t k_for(double ratio, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  return std::max<std::size_t>(1, k);
}

std::uint64_t instance_seed(std::uint64_t master_seed, TopologyKind kind, std::size_t n,
                            std::size_t instance) {
  std::uint64_t s = combine(master_seed, static_cast<std::uint64_t>(kind));
  s = combine(s, n);
  return combine(s, instance);
}

Graph make_instance(const ExperimentConfig& config, std::size_t n, std::uint64_t seed) {
  std::optional<Graph> graph;
  switch (config.topology) {
    case TopologyKind::kGrid: {
      const auto [rows, cols] = grid_shape(n);
      graph = gen_grid(rows, cols);
      break;
    }
    case TopologyKind::kSmallWorld:
      graph = gen_small_world(n, config.small_world_degree, config.rewire_prob, seed);
      break;
    case TopologyKind::kFile:
      graph = load_graph(config.graph_file);
      break;
  }
  DemandSpec demand = config.demand;
  demand.seed = combine(seed, 0xde);
  return graph->with_demand(gen_demand(graph->node_count(), demand));
}

namespace {

struct Cell {
  std::size_t n;
  double ratio;
  std::size_t instance;
};

std::vector<ResultRow> run_cell(const ExperimentConfig& config, const Cell& cell) {
  const std::uint64_t seed = instance_seed(config.master_seed, config.topology, cell.n,
                                           cell.instance);
  const std::size_t k = k_for(cell.ratio, cell.n);
  std::vector<ResultRow> rows;
  auto blank = [&](Algorithm a) {
    ResultRow row;
    row.topology = to_string(config.topology);
    row.n = cell.n;
    row.k = k;
    row.instance = cell.instance;
    row.instance_seed = seed;
    row.algorithm = to_string(a);
    return row;
  };

  std::optional<Graph> graph;
  std::string gen_error;
  try {
    graph = make_instance(config, cell.n, seed);
    if (graph->node_count() != cell.n) throw GenerationError("instance size mismatch");
    if (k >= cell.n) throw ArgumentError("k = " + std::to_string(k) + " is not below n");
  } catch (const Error& e) {
    gen_error = e.what();
  }

  for (Algorithm a : config.algorithms) {
    ResultRow row = blank(a);
    if (!gen_error.empty()) {
      row.error = gen_error;
      rows.push_back(std::move(row));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (a) {
        case Algorithm::kDlm: {
          DlmConfig dlm = config.dlm;
          dlm.k = k;
          dlm.seed = combine(seed, 0x100 + k);
          if (dlm.tie_mode.kind == TieMode::Kind::kSeededUniform) {
            dlm.tie_mode.seed = combine(seed, 0x200 + k);
          }
          if (dlm.mst_ties.kind == TieMode::Kind::kSeededUniform) {
            dlm.mst_ties.seed = combine(seed, 0x400 + k);
          }
          const DlmTrace trace = run_dlm(*graph, dlm);
          row.cost = trace.final_cost;
          row.iterations = trace.iterations.size();
          row.messages_sent = trace.total_stats.messages_sent;
          break;
        }
        case Algorithm::kGreedy:
          row.cost = greedy_placement(*graph, k).cost_after.back();
          break;
        case Algorithm::kBrute:
          row.cost = brute_force_optimal(*graph, k, config.brute_budget).cost;
          break;
        case Algorithm::kRandom:
          row.cost = placement_cost(*graph, random_placement(*graph, k, combine(seed, 0x300 + k)));
          break;
      }
    } catch (const Error& e) {
      row.cost.reset();
      row.error = e.what();
    }
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::size_t> sizes = config.sizes;
  if (config.topology == TopologyKind::kFile) {
    sizes = {load_graph(config.graph_file).node_count()};
  }
  std::vector<Cell> cells;
  for (std::size_t n : sizes) {
    for (double ratio : config.k_ratios) {
      for (std::size_t i = 0; i < config.instances_per_cell; ++i) cells.push_back({n, ratio, i});
    }
  }

  std::vector<std::vector<ResultRow>> per_cell(cells.size());
  if (!config.algorithms.empty()) {
    unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        per_cell[i] = run_cell(config, cells[i]);
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
  }

  std::vector<ResultRow> rows;
  for (auto& chunk : per_cell) {
    for (auto& row : chunk) rows.push_back(std::move(row));
  }
  if (!config.output_path.empty()) write_results_csv(config.output_path, rows);
  return rows;
}

// ---------------------------------------------------------------- config

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  try {
    if (j.contains("topology")) c.topology = parse_topology(j["topology"].get<std::string>());
    if (j.contains("sizes")) c.sizes = j["sizes"].get<std::vector<std::size_t>>();
    if (j.contains("k_ratios")) c.k_ratios = j["k_ratios"].get<std::vector<double>>();
    if (j.contains("instances_per_cell")) c.instances_per_cell = j["instances_per_cell"];
    if (j.contains("master_seed")) c.master_seed = j["master_seed"];
    if (j.contains("output_path")) c.output_path = j["output_path"];
    if (j.contains("small_world_degree")) c.small_world_degree = j["small_world_degree"];
    if (j.contains("rewire_prob")) c.rewire_prob = j["rewire_prob"];
    if (j.contains("graph_file")) c.graph_file = j["graph_file"];
    if (j.contains("brute_budget")) c.brute_budget = j["brute_budget"];
    if (j.contains("threads")) c.threads = j["threads"];
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j["algorithms"]) c.algorithms.push_back(parse_algorithm(a));
    }
    if (j.contains("demand")) {
      const auto& d = j["demand"];
      if (d.contains("distribution")) {
        c.demand.distribution = parse_demand_distribution(d["distribution"]);
      }
      if (d.contains("shape")) c.demand.shape = d["shape"];
      if (d.contains("scale")) c.demand.scale = d["scale"];
    }
    if (j.contains("dlm")) {
      const auto& d = j["dlm"];
      if (d.contains("eta")) c.dlm.eta = d["eta"];
      if (d.contains("max_iter")) c.dlm.max_iter = d["max_iter"];
      if (d.contains("tie_mode")) c.dlm.tie_mode = parse_tie_mode(d["tie_mode"], 0);
      if (d.contains("mst_ties")) c.dlm.mst_ties = parse_tie_mode(d["mst_ties"], 0);
    }
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad config field: ") + e.what());
  }
  c.validate();
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["topology"] = to_string(c.topology);
  j["sizes"] = c.sizes;
  j["k_ratios"] = c.k_ratios;
  j["instances_per_cell"] = c.instances_per_cell;
  j["master_seed"] = c.master_seed;
  j["output_path"] = c.output_path;
  j["small_world_degree"] = c.small_world_degree;
  j["rewire_prob"] = c.rewire_prob;
  j["graph_file"] = c.graph_file;
  j["brute_budget"] = c.brute_budget;
  j["threads"] = c.threads;
  j["algorithms"] = json::array();
  for (Algorithm a : c.algorithms) j["algorithms"].push_back(to_string(a));
  j["demand"] = {{"distribution", to_string(c.demand.distribution)},
                 {"shape", c.demand.shape},
                 {"scale", c.demand.scale}};
  j["dlm"] = {{"eta", c.dlm.eta},
              {"max_iter", c.dlm.max_iter},
              {"tie_mode", to_string(c.dlm.tie_mode)},
              {"mst_ties", to_string(c.dlm.mst_ties)}};
  return j.dump(2);
}

// ---------------------------------------------------------------- CSV

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in.peek() == '\n') in.get(ch);
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw FormatError("csv: unterminated quoted field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

namespace {

const std::vector<std::string> kResultHeader{"topology",      "n",          "k",
                                             "instance",      "instance_seed", "algorithm",
                                             "cost",          "iterations", "messages_sent",
                                             "runtime_ms",    "error"};

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (std::size_t i = 0; i < kResultHeader.size(); ++i) {
    out << (i ? "," : "") << kResultHeader[i];
  }
  out << "\r\n";
  char runtime[32];
  for (const ResultRow& r : rows) {
    std::snprintf(runtime, sizeof runtime, "%.3f", r.runtime_ms);
    out << csv_escape(r.topology) << ',' << r.n << ',' << r.k << ',' << r.instance << ','
        << r.instance_seed << ',' << csv_escape(r.algorithm) << ','
        << (r.cost ? format_real(*r.cost) : "") << ','
        << (r.iterations ? std::to_string(*r.iterations) : "") << ','
        << (r.messages_sent ? std::to_string(*r.messages_sent) : "") << ',' << runtime << ','
        << csv_escape(r.error) << "\r\n";
  }
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  write_results_csv(out, rows);
  if (!out) throw Error(path + ": write failed");
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  const auto records = parse_csv(in);
  if (records.empty() || records.front() != kResultHeader) {
    throw FormatError("results csv: missing or unexpected header");
  }
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != kResultHeader.size()) {
      throw FormatError("results csv: record " + std::to_string(i + 1) + " has " +
                        std::to_string(f.size()) + " fields");
    }
    try {
      ResultRow r;
      r.topology = f[0];
      r.n = std::stoull(f[1]);
      r.k = std::stoull(f[2]);
      r.instance = std::stoull(f[3]);
      r.instance_seed = std::stoull(f[4]);
      r.algorithm = f[5];
      if (!f[6].empty()) r.cost = std::stod(f[6]);
      if (!f[7].empty()) r.iterations = std::stoull(f[7]);
      if (!f[8].empty()) r.messages_sent = std::stoull(f[8]);
      r.runtime_ms = f[9].empty() ? 0.0 : std::stod(f[9]);
      r.error = f[10];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw FormatError("results csv: record " + std::to_string(i + 1) + " is malformed");
    }
  }
  return rows;
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open results file");
  return read_results_csv(in);
}

// ---------------------------------------------------------------- summary

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows, const std::string& baseline) {
  using CellKey = std::tuple<std::string, std::size_t, std::size_t>;
  // cell -> algorithm -> instance seed -> cost
  std::map<CellKey, std::map<std::string, std::map<std::uint64_t, double>>> cells;
  for (const ResultRow& r : rows) {
    auto& algos = cells[{r.topology, r.n, r.k}];
    auto& by_seed = algos[r.algorithm];
    if (r.cost && r.error.empty()) by_seed[r.instance_seed] = *r.cost;
  }

  std::vector<SummaryRow> out;
  for (const auto& [key, algos] : cells) {
    const auto& [topology, n, k] = key;
    auto base = algos.find(baseline);
    if (base == algos.end() || base->second.empty()) {
      SummaryRow w;
      w.topology = topology;
      w.n = n;
      w.k = k;
      w.algorithm = "*";
      w.baseline = baseline;
      w.warning = "missing baseline '" + baseline + "'";
      out.push_back(std::move(w));
      continue;
    }
    for (const auto& [algo, by_seed] : algos) {
      if (algo == baseline) continue;
      std::vector<double> ratios;
      for (const auto& [seed, cost] : by_seed) {
        auto b = base->second.find(seed);
        if (b != base->second.end()) ratios.push_back(cost / b->second);
      }
      SummaryRow s;
      s.topology = topology;
      s.n = n;
      s.k = k;
      s.algorithm = algo;
      s.baseline = baseline;
      if (ratios.empty()) {
        s.warning = "no instance with both '" + algo + "' and baseline";
        out.push_back(std::move(s));
        continue;
      }
      std::sort(ratios.begin(), ratios.end());
      double sum = 0.0;
      for (double x : ratios) sum += x;
      const std::size_t m = ratios.size();
      s.instances = m;
      s.mean = sum / static_cast<double>(m);
      s.median = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
      s.min = ratios.front();
      s.max = ratios.back();
      out.push_back(std::move(s));
    }
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "topology,n,k,algorithm,baseline,instances,mean,median,min,max,warning\r\n";
  for (const SummaryRow& s : rows) {
    out << csv_escape(s.topology) << ',' << s.n << ',' << s.k << ',' << csv_escape(s.algorithm)
        << ',' << csv_escape(s.baseline) << ',' << s.instances << ',';
    if (s.instances > 0) {
      out << format_real(s.mean) << ',' << format_real(s.median) << ',' << format_real(s.min)
          << ',' << format_real(s.max);
    } else {
      out << ",,,";
    }
    out << ',' << csv_escape(s.warning) << "\r\n";
  }
}

}  // namespace dcplace
