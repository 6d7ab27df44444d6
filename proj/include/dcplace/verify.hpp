// verify.hpp - invariant checks that can be run against any graph

#ifndef DCPLACE_VERIFY_HPP
#define DCPLACE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dcplace/graph.hpp"

namespace dcplace {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::size_t k = 3;           // generators used by the partition checks
  std::uint64_t seed = 1;
  std::size_t oracle_nodes = 50;  // tree nodes recomputed from scratch
};

// Structural graph invariants, broadcast/Dijkstra agreement, partition
// invariants, message-passing against per-node recomputation, and one DLM
// run. Never throws for a bad graph; failures are reported as results.
std::vector<CheckResult> run_invariant_suite(const Graph& graph, const VerifyOptions& options = {});

}  // namespace dcplace

#endif  // DCPLACE_VERIFY_HPP
