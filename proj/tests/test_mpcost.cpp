#include <doctest.h>

#include <numeric>
#include <random>

#include "dcplace/mpcost.hpp"
#include "oracles.hpp"

using namespace dcplace;

namespace {

RootedRegionTree whole_tree(const Graph& g, NodeId root) {
  std::vector<NodeId> nodes(g.node_count());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  return root_tree(g.edges(), nodes, root, g);
}

std::vector<double> oracle_costs(const Graph& g) {
  std::vector<NodeId> nodes(g.node_count());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  return oracle::tree_costs(g, nodes, g.edges());
}

}  // namespace

TEST_CASE("upward pass on STAR4") {
  const Graph g = oracle::star(3);
  const RootedRegionTree t = whole_tree(g, 0);
  const UpwardResult up = upward_pass(t);
  for (std::size_t leaf = 1; leaf < 4; ++leaf) {
    CHECK(up.messages.f_up[leaf] == 1.0);
    CHECK(up.messages.g_up[leaf] == 1.0);
  }
  CHECK(up.root_cost == 3.0);
}

TEST_CASE("single-node tree") {
  const Graph g(1, std::vector<Edge>{});
  const RootedRegionTree t = whole_tree(g, 0);
  CHECK(upward_pass(t).root_cost == 0.0);
  CHECK(tree_cost_center(t).center == 0);
  const SimulatedPasses sim = simulate_cost_passes(t);
  CHECK(sim.upward_stats.messages_sent == 0);
  CHECK(sim.table.cost_at == std::vector<double>{0.0});

  const Graph costly = g.with_self_cost({2.0}).with_demand({3.0});
  CHECK(upward_pass(whole_tree(costly, 0)).root_cost == 6.0);
}

TEST_CASE("downward pass on STAR4 and the 3-node path") {
  const Graph star = oracle::star(3);
  const RootedRegionTree ts = whole_tree(star, 0);
  const UpwardResult up = upward_pass(ts);
  CHECK(downward_pass(ts, up.messages, up.root_cost).cost_at == std::vector<double>{3, 5, 5, 5});

  const Graph p3 = oracle::path(3);
  const RootedRegionTree tp = whole_tree(p3, 1);
  const UpwardResult upp = upward_pass(tp);
  CHECK(downward_pass(tp, upp.messages, upp.root_cost).cost_at == std::vector<double>{3, 2, 3});
}

TEST_CASE("the cost update must subtract the child's own upward mass") {
  // Path v0-v1-v2 rooted at v1. Subtracting the downward message
  // f_parent(v0) = 2 instead of f_up[v0] = 1 would give cost(v0) = 2.
  const Graph p3 = oracle::path(3);
  const RootedRegionTree t = whole_tree(p3, 1);
  const UpwardResult up = upward_pass(t);
  const double f_down = t.total_demand() - up.messages.f_up[0];
  const double h = up.root_cost + f_down * 1.0 - 0.0;
  CHECK(h - f_down * 1.0 == 2.0);
  CHECK(h - up.messages.f_up[0] * 1.0 == 3.0);
  CHECK(downward_pass(t, up.messages, up.root_cost).cost_at[0] == 3.0);
}

TEST_CASE("root cost equals the weighted distance sum from the root") {
  std::mt19937_64 rng(50);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = oracle::random_tree(50, rng);
    const NodeId root = static_cast<NodeId>(rep * 5);
    const DistanceField f = shortest_distances(g, root);
    double direct = 0.0;
    for (NodeId v = 0; v < 50; ++v) direct += g.demand(v) * service_distance(g, f, v);
    CHECK(oracle::close(upward_pass(whole_tree(g, root)).root_cost, direct));
  }
}

TEST_CASE("every node cost matches recomputation from scratch") {
  std::mt19937_64 rng(80);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = oracle::random_tree(80, rng, {.random_self_cost = true});
    const RootedRegionTree t = whole_tree(g, static_cast<NodeId>(rep));
    const UpwardResult up = upward_pass(t);
    const CostTable table = downward_pass(t, up.messages, up.root_cost);
    const auto expected = oracle_costs(g);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(oracle::close(table.cost_at[i], expected[t.node(i)]));
  }
}

TEST_CASE("tree cost center") {
  CHECK(tree_cost_center(whole_tree(oracle::path(3), 0)).center == 1);
  CHECK(tree_cost_center(whole_tree(oracle::star(3), 2)).center == 0);
  // even path: both middle nodes cost the same; lowest id wins
  CHECK(tree_cost_center(whole_tree(oracle::path(4), 3)).center == 1);

  std::mt19937_64 rng(40);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = oracle::random_tree(40, rng, {.integer_dist = true});
    const auto expected = oracle_costs(g);
    const auto best = std::min_element(expected.begin(), expected.end()) - expected.begin();
    CHECK(tree_cost_center(whole_tree(g, 0)).center == static_cast<NodeId>(best));
  }
}

TEST_CASE("simulated passes equal the direct passes and count messages") {
  std::mt19937_64 rng(60);
  for (int rep = 0; rep < 15; ++rep) {
    const std::size_t n = 1 + rep * 7;
    const Graph g = oracle::random_tree(n, rng, {.random_self_cost = true});
    const RootedRegionTree t = whole_tree(g, static_cast<NodeId>(rep % n));
    const SimulatedPasses sim = simulate_cost_passes(t);
    const UpwardResult up = upward_pass(t);
    CHECK(sim.upward.root_cost == up.root_cost);
    CHECK(sim.upward.messages.f_up == up.messages.f_up);
    CHECK(sim.upward.messages.g_up == up.messages.g_up);
    CHECK(sim.table.cost_at == downward_pass(t, up.messages, up.root_cost).cost_at);
    CHECK(sim.upward_stats.messages_sent == 2 * (n - 1));
    CHECK(sim.downward_stats.messages_sent == 2 * (n - 1));
  }
}

TEST_CASE("argmin and size checks") {
  CHECK(argmin_cost(CostTable{{3, 1, 1, 2}}) == 1);
  const RootedRegionTree t = whole_tree(oracle::path(3), 0);
  UpwardMessages wrong{{1.0}, {1.0}};
  CHECK_THROWS_AS(downward_pass(t, wrong, 0.0), ArgumentError);
}
