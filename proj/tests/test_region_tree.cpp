#include <doctest.h>

#include <numeric>
#include <random>

#include "dcplace/region_tree.hpp"
#include "dcplace/topology.hpp"
#include "oracles.hpp"

using namespace dcplace;

namespace {

double weight(const std::vector<Edge>& edges) {
  double w = 0.0;
  for (const Edge& e : edges) w += e.dist;
  return w;
}

std::vector<NodeId> all_nodes(const Graph& g) {
  std::vector<NodeId> v(g.node_count());
  std::iota(v.begin(), v.end(), NodeId{0});
  return v;
}

}  // namespace

TEST_CASE("a tree region is its own spanning tree") {
  std::mt19937_64 rng(4);
  const Graph g = oracle::random_tree(25, rng);
  auto mst = region_mst(g, all_nodes(g));
  std::sort(mst.begin(), mst.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  CHECK(mst == g.edges());
}

TEST_CASE("unit 4-cycle keeps the lexicographically smallest edges") {
  const std::vector<Edge> ring{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}};
  const Graph g(4, ring);
  CHECK(region_mst(g, all_nodes(g)) == std::vector<Edge>{{0, 1, 1}, {0, 3, 1}, {1, 2, 1}});
}

TEST_CASE("minimum weight matches spanning tree enumeration") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const Graph g = oracle::random_connected(n, n + 3, rng, {.integer_dist = rep % 2 == 0});
    const auto nodes = all_nodes(g);
    const double best = oracle::mst_weight_by_enumeration(g, nodes);
    CHECK(oracle::close(weight(region_mst(g, nodes)), best));
    for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(oracle::close(weight(region_mst(g, nodes, seed)), best));
  }
}

TEST_CASE("subregion of a larger graph uses induced edges only") {
  std::mt19937_64 rng(12);
  const Graph g = oracle::random_connected(20, 25, rng);
  // a BFS ball is connected in the induced subgraph
  const DistanceField f = shortest_distances(g, 0);
  std::vector<NodeId> order = all_nodes(g);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return f.dist[a] < f.dist[b]; });
  order.resize(8);
  std::vector<NodeId> region;
  for (NodeId v : order) {
    // keep only nodes whose parent is already in the region
    if (v == 0 || std::find(region.begin(), region.end(), *f.parent[v]) != region.end())
      region.push_back(v);
  }
  const auto mst = region_mst(g, region);
  CHECK(mst.size() + 1 == region.size());
  CHECK(oracle::close(weight(mst), oracle::mst_weight_by_enumeration(g, region)));
}

TEST_CASE("seeded ties pick different minimum trees on a grid") {
  const Graph g = gen_grid(6, 6);
  const auto nodes = all_nodes(g);
  const auto a = region_mst(g, nodes, 1);
  const auto b = region_mst(g, nodes, 2);
  CHECK(a.size() == 35);
  CHECK(weight(a) == 35.0);
  CHECK(a != b);
  CHECK(a == region_mst(g, nodes, 1));
  CHECK_NOTHROW(root_tree(a, nodes, 14, g));
}

TEST_CASE("disconnected region") {
  const Graph g = oracle::path(5);
  CHECK_THROWS_AS(region_mst(g, std::vector<NodeId>{0, 1, 3}), DisconnectedError);
  CHECK_THROWS_AS(region_mst(g, std::vector<NodeId>{0, 0}), ArgumentError);
  CHECK(region_mst(g, std::vector<NodeId>{2}).empty());
}

TEST_CASE("rooting a star at its center") {
  const Graph g = oracle::star(4);
  const auto nodes = all_nodes(g);
  const RootedRegionTree t = root_tree(region_mst(g, nodes), nodes, 0, g);
  CHECK(t.root_node() == 0);
  CHECK(t.children(t.root()).size() == 4);
  for (std::size_t i = 1; i < 5; ++i) CHECK(t.parent(i) == t.root());
}

TEST_CASE("rooting a path at its end") {
  const Graph g = oracle::path(3);
  const auto nodes = all_nodes(g);
  const RootedRegionTree t = root_tree(g.edges(), nodes, 2, g);
  CHECK(t.node(*t.parent(t.local_index(1))) == 2);
  CHECK(t.node(*t.parent(t.local_index(0))) == 1);
  CHECK_FALSE(t.parent(t.local_index(2)));
  CHECK(t.top_down().front() == t.local_index(2));
}

TEST_CASE("rerooting at every node keeps the structure") {
  std::mt19937_64 rng(15);
  const Graph g = oracle::random_tree(15, rng);
  const auto nodes = all_nodes(g);
  for (NodeId r : nodes) {
    const RootedRegionTree t = root_tree(g.edges(), nodes, r, g);
    std::size_t parentless = 0, links = 0, covered = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.parent(i)) {
        ++links;
        // parent chain reaches the root within n-1 steps
        std::size_t v = i, steps = 0;
        while (t.parent(v)) {
          v = *t.parent(v);
          ++steps;
        }
        CHECK(v == t.root());
        CHECK(steps <= 14);
      } else {
        ++parentless;
      }
      covered += t.children(i).size();
    }
    CHECK(parentless == 1);
    CHECK(links == 14);
    CHECK(covered == 14);
    CHECK(t.edges() == g.edges());
    // subtree masses from the root add up to the total demand
    std::vector<double> mass(t.size(), 0.0);
    auto order = t.top_down();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      mass[*it] += t.demand(*it);
      if (t.parent(*it)) mass[*t.parent(*it)] += mass[*it];
    }
    double sum = t.demand(t.root());
    for (std::size_t c : t.children(t.root())) sum += mass[c];
    CHECK(oracle::close(sum, g.total_demand()));
  }
}

TEST_CASE("root_tree validation") {
  const Graph g = oracle::path(4);
  const auto nodes = all_nodes(g);
  CHECK_THROWS_AS(root_tree(g.edges(), nodes, 9, g), ArgumentError);
  const std::vector<Edge> short_tree{{0, 1, 1}, {1, 2, 1}};
  CHECK_THROWS_AS(root_tree(short_tree, nodes, 0, g), ArgumentError);
  const std::vector<Edge> wrong_dist{{0, 1, 2}, {1, 2, 1}, {2, 3, 1}};
  CHECK_THROWS_AS(root_tree(wrong_dist, nodes, 0, g), ArgumentError);
  const std::vector<Edge> not_edge{{0, 2, 1}, {1, 2, 1}, {2, 3, 1}};
  CHECK_THROWS_AS(root_tree(not_edge, nodes, 0, g), ArgumentError);
  const std::vector<Edge> cycle_plus{{0, 1, 1}, {1, 2, 1}, {1, 2, 1}};
  CHECK_THROWS_AS(root_tree(cycle_plus, nodes, 0, g), ArgumentError);
}
