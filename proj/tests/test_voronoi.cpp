#include <doctest.h>

#include <random>

#include "dcplace/topology.hpp"
#include "dcplace/voronoi.hpp"
#include "oracles.hpp"

using namespace dcplace;

namespace {

// Every region is connected through its region_parent chain.
void check_partition(const Graph& g, const Partition& p) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::uint32_t r = p.region_of[v];
    if (p.generators[r] == v) {
      CHECK_FALSE(p.region_parent[v]);
      continue;
    }
    REQUIRE(p.region_parent[v]);
    const NodeId u = *p.region_parent[v];
    CHECK(p.region_of[u] == r);
    CHECK(g.edge_distance(u, v));
    CHECK(p.nearest_dist[u] < p.nearest_dist[v]);
  }
  std::size_t total = 0;
  for (const auto& region : p.regions()) total += region.size();
  CHECK(total == g.node_count());
}

}  // namespace

TEST_CASE("P5 with generators at both ends") {
  const Graph g = oracle::path(5);
  const Partition p = voronoi_partition(g, Placement({0, 4}));
  CHECK(p.regions() == std::vector<std::vector<NodeId>>{{0, 1, 2}, {3, 4}});
  CHECK(p.region_parent[2] == NodeId{1});
  CHECK(p.nearest_dist == std::vector<double>{0, 1, 2, 1, 0});
  check_partition(g, p);
  CHECK(p.region_of == oracle::voronoi(g, {0, 4}));
}

TEST_CASE("single generator owns everything") {
  std::mt19937_64 rng(1);
  const Graph g = oracle::random_connected(30, 20, rng);
  const Partition p = voronoi_partition(g, Placement({12}));
  CHECK(p.regions().size() == 1);
  CHECK(p.regions()[0].size() == 30);
  check_partition(g, p);
}

TEST_CASE("8x8 grid with generators at opposite corners") {
  const Graph g = gen_grid(8, 8);
  // Anti-diagonal nodes are tied; lowest-id inheritance sends all of them
  // to the same side, so the split is 36/28 rather than even.
  const Partition p = voronoi_partition(g, Placement({7, 56}));
  CHECK(p.regions()[0].size() == 36);
  CHECK(p.regions()[1].size() == 28);
  CHECK(p.region_of == oracle::voronoi(g, {7, 56}));
  check_partition(g, p);

  const Partition q = voronoi_partition(g, Placement({0, 63}));
  CHECK(q.regions()[0].size() == 36);
  CHECK(q.regions()[1].size() == 28);
  CHECK(q.region_of == oracle::voronoi(g, {0, 63}));
}

TEST_CASE("partition matches direct oracle on random integer graphs") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 30; ++rep) {
    const Graph g = oracle::random_connected(40, 50, rng, {.integer_dist = true});
    const std::vector<NodeId> gens{static_cast<NodeId>(rep % 15), static_cast<NodeId>(39 - rep % 7), 20};
    const Partition p = voronoi_partition(g, Placement(gens));
    CHECK(p.region_of == oracle::voronoi(g, gens));
    check_partition(g, p);
  }
}

TEST_CASE("seeded-uniform ties keep the partition valid and reproducible") {
  const Graph g = gen_grid(10, 10);
  const Placement gens({0, 99});
  const Partition a = voronoi_partition(g, gens, TieMode::seeded_uniform(5));
  const Partition b = voronoi_partition(g, gens, TieMode::seeded_uniform(5));
  CHECK(a.region_of == b.region_of);
  check_partition(g, a);
  bool any_difference = false;
  for (std::uint64_t seed = 0; seed < 20 && !any_difference; ++seed)
    any_difference = voronoi_partition(g, gens, TieMode::seeded_uniform(seed)).region_of != a.region_of;
  CHECK(any_difference);
  // Untied nodes are not affected by the mode.
  const auto direct = oracle::voronoi(g, {0, 99});
  for (NodeId v = 0; v < 100; ++v) {
    std::size_t ties = 0;
    for (std::size_t i = 0; i < 2; ++i) ties += a.dist_by_generator[i][v] == a.nearest_dist[v];
    if (ties == 1) CHECK(a.region_of[v] == direct[v]);
  }
}

TEST_CASE("tie mode names") {
  CHECK(to_string(TieMode::lowest_id()) == "lowest-id");
  CHECK(to_string(TieMode::seeded_uniform(3)) == "seeded-uniform");
  CHECK(parse_tie_mode("seeded-uniform", 4).seed == 4);
  CHECK_THROWS_AS(parse_tie_mode("random", 0), ArgumentError);
}

TEST_CASE("partition errors") {
  const std::vector<Edge> e{{0, 1, 1.0}};
  CHECK_THROWS_AS(voronoi_partition(Graph(3, e), Placement({0})), UnreachableError);
  CHECK_THROWS_AS(voronoi_partition(oracle::path(3), Placement({5})), ArgumentError);
}

TEST_CASE("centroidality") {
  const Graph g = oracle::path(5);
  CHECK(is_centroidal(g, Placement({1, 3})));
  CHECK_FALSE(is_centroidal(g, Placement({0, 4})));
  const Graph single(1, std::vector<Edge>{});
  CHECK(is_centroidal(single, Placement({0})));
}
