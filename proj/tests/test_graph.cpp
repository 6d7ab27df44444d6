#include <doctest.h>

#include <random>

#include "dcplace/graph.hpp"
#include "oracles.hpp"

using namespace dcplace;

TEST_CASE("graph construction rejects malformed input") {
  const std::vector<Edge> loop{{0, 0, 1.0}};
  CHECK_THROWS_AS(Graph(2, loop), ArgumentError);
  const std::vector<Edge> dup{{0, 1, 1.0}, {1, 0, 1.0}};
  CHECK_THROWS_AS(Graph(2, dup), ArgumentError);
  const std::vector<Edge> zero{{0, 1, 0.0}};
  CHECK_THROWS_AS(Graph(2, zero), ArgumentError);
  const std::vector<Edge> negative{{0, 1, -2.0}};
  CHECK_THROWS_AS(Graph(2, negative), ArgumentError);
  const std::vector<Edge> nan{{0, 1, std::nan("")}};
  CHECK_THROWS_AS(Graph(2, nan), ArgumentError);
  const std::vector<Edge> range{{0, 5, 1.0}};
  CHECK_THROWS_AS(Graph(2, range), ArgumentError);
  const std::vector<Edge> ok{{0, 1, 1.0}};
  CHECK_THROWS_AS(Graph(2, ok, {1.0, -1.0}), ArgumentError);
  CHECK_THROWS_AS(Graph(2, ok, {1.0}), ArgumentError);
  CHECK_THROWS_AS(Graph(2, ok, {}, {0.0, -0.5}), ArgumentError);
}

TEST_CASE("graph accessors") {
  const std::vector<Edge> edges{{2, 0, 3.0}, {0, 1, 1.5}};
  const Graph g(4, edges, {1, 2, 3, 4});
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.total_demand() == 10.0);
  CHECK(g.edge_distance(0, 2) == 3.0);
  CHECK(g.edge_distance(2, 0) == 3.0);
  CHECK_FALSE(g.edge_distance(1, 2));
  REQUIRE(g.neighbors(0).size() == 2);
  CHECK(g.neighbors(0)[0].id == 1);
  CHECK(g.neighbors(0)[1].id == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 1, 1.5}, {0, 2, 3.0}});
  CHECK_FALSE(g.is_connected());
  CHECK(oracle::path(5).is_tree());
  CHECK(g.with_demand({5, 5, 5, 5}).total_demand() == 20.0);
  CHECK(g.with_self_cost({1, 0, 0, 0}).self_cost(0) == 1.0);
}

TEST_CASE("placement validation") {
  CHECK_THROWS_AS(Placement(std::vector<NodeId>{}), ArgumentError);
  CHECK_THROWS_AS(Placement({1, 1}), ArgumentError);
  const Graph g = oracle::path(3);
  CHECK_THROWS_AS(Placement({7}).check_against(g), ArgumentError);
  CHECK_THROWS_AS(Placement({0, 1, 2}).check_k_median(g), ArgumentError);
  CHECK_NOTHROW(Placement({0, 2}).check_k_median(g));
}

TEST_CASE("shortest distances on P5") {
  const Graph g = oracle::path(5);
  const DistanceField f = shortest_distances(g, 0);
  CHECK(f.dist == std::vector<double>{0, 1, 2, 3, 4});
  CHECK_FALSE(f.parent[0]);
  CHECK(f.parent[4] == NodeId{3});
  CHECK_THROWS_AS(shortest_distances(g, 9), ArgumentError);
}

TEST_CASE("shortest distances leave unreachable nodes infinite") {
  const std::vector<Edge> edges{{0, 1, 1.0}};
  const DistanceField f = shortest_distances(Graph(3, edges), 0);
  CHECK(f.dist[2] == kInfinity);
  CHECK_FALSE(f.parent[2]);
}

TEST_CASE("shortest distances prefer the lowest-id predecessor") {
  // 0-1-3 and 0-2-3 both have length 2
  const std::vector<Edge> edges{{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}};
  CHECK(shortest_distances(Graph(4, edges), 0).parent[3] == NodeId{1});
}

TEST_CASE("shortest distances match all-pairs oracle on random graphs") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = oracle::random_connected(50, 80, rng);
    const auto all = oracle::floyd_warshall(g);
    for (NodeId s : {0u, 17u, 49u}) {
      const DistanceField f = shortest_distances(g, s);
      for (NodeId v = 0; v < 50; ++v) {
        CHECK(oracle::close(f.dist[v], all[s][v]));
        if (v != s) {
          REQUIRE(f.parent[v]);
          CHECK(oracle::close(f.dist[*f.parent[v]] + *g.edge_distance(*f.parent[v], v), f.dist[v]));
        }
      }
    }
  }
}

TEST_CASE("serving assignment") {
  const Graph g = oracle::path(5);
  CHECK(serving_assignment(g, Placement({0, 4})) == std::vector<NodeId>{0, 0, 0, 4, 4});
  CHECK(serving_assignment(g, Placement({4, 0})) == std::vector<NodeId>{0, 0, 0, 4, 4});
  CHECK(serving_assignment(g, Placement({0, 1, 2, 3, 4})) == std::vector<NodeId>{0, 1, 2, 3, 4});
}

TEST_CASE("serving assignment matches exhaustive scan") {
  std::mt19937_64 rng(5);
  const Graph g = oracle::random_connected(30, 40, rng, {.integer_dist = true});
  const auto d = oracle::floyd_warshall(g);
  const std::vector<NodeId> sites{3, 14, 27};
  const auto served = serving_assignment(g, Placement(sites));
  for (NodeId v = 0; v < 30; ++v) {
    NodeId best = sites[0];
    for (NodeId s : sites)
      if (oracle::service(g, d, s, v) < oracle::service(g, d, best, v) ||
          (oracle::service(g, d, s, v) == oracle::service(g, d, best, v) && s < best))
        best = s;
    CHECK(served[v] == best);
  }
}

TEST_CASE("placement cost") {
  const Graph g = oracle::path(5);
  CHECK(placement_cost(g, Placement({2})) == 6.0);
  CHECK(placement_cost(g, Placement({1, 3})) == 3.0);
  const Graph single(1, std::vector<Edge>{});
  CHECK(placement_cost(single, Placement({0})) == 0.0);
  const Graph costly = g.with_self_cost({0, 0, 5, 0, 0});
  // v2 is charged its self-cost 5 rather than 0
  CHECK(placement_cost(costly, Placement({2})) == 11.0);
  const std::vector<Edge> edges{{0, 1, 1.0}};
  CHECK_THROWS_AS(placement_cost(Graph(3, edges), Placement({0})), UnreachableError);
}

TEST_CASE("placement cost matches oracle with self-costs") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = oracle::random_connected(25, 30, rng, {.random_self_cost = true});
    const auto d = oracle::floyd_warshall(g);
    const std::vector<NodeId> sites{0, 9, 21};
    CHECK(oracle::close(placement_cost(g, Placement(sites)), oracle::cost(g, d, sites)));
  }
}

TEST_CASE("exact cost center") {
  const Graph g = oracle::path(5);
  CHECK(cost_center_exact(g, std::vector<NodeId>{0, 1, 2}) == 1);
  CHECK(cost_center_exact(g, std::vector<NodeId>{3}) == 3);
  CHECK(cost_center_exact(g, std::vector<NodeId>{3, 4}) == 3);
  CHECK(region_cost(g, std::vector<NodeId>{0, 1, 2}, 0) == 3.0);
  CHECK_THROWS_AS(cost_center_exact(g, std::vector<NodeId>{0, 2}), DisconnectedError);
  CHECK_THROWS_AS(cost_center_exact(g, std::vector<NodeId>{}), ArgumentError);
}

TEST_CASE("exact cost center uses induced distances") {
  // Ring 0-1-2-3-4-0; region {0,1,2,3} cannot use the shortcut through 4.
  const std::vector<Edge> ring{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {0, 4, 1}};
  const Graph g(5, ring, {1, 1, 1, 1, 1});
  CHECK(region_cost(g, std::vector<NodeId>{0, 1, 2, 3}, 0) == 6.0);
}

TEST_CASE("exact cost center matches per-node scan") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = oracle::random_connected(12, 10, rng, {.random_self_cost = rep % 2 == 1});
    std::vector<NodeId> all(12);
    std::iota(all.begin(), all.end(), NodeId{0});
    CHECK(cost_center_exact(g, all) == oracle::region_center(g, all));
  }
}
