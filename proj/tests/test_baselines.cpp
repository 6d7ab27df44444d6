#include <doctest.h>

#include <map>
#include <random>

#include "dcplace/baselines.hpp"
#include "dcplace/topology.hpp"
#include "oracles.hpp"

using namespace dcplace;

TEST_CASE("service distance matrix") {
  const Graph g = oracle::path(3).with_self_cost({0.5, 0, 0});
  const auto m = service_distance_matrix(g);
  CHECK(m[0] == std::vector<double>{0.5, 1, 2});
  CHECK(m[2][0] == 2.0);
}

TEST_CASE("greedy on P5") {
  const Graph g = oracle::path(5);
  const GreedyResult one = greedy_placement(g, 1);
  CHECK(one.placement == Placement({2}));
  CHECK(one.cost_after == std::vector<double>{6});
  const GreedyResult two = greedy_placement(g, 2);
  CHECK(two.placement[0] == 2);
  CHECK(two.cost_after.back() == 4.0);
  CHECK(oracle::optimal_cost(g, 2) == 3.0);
}

TEST_CASE("greedy matches an independent implementation") {
  const Graph grid = gen_grid(8, 8);
  const auto [sites, cost] = oracle::greedy(grid, 2);
  const GreedyResult r = greedy_placement(grid, 2);
  CHECK(r.cost_after.back() == cost);
  CHECK(std::vector<NodeId>(r.placement.sites().begin(), r.placement.sites().end()) == sites);

  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = oracle::random_connected(25, 20, rng, {.random_self_cost = rep % 2 == 0});
    const auto [s, c] = oracle::greedy(g, 3);
    CHECK(oracle::close(greedy_placement(g, 3).cost_after.back(), c));
  }
}

TEST_CASE("greedy errors") {
  CHECK_THROWS_AS(greedy_placement(oracle::path(3), 3), ArgumentError);
  CHECK_THROWS_AS(greedy_placement(oracle::path(3), 0), ArgumentError);
  const std::vector<Edge> e{{0, 1, 1.0}};
  CHECK_THROWS_AS(greedy_placement(Graph(3, e), 1), DisconnectedError);
}

TEST_CASE("brute force") {
  const OptimalResult p5 = brute_force_optimal(oracle::path(5), 2);
  // {v0,v3}, {v1,v3} and {v1,v4} all cost 3; the lexicographically smallest wins
  CHECK(p5.placement == Placement({0, 3}));
  CHECK(p5.cost == 3.0);
  CHECK(placement_cost(oracle::path(5), Placement({1, 3})) == 3.0);
  const OptimalResult star = brute_force_optimal(oracle::star(3), 1);
  CHECK(star.placement == Placement({0}));
  CHECK(star.cost == 3.0);
  CHECK_THROWS_AS(brute_force_optimal(gen_grid(10, 10), 10, 1000), TooLargeError);
  CHECK_THROWS_AS(brute_force_optimal(oracle::path(3), 3), ArgumentError);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = oracle::random_connected(10, 8, rng, {.random_self_cost = true});
    CHECK(oracle::close(brute_force_optimal(g, 2).cost, oracle::optimal_cost(g, 2)));
    // k = n-1: only one node is left unserved by itself
    const auto d = oracle::floyd_warshall(g);
    double expected = kInfinity;
    for (NodeId out = 0; out < 10; ++out) {
      std::vector<NodeId> sites;
      for (NodeId v = 0; v < 10; ++v)
        if (v != out) sites.push_back(v);
      expected = std::min(expected, oracle::cost(g, d, sites));
    }
    CHECK(oracle::close(brute_force_optimal(g, 9).cost, expected));
  }
}

TEST_CASE("random placement") {
  const Graph g = oracle::path(10);
  CHECK(random_placement(g, 3, 5) == random_placement(g, 3, 5));
  const Placement p = random_placement(g, 4, 11);
  CHECK(std::is_sorted(p.sites().begin(), p.sites().end()));
  CHECK_THROWS_AS(random_placement(g, 10, 1), ArgumentError);

  std::map<NodeId, int> hits;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) ++hits[random_placement(g, 1, seed)[0]];
  for (NodeId v = 0; v < 10; ++v) CHECK(hits[v] / 10000.0 == doctest::Approx(0.1).epsilon(0.2));
}
