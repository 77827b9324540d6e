#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "qroute/encode.hpp"
#include "qroute/harness.hpp"
#include "qroute/oracle.hpp"
#include "test_support.hpp"

using namespace qroute;
using namespace qroute::oracle;

namespace {

// Bellman-Ford style relaxation, independent of the library's Dijkstra.
double relaxation_distance(const WeightedGraph& g, int s, int d) {
  const int n = g.n_nodes();
  std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  dist[static_cast<std::size_t>(s)] = 0.0;
  for (int round = 0; round < n; ++round)
    for (const auto& e : g.edges()) {
      auto& du = dist[static_cast<std::size_t>(e.u)];
      auto& dv = dist[static_cast<std::size_t>(e.v)];
      du = std::min(du, dv + e.w);
      dv = std::min(dv, du + e.w);
    }
  return dist[static_cast<std::size_t>(d)];
}

}  // namespace

TEST(Dijkstra, ScenarioBShortestPath) {
  const auto r = dijkstra(harness::scenario_b_graph(), 0, 3);
  EXPECT_EQ(r.path, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_DOUBLE_EQ(r.cost, 11.0);
}

TEST(Dijkstra, SingleEdge) {
  const auto r = dijkstra(WeightedGraph(2, {{0, 1, 5}}), 0, 1);
  EXPECT_EQ(r.path, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(r.cost, 5.0);
}

TEST(Dijkstra, TiesBreakToLexicographicallySmallestPath) {
  // Square 0-1-3 and 0-2-3 with equal cost.
  const WeightedGraph g(4, {{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}});
  EXPECT_EQ(dijkstra(g, 0, 3).path, (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(dijkstra(g, 3, 0).path, (std::vector<int>{3, 1, 0}));
}

TEST(Dijkstra, UnreachableThrows) {
  EXPECT_THROW(dijkstra(WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}}), 0, 3), Unreachable);
}

TEST(Dijkstra, AgreesWithEnumerationOnRandomGraphs) {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const auto g = ref::random_connected_graph(n, 0.35, 10, rng);
    const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (d >= s) ++d;
    const auto best = dijkstra(g, s, d);
    const auto all = enumerate_simple_paths(g, s, d);
    ASSERT_FALSE(all.empty());
    double min_cost = std::numeric_limits<double>::infinity();
    for (const auto& p : all) min_cost = std::min(min_cost, p.cost);
    EXPECT_EQ(best.cost, min_cost) << "trial " << trial;
    EXPECT_EQ(best.cost, relaxation_distance(g, s, d));
    EXPECT_EQ(path_cost(g, best.path), best.cost);
    EXPECT_EQ(best.path.front(), s);
    EXPECT_EQ(best.path.back(), d);
  }
}

TEST(SimplePaths, ScenarioBHasFourRoutes) {
  const auto paths = enumerate_simple_paths(harness::scenario_b_graph(), 0, 3);
  ASSERT_EQ(paths.size(), 4u);
  double max_cost = 0.0;
  std::vector<int> longest;
  for (const auto& p : paths) {
    if (p.cost > max_cost) {
      max_cost = p.cost;
      longest = p.path;
    }
  }
  EXPECT_DOUBLE_EQ(max_cost, 20.0);
  EXPECT_EQ(longest, (std::vector<int>{0, 2, 1, 3}));
  std::vector<double> costs;
  for (const auto& p : paths) costs.push_back(p.cost);
  std::sort(costs.begin(), costs.end());
  EXPECT_EQ(costs, (std::vector<double>{11, 12, 13, 20}));
}

TEST(SimplePaths, SingleEdgeHasOneRoute) {
  EXPECT_EQ(enumerate_simple_paths(WeightedGraph(2, {{0, 1, 2}}), 0, 1).size(), 1u);
}

TEST(SimplePaths, DisconnectedPairHasNone) {
  EXPECT_TRUE(enumerate_simple_paths(WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}}), 0, 2).empty());
}

TEST(SimplePaths, SizeCap) {
  WeightedGraph g(11);
  g.add_edge(0, 1, 1);
  EXPECT_THROW(enumerate_simple_paths(g, 0, 1), SizeCapExceeded);
}

TEST(IsingMin, SingleField) {
  encode::IsingHamiltonian h(1);
  h.set_h(0, 1.0);
  const auto r = brute_force_ising_min(h);
  EXPECT_DOUBLE_EQ(r.optimum, -1.0);
  EXPECT_EQ(r.argmin, (std::vector<qsim::BasisIndex>{1}));
  EXPECT_EQ(r.enumeration_size, 2u);
}

TEST(IsingMin, TriangleMaxCutHasSixGroundStates) {
  const auto h = encode::build_maxcut_hamiltonian(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
  const auto r = brute_force_ising_min(h);
  EXPECT_DOUBLE_EQ(r.optimum, -2.0);
  EXPECT_EQ(r.argmin.size(), 6u);
  for (auto b : r.argmin) EXPECT_DOUBLE_EQ(h.energy(b), r.optimum);
}

TEST(IsingMin, ScenarioBGroundStateIsTheOptimalPath) {
  const auto g = harness::scenario_b_graph();
  const auto h = encode::qubo_to_ising(encode::build_shortest_path_qubo(g, 0, 3, encode::penalty_coefficient(g, 0, 3)));
  const auto r = brute_force_ising_min(h);
  EXPECT_EQ(r.enumeration_size, 65536u);
  ASSERT_EQ(r.argmin.size(), 1u);
  const auto a = encode::decode_bitstring_to_path(r.argmin[0], 4, g, 0, 3);
  EXPECT_TRUE(a.valid);
  EXPECT_EQ(a.nodes, dijkstra(g, 0, 3).path);
  EXPECT_NEAR(r.optimum, dijkstra(g, 0, 3).cost, 1e-9);
}

TEST(IsingMin, MatchesQuboMinimumOnRandomInstances) {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 4 + static_cast<int>(rng.below(9));
    encode::QuboMatrix q(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) q.add_quadratic(i, j, static_cast<double>(rng.uniform_int(-5, 5)));
    EXPECT_NEAR(brute_force_ising_min(encode::qubo_to_ising(q)).optimum, brute_force_qubo_min(q).optimum, 1e-9);
  }
}

TEST(IsingMin, SizeCap) { EXPECT_THROW(brute_force_ising_min(encode::IsingHamiltonian(21)), SizeCapExceeded); }

TEST(MaxCutOracle, SingleEdgeAndTriangle) {
  EXPECT_DOUBLE_EQ(brute_force_maxcut(WeightedGraph(2, {{0, 1, 1}})).optimum, 1.0);
  EXPECT_DOUBLE_EQ(brute_force_maxcut(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})).optimum, 2.0);
}

TEST(MaxCutOracle, ScenarioAOptimum) {
  const auto g = harness::scenario_a_graph();
  EXPECT_EQ(g.n_nodes(), 5);
  EXPECT_EQ(g.edge_count(), 7u);
  const auto r = brute_force_maxcut(g);
  EXPECT_DOUBLE_EQ(r.optimum, 6.0);
  // 0,1 and 4 against 2,3 (and its complement) are the only six-edge cuts.
  EXPECT_EQ(r.argmin, (std::vector<qsim::BasisIndex>{0b00110, 0b11001}));
}

TEST(MaxCutOracle, GroundEnergyIsMinusOptimumOnRandomGraphs) {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const auto g = ref::random_connected_graph(n, 0.4, 1, rng);
    EXPECT_EQ(brute_force_ising_min(encode::build_maxcut_hamiltonian(g)).optimum, -brute_force_maxcut(g).optimum);
  }
}

TEST(PathCost, MissingHopThrows) {
  EXPECT_THROW(path_cost(harness::scenario_b_graph(), {0, 3}), GraphError);
  EXPECT_DOUBLE_EQ(path_cost(harness::scenario_b_graph(), {0, 2, 1, 3}), 20.0);
}
