#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "probconn/exact.hpp"
#include "probconn/graph.hpp"
#include "support/oracle.hpp"

namespace probconn {
namespace {

ProbGraph Path3() { return build_graph(3, {{0, 1, 0.9}, {1, 2, 0.8}}); }

TEST(BuildGraph, MinimalGraph) {
  const ProbGraph g = build_graph(2, {{0, 1, 0.5}});
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(BuildGraph, SortsAndOrientsEdges) {
  const ProbGraph g = build_graph(3, {{2, 1, 0.8}, {0, 1, 0.9}});
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edge(0), (Edge{0, 1, 0.9}));
  EXPECT_EQ(g.edge(1), (Edge{1, 2, 0.8}));
  EXPECT_EQ(g, Path3());
}

TEST(BuildGraph, RejectsInvalidInput) {
  EXPECT_THROW(build_graph(2, {{0, 0, 0.5}}), InvalidGraph);
  EXPECT_THROW(build_graph(2, {{0, 1, 1.5}}), InvalidGraph);
  EXPECT_THROW(build_graph(2, {{0, 1, -0.1}}), InvalidGraph);
  EXPECT_THROW(build_graph(2, {{0, 1, std::nan("")}}), InvalidGraph);
  EXPECT_THROW(build_graph(2, {{0, 1, 0.5}, {1, 0, 0.3}}), InvalidGraph);
  EXPECT_THROW(build_graph(2, {{0, 2, 0.5}}), InvalidGraph);
  EXPECT_THROW(build_graph(0, {}), InvalidGraph);
}

TEST(BuildGraph, KeepsZeroProbabilityEdges) {
  const ProbGraph g = build_graph(3, {{0, 1, 0.0}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.find_edge(1, 0), std::optional<std::size_t>{0});
  EXPECT_FALSE(g.find_edge(1, 2));
}

TEST(AdjacencyMatrix, Examples) {
  const auto a2 = adjacency_matrix(build_graph(2, {{0, 1, 0.5}}));
  EXPECT_EQ(a2(0, 0), 1.0);
  EXPECT_EQ(a2(0, 1), 0.5);
  EXPECT_EQ(a2(1, 0), 0.5);

  EXPECT_EQ(adjacency_matrix(build_graph(3, {})), AdjacencyMatrix::identity(3));

  const auto a3 = adjacency_matrix(Path3());
  const double expected[3][3] = {{1, 0.9, 0}, {0.9, 1, 0.8}, {0, 0.8, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a3(i, j), expected[i][j]);
}

TEST(AdjacencyMatrix, RoundTripsAndRejectsAsymmetry) {
  const ProbGraph g = Path3();
  EXPECT_EQ(graph_from_adjacency(adjacency_matrix(g)), g);
  Matrix m = adjacency_matrix(g);
  m(0, 1) = 0.7;
  EXPECT_THROW(graph_from_adjacency(m), InvalidGraph);
  Matrix d = adjacency_matrix(g);
  d(2, 2) = 0.5;
  EXPECT_THROW(graph_from_adjacency(d), InvalidGraph);
}

TEST(SupportComponents, Examples) {
  EXPECT_EQ(support_components(build_graph(4, {{0, 1, 0.5}, {2, 3, 0.7}})).blocks,
            (std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(support_components(Path3()).blocks, (std::vector<std::vector<Vertex>>{{0, 1, 2}}));
  EXPECT_EQ(support_components(build_graph(3, {{0, 1, 0.0}})).blocks,
            (std::vector<std::vector<Vertex>>{{0}, {1}, {2}}));
}

TEST(SupportComponents, BlocksOrderedBySmallestVertex) {
  const auto part = support_components(build_graph(5, {{3, 4, 0.2}, {0, 4, 0.1}, {1, 2, 0.9}}));
  EXPECT_EQ(part.blocks, (std::vector<std::vector<Vertex>>{{0, 3, 4}, {1, 2}}));
}

TEST(SupportComponents, PermutationInvariantAndMatchesPositiveQ) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const ProbGraph g = test::random_graph(rng, 2 + trial % 6, 10, 0.4);
    std::vector<Edge> shuffled = g.edges();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (Edge& e : shuffled)
      if (trial % 2) std::swap(e.i, e.j);
    const auto part = support_components(g);
    EXPECT_EQ(support_components(build_graph(g.vertex_count(), shuffled)), part);

    const auto block = part.block_index(g.vertex_count());
    const auto q = exact_connectivity(g);
    for (Vertex i = 0; i < g.vertex_count(); ++i)
      for (Vertex j = 0; j < g.vertex_count(); ++j)
        EXPECT_EQ(block[i] == block[j], q(i, j) > 0.0);
  }
}

TEST(ArticulationPoints, MatchesDeletionOracle) {
  EXPECT_EQ(articulation_points(Path3()), (std::vector<Vertex>{1}));
  EXPECT_TRUE(articulation_points(build_graph(3, {{0, 1, .5}, {1, 2, .5}, {0, 2, .5}})).empty());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const ProbGraph g = test::random_graph(rng, 1 + trial % 9, 14, 0.35);
    EXPECT_EQ(articulation_points(g), test::brute_force_cut_vertices(g));
  }
}

TEST(ArticulationPoints, IgnoresZeroProbabilityEdges) {
  const ProbGraph g = build_graph(3, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.0}});
  EXPECT_EQ(articulation_points(g), (std::vector<Vertex>{1}));
}

}  // namespace
}  // namespace probconn
