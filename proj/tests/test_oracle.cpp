#include <gtest/gtest.h>

#include <numeric>

#include "fixtures.hpp"
#include "hsge/errors.hpp"
#include "oracle/oracle.hpp"

namespace hsge {
namespace {

TEST(Oracle, ConnectedGraphCounts) {
  const auto u = oracle::enumerate_connected(6);
  const std::size_t expected[] = {1, 1, 3, 5, 12, 30};
  for (std::size_t m = 1; m <= 6; ++m) EXPECT_EQ(u.of_size(m).size(), expected[m - 1]) << m << " edges";
}

TEST(Oracle, RepresentativesPairwiseNonIsomorphic) {
  const auto u = oracle::enumerate_connected(5);
  for (std::size_t i = 0; i < u.classes.size(); ++i) {
    EXPECT_EQ(u.classes[i].representative.num_edges(), u.classes[i].edges);
    EXPECT_GT(u.classes[i].labelings, 0u);
    for (std::size_t j = i + 1; j < u.classes.size(); ++j)
      EXPECT_FALSE(oracle::is_isomorphic(u.classes[i].representative, u.classes[j].representative, false));
  }
}

TEST(Oracle, LabelingCounts) {
  // Labeled trees on n nodes: n^(n-2). Three edges: path (12) + star (4) = 16 = 4^2.
  const auto u = oracle::enumerate_connected(3);
  std::uint64_t trees = 0;
  for (auto i : u.of_size(3))
    if (u.classes[i].representative.num_nodes() == 4) trees += u.classes[i].labelings;
  EXPECT_EQ(trees, 16u);
}

TEST(Oracle, Isomorphism) {
  EXPECT_TRUE(oracle::is_isomorphic(fixtures::path(5), fixtures::relabel(fixtures::path(5), 3)));
  EXPECT_FALSE(oracle::is_isomorphic(fixtures::path(4), fixtures::star(3)));
  EXPECT_FALSE(oracle::is_isomorphic(fixtures::cycle(6), fixtures::two_triangles()));
  AttributedGraph a({Label::symbol("C"), Label::symbol("N")}, {{0, 1}});
  AttributedGraph b({Label::symbol("C"), Label::symbol("O")}, {{0, 1}});
  EXPECT_FALSE(oracle::is_isomorphic(a, b));
  EXPECT_TRUE(oracle::is_isomorphic(a, b, false));
  EXPECT_EQ(oracle::canonical_form(fixtures::cycle(5)), oracle::canonical_form(fixtures::relabel(fixtures::cycle(5), 1)));
  EXPECT_NE(oracle::canonical_form(fixtures::path(4)), oracle::canonical_form(fixtures::star(3)));
}

TEST(Oracle, WalkDistributionTrivialCases) {
  const auto edge = oracle::exact_walk_distribution(fixtures::path(2), 1);
  ASSERT_EQ(edge.size(), 1u);
  ASSERT_EQ(edge[0].size(), 1u);
  EXPECT_DOUBLE_EQ(edge[0].begin()->second, 1.0);
  const auto tri = oracle::exact_walk_distribution(fixtures::triangle(), 3);
  for (const auto& d : tri) {
    ASSERT_EQ(d.size(), 1u);
    EXPECT_NEAR(d.begin()->second, 1.0, 1e-12);
  }
  EXPECT_EQ(tri[2].begin()->first, oracle::canonical_form(fixtures::triangle()));
}

TEST(Oracle, WalkDistributionSumsToOne) {
  for (const auto& g : {fixtures::house_with_tail(), fixtures::ten_node(), fixtures::ladder_tail()}) {
    for (const auto& d : oracle::exact_walk_distribution(g, 4)) {
      double total = 0.0;
      for (const auto& [k, p] : d) total += p;
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Oracle, StarWalkFavoursTheStar) {
  // In a 3-star every 3-step walk covers all edges.
  const auto d = oracle::exact_walk_distribution(fixtures::star(3), 3);
  ASSERT_EQ(d[2].size(), 1u);
  EXPECT_EQ(d[2].begin()->first, oracle::canonical_form(fixtures::star(3)));
}

TEST(Oracle, SizeGuards) {
  EXPECT_THROW(oracle::enumerate_connected(7), ParameterError);
  EXPECT_THROW(oracle::exact_walk_distribution(fixtures::path(20), 3), ParameterError);
  EXPECT_THROW(oracle::canonical_form(fixtures::path(9)), ParameterError);
}

TEST(Oracle, NaiveBetweenness) {
  EXPECT_EQ(oracle::naive_node_betweenness(fixtures::star(3)), (std::vector<double>{3, 0, 0, 0}));
  EXPECT_EQ(oracle::naive_edge_betweenness(fixtures::path(3)), (std::vector<double>{2, 2}));
  const auto c = oracle::naive_node_betweenness(fixtures::cycle(4));
  for (auto v : c) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(Oracle, TwoMeansAndSeparator) {
  EXPECT_DOUBLE_EQ(oracle::best_two_means_cost({{0.0}, {1.0}, {10.0}, {11.0}}), 1.0);
  const std::vector<std::vector<double>> pts{{0, 0}, {1, 0}, {0, 1}, {5, 5}, {6, 5}, {5, 6}};
  EXPECT_DOUBLE_EQ(oracle::grid_separator_accuracy(pts, {0, 0, 0, 1, 1, 1}), 100.0);
}

TEST(Oracle, CollisionTables) {
  const auto u = oracle::enumerate_connected(6);
  const auto deg = oracle::degree_collisions(u, 6);
  const auto btw = oracle::betweenness_collisions(u, 6);
  ASSERT_EQ(deg.size(), 6u);
  for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(deg[t].colliding_pairs, 0u);
  EXPECT_GT(deg[4].colliding_pairs, 0u);  // degree sequences stop being unique at 5 edges
  EXPECT_GT(deg[4].conditional_rate, 0.0);
  EXPECT_EQ(btw[4].colliding_pairs, 0u);
  EXPECT_EQ(btw[5].colliding_pairs, 0u);
  EXPECT_EQ(btw[5].total_pairs, 30u * 29u / 2u);
}

}  // namespace
}  // namespace hsge
