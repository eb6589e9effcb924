#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "hsge/errors.hpp"
#include "hsge/hashing.hpp"
#include "oracle/oracle.hpp"

namespace hsge {
namespace {

using oracle::whole_graphlet;

std::vector<std::int64_t> ints(std::initializer_list<std::int64_t> v) { return v; }

TEST(DegreeHash, Examples) {
  const auto tri = fixtures::triangle();
  EXPECT_EQ(degree_hash(whole_graphlet(tri)).topology, ints({2, 2, 2}));
  const auto p = fixtures::path(3);
  EXPECT_EQ(degree_hash(whole_graphlet(p)).topology, ints({1, 1, 2}));
  const auto s = fixtures::star(3);
  EXPECT_EQ(degree_hash(whole_graphlet(s)).topology, ints({1, 1, 1, 3}));
}

TEST(BetweennessHash, Examples) {
  const auto tri = fixtures::triangle();
  EXPECT_EQ(betweenness_hash(whole_graphlet(tri)).topology_values(), (std::vector<double>{0, 0, 0}));
  const auto p = fixtures::path(3);
  EXPECT_EQ(betweenness_hash(whole_graphlet(p)).topology_values(), (std::vector<double>{0, 0, 1}));
  const auto c = fixtures::cycle(4);
  EXPECT_EQ(betweenness_hash(whole_graphlet(c)).topology_values(), (std::vector<double>{0.5, 0.5, 0.5, 0.5}));
}

TEST(BetweennessHash, SerializesSixDecimals) {
  const auto c = fixtures::cycle(4);
  EXPECT_EQ(betweenness_hash(whole_graphlet(c)).serialize(), "btw:0.500000,0.500000,0.500000,0.500000");
  EXPECT_EQ(betweenness_hash(whole_graphlet(c)).topology.front(), kBetweennessScale / 2);
}

TEST(GraphletCode, UnlabeledTriangle) {
  const auto tri = fixtures::triangle();
  const auto code = graphlet_code(whole_graphlet(tri), false);
  EXPECT_EQ(code.kind, TopologyKind::kDegree);
  EXPECT_EQ(code.topology, ints({2, 2, 2}));
  EXPECT_TRUE(code.attributes.empty());
}

TEST(GraphletCode, LabeledEdge) {
  AttributedGraph g({Label::symbol("N"), Label::symbol("C")}, {{0, 1}}, {Label::symbol("1")});
  const auto code = graphlet_code(whole_graphlet(g), true);
  EXPECT_EQ(code.topology, ints({1, 1}));
  EXPECT_EQ(code.attributes, (std::vector<std::string>{"C", "N", "1"}));
}

TEST(GraphletCode, FiveEdgesUseBetweenness) {
  const auto g = fixtures::path(6);
  EXPECT_EQ(graphlet_code(whole_graphlet(g), false).kind, TopologyKind::kBetweenness);
  const auto four = fixtures::path(5);
  EXPECT_EQ(graphlet_code(whole_graphlet(four), false).kind, TopologyKind::kDegree);
}

TEST(GraphletCode, ContinuousAttributesNeedDiscretization) {
  AttributedGraph g({Label{{}, {0.5}}, Label{{}, {1.5}}}, {{0, 1}});
  EXPECT_THROW(graphlet_code(whole_graphlet(g), true), StateError);
  EXPECT_NO_THROW(graphlet_code(whole_graphlet(g), false));
}

TEST(GraphletCode, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = fixtures::random_connected(3 + seed % 5, seed % 4, seed);
    const auto h = fixtures::relabel(g, seed + 100);
    EXPECT_EQ(graphlet_code(whole_graphlet(g), false), graphlet_code(whole_graphlet(h), false));
    EXPECT_EQ(betweenness_hash(whole_graphlet(g)), betweenness_hash(whole_graphlet(h)));
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = fixtures::random_graph(6, 0.6, seed, {"C", "N", "O"});
    if (connected_components(g).count != 1 || g.num_edges() == 0) continue;
    const auto h = fixtures::relabel(g, seed + 7);
    EXPECT_EQ(graphlet_code(whole_graphlet(g), true), graphlet_code(whole_graphlet(h), true));
  }
}

TEST(HashCode, SerializeRoundTrip) {
  AttributedGraph g({Label::symbol("C,x"), Label::symbol("N|y"), Label::symbol("%")}, {{0, 1}, {1, 2}},
                    {Label::symbol("1"), Label::symbol("2")});
  const auto code = graphlet_code(whole_graphlet(g), true);
  EXPECT_EQ(HashCode::parse(code.serialize()), code);
  const auto btw = betweenness_hash(whole_graphlet(fixtures::cycle(5)));
  EXPECT_EQ(HashCode::parse(btw.serialize()), btw);
  EXPECT_EQ(degree_hash(whole_graphlet(fixtures::path(3))).serialize(), "deg:1,1,2");
  EXPECT_THROW(HashCode::parse("xyz:1"), ParseError);
  EXPECT_THROW(HashCode::parse("deg:1,a"), ParseError);
}

TEST(Vocabulary, FinalizeSortsCodes) {
  GraphletVocabulary v;
  const auto a = degree_hash(whole_graphlet(fixtures::star(3)));
  const auto b = degree_hash(whole_graphlet(fixtures::path(4)));
  EXPECT_EQ(v.insert(3, b), 0u);
  EXPECT_EQ(v.insert(3, a), 1u);
  EXPECT_EQ(v.insert(3, b), 0u);
  v.finalize();
  EXPECT_EQ(*v.bin(3, a), 0u);
  EXPECT_EQ(*v.bin(3, b), 1u);
  EXPECT_THROW(v.insert(3, a), StateError);
  EXPECT_FALSE(v.bin(1, a).has_value());
}

TEST(Vocabulary, OrderIndependent) {
  GraphletVocabulary x, y;
  std::vector<HashCode> codes;
  for (std::size_t n = 2; n < 8; ++n) codes.push_back(degree_hash(whole_graphlet(fixtures::path(n))));
  for (const auto& c : codes) x.insert(2, c);
  for (auto it = codes.rbegin(); it != codes.rend(); ++it) y.insert(2, *it);
  x.finalize();
  y.finalize();
  EXPECT_EQ(x, y);
}

TEST(AccumulateHistogram, SingleEdgeGraph) {
  const auto g = fixtures::path(2);
  const auto s = sample_graphlets(g, {.restarts = 100, .max_edges = 1});
  GraphletVocabulary v;
  const auto h = accumulate_histogram(s.graphlets, v, false);
  EXPECT_EQ(v.bin_count(1), 1u);
  EXPECT_EQ(h.counts[0], (std::vector<std::uint64_t>{100, 0}));
}

TEST(AccumulateHistogram, TrianglePathsShareOneBin) {
  const auto g = fixtures::triangle();
  const auto s = sample_graphlets(g, {.restarts = 50, .max_edges = 2});
  GraphletVocabulary v;
  const auto h = accumulate_histogram(s.graphlets, v, false);
  EXPECT_EQ(v.bin_count(2), 1u);
  EXPECT_EQ(h.total(2), 50u);
}

TEST(AccumulateHistogram, UnknownCodesOverflowOnceFinalized) {
  GraphletVocabulary v;
  const auto p = fixtures::path(4);
  (void)accumulate_histogram(sample_graphlets(p, {.restarts = 20, .max_edges = 3}).graphlets, v, false);
  v.finalize();
  const auto s = fixtures::star(3);
  const auto h = accumulate_histogram(sample_graphlets(s, {.restarts = 20, .max_edges = 3}).graphlets, v, false);
  EXPECT_EQ(h.overflow(3), 20u);  // star-3 never appears in a path
  EXPECT_EQ(h.total(3), 20u);
}

TEST(AccumulateHistogram, MassEqualsEmittedGraphlets) {
  const auto g = fixtures::random_connected(15, 8, 3);
  const auto s = sample_graphlets(g, {.restarts = 500, .max_edges = 5, .seed = 3});
  GraphletVocabulary v;
  const auto h = accumulate_histogram(s.graphlets, v, false);
  std::vector<std::uint64_t> emitted(5, 0);
  for (const auto& gl : s.graphlets) ++emitted[gl.size() - 1];
  for (std::size_t t = 1; t <= 5; ++t) EXPECT_EQ(h.total(t), emitted[t - 1]);
}

TEST(AccumulateHistogram, DegreeTwinsAtFiveEdgesGetDistinctBins) {
  // Find a pair of non-isomorphic 5-edge graphs with equal degree sequences.
  const auto u = oracle::enumerate_connected(5);
  const auto ids = u.of_size(5);
  bool found = false;
  for (std::size_t i = 0; i < ids.size() && !found; ++i)
    for (std::size_t j = i + 1; j < ids.size() && !found; ++j) {
      const auto& a = u.classes[ids[i]].representative;
      const auto& b = u.classes[ids[j]].representative;
      if (degree_hash(whole_graphlet(a)) != degree_hash(whole_graphlet(b))) continue;
      ASSERT_FALSE(oracle::is_isomorphic(a, b));
      found = true;
      GraphletVocabulary v;
      const std::vector<Graphlet> pair{whole_graphlet(a), whole_graphlet(b)};
      const auto h = accumulate_histogram(pair, v, false);
      EXPECT_EQ(v.bin_count(5), 2u);
      EXPECT_EQ(h.counts[4][0], 1u);
      EXPECT_EQ(h.counts[4][1], 1u);
    }
  EXPECT_TRUE(found);
}

TEST(CollisionAudit, DegreeHashExactUpToFourEdges) {
  const auto u = oracle::enumerate_connected(4);
  for (const auto& row : oracle::degree_collisions(u, 4)) {
    EXPECT_EQ(row.colliding_pairs, 0u) << row.edges << " edges";
    EXPECT_EQ(row.bins, row.classes);
  }
}

TEST(KMeans, MatchesBruteForceTwoMeans) {
  std::vector<std::vector<double>> pts{{0, 0}, {0.3, 0.1}, {0.1, 0.4}, {0.2, 0.2}, {5, 5},
                                       {5.2, 4.9}, {4.8, 5.1}, {5.1, 5.3}, {4.9, 4.7}, {0.4, 0.0}};
  const auto km = kmeans(pts, 2, 1);
  double cost = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double d = pts[i][j] - km.centroids[km.assignment[i]][j];
      cost += d * d;
    }
  EXPECT_NEAR(cost, oracle::best_two_means_cost(pts), 1e-9);
}

TEST(Discretize, KOneGivesOneToken) {
  std::vector<AttributedGraph> ds{AttributedGraph({Label{{}, {0.0}}, Label{{}, {9.0}}}, {{0, 1}})};
  const auto r = discretize_attributes(ds, 1);
  EXPECT_EQ(r.graphs[0].node_label(0), r.graphs[0].node_label(1));
  EXPECT_FALSE(r.graphs[0].has_continuous_attributes());
}

TEST(Discretize, TwoCloudsTwoTokens) {
  std::vector<Label> nodes;
  for (double x : {0.0, 0.1, 0.2, 0.15, 0.05}) nodes.push_back(Label{{"A"}, {x, x}});
  for (double x : {8.0, 8.1, 7.9, 8.2, 7.8}) nodes.push_back(Label{{"A"}, {x, -x}});
  std::vector<AttributedGraph> ds{AttributedGraph(nodes, {{0, 5}})};
  const auto r = discretize_attributes(ds, 2, 3);
  const auto& g = r.graphs[0];
  for (NodeId i = 1; i < 5; ++i) EXPECT_EQ(g.node_label(i), g.node_label(0));
  for (NodeId i = 6; i < 10; ++i) EXPECT_EQ(g.node_label(i), g.node_label(5));
  EXPECT_NE(g.node_label(0), g.node_label(5));
  EXPECT_EQ(g.node_label(0).symbols.front(), "A");
}

TEST(Discretize, IdentityWithoutAttributes) {
  std::vector<AttributedGraph> ds{fixtures::random_graph(6, 0.5, 1, {"C", "O"})};
  const auto r = discretize_attributes(ds, 3);
  EXPECT_EQ(r.graphs[0], ds[0]);
}

TEST(Discretize, ReducesKWithWarning) {
  std::vector<AttributedGraph> ds{AttributedGraph({Label{{}, {1.0}}, Label{{}, {1.0}}, Label{{}, {2.0}}}, {})};
  const auto r = discretize_attributes(ds, 5);
  EXPECT_EQ(r.node_clusters, 2u);
  EXPECT_FALSE(r.warnings.empty());
}

}  // namespace
}  // namespace hsge
