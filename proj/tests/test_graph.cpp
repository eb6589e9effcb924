#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hsge/errors.hpp"
#include "hsge/hierarchy.hpp"

namespace hsge {
namespace {

using fixtures::from_pairs;

TEST(AttributedGraph, CanonicalizesAndDeduplicates) {
  std::vector<Label> nodes{Label::symbol("C"), Label::symbol("N"), Label::symbol("O")};
  AttributedGraph g(nodes, {{2, 1}, {0, 1}, {1, 2}}, {Label::symbol("a"), Label::symbol("b"), Label::symbol("c")});
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edge(0).u, 0u);
  EXPECT_EQ(g.edge(0).v, 1u);
  EXPECT_EQ(g.edge_label(1), Label::symbol("a"));  // first occurrence wins
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_TRUE(g.find_edge(2, 1).has_value());
  EXPECT_FALSE(g.find_edge(0, 2).has_value());
}

TEST(AttributedGraph, RejectsBadInput) {
  EXPECT_THROW(AttributedGraph(2, std::vector<Edge>{{0, 2}}), ReferenceError);
  EXPECT_THROW(AttributedGraph(2, std::vector<Edge>{{1, 1}}), ParameterError);
  EXPECT_THROW(AttributedGraph(std::vector<Label>(2), {{0, 1}}, std::vector<Label>(2)), ParameterError);
}

TEST(InducedGraphlet, SingleEdge) {
  const auto g = fixtures::path(3);
  const std::vector<Edge> e{{0, 1}};
  const auto gl = induced_graphlet(g, e);
  EXPECT_EQ(gl.size(), 1u);
  EXPECT_EQ(std::vector<NodeId>(gl.nodes().begin(), gl.nodes().end()), (std::vector<NodeId>{0, 1}));
}

TEST(InducedGraphlet, PathOfTwo) {
  const auto g = fixtures::path(3);
  const std::vector<Edge> e{{1, 2}, {0, 1}};
  const auto gl = induced_graphlet(g, e);
  EXPECT_EQ(gl.size(), 2u);
  EXPECT_EQ(gl.nodes().size(), 3u);
  EXPECT_EQ(gl.edges()[0], 0u);  // sorted
}

TEST(InducedGraphlet, Errors) {
  const auto g = fixtures::path(4);
  const std::vector<Edge> disjoint{{0, 1}, {2, 3}};
  EXPECT_THROW(induced_graphlet(g, disjoint), InvalidGraphletError);
  const std::vector<Edge> missing{{0, 2}};
  EXPECT_THROW(induced_graphlet(g, missing), ReferenceError);
  EXPECT_THROW(induced_graphlet(g, {}), InvalidGraphletError);
}

TEST(InducedGraphlet, InheritsLabels) {
  const auto g = fixtures::random_graph(9, 0.5, 3, {"C", "N", "O"});
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const std::vector<Edge> one{g.edge(e)};
    const auto gl = induced_graphlet(g, one);
    for (auto u : gl.nodes()) EXPECT_EQ(gl.node_label(u), g.node_label(u));
    EXPECT_EQ(gl.edge_label(gl.edges()[0]), g.edge_label(e));
    const auto m = gl.materialize();
    EXPECT_EQ(m.node_label(0), g.node_label(g.edge(e).u));
    EXPECT_EQ(m.edge_label(0), g.edge_label(e));
  }
}

HierarchicalGraph six_node_hierarchy() {
  HierarchicalGraph h(fixtures::two_triangles());
  // three clusters {0,1} {2,3} {4,5}
  h.push_level(fixtures::path(3), {0, 0, 1, 1, 2, 2});
  return h;
}

TEST(LevelSlice, BaseLevelIsInput) {
  const auto h = six_node_hierarchy();
  EXPECT_EQ(level_slice(h, 0, 0), fixtures::two_triangles());
}

TEST(LevelSlice, SixNodeThreeClusters) {
  const auto h = six_node_hierarchy();
  const auto s = level_slice(h, 0, 1);
  EXPECT_EQ(s.num_nodes(), 9u);
  EXPECT_EQ(s.num_edges(), 7u + 2u + 6u);
  std::size_t hier = 0;
  for (const auto& l : s.edge_labels()) hier += l == hierarchical_edge_label();
  EXPECT_EQ(hier, 6u);
  // node 0 at level 1 sits at offset 6 and links to base nodes 0 and 1
  EXPECT_TRUE(s.find_edge(0, 6).has_value());
  EXPECT_TRUE(s.find_edge(1, 6).has_value());
  EXPECT_FALSE(s.find_edge(2, 6).has_value());
}

TEST(LevelSlice, FullRangeAndUnion) {
  const auto h = six_node_hierarchy();
  const auto u = level_union(h, 0, 1);
  EXPECT_EQ(u.num_nodes(), 9u);
  EXPECT_EQ(u.num_edges(), 9u);
  EXPECT_LT(u.num_edges(), level_slice(h, 0, 1).num_edges());
  EXPECT_EQ(level_union(h, 1, 1), h.level(1));
  EXPECT_EQ(level_slice(h, 1, 1), level_union(h, 1, 1));
}

TEST(LevelSlice, RangeErrors) {
  const auto h = six_node_hierarchy();
  EXPECT_THROW(level_slice(h, 0, 2), RangeError);
  EXPECT_THROW(level_union(h, 1, 0), RangeError);
  EXPECT_THROW(h.level(5), RangeError);
}

TEST(HierarchicalGraph, PushLevelValidates) {
  HierarchicalGraph h(fixtures::path(3));
  EXPECT_THROW(h.push_level(fixtures::path(2), {0, 1}), ParameterError);     // wrong parent count
  EXPECT_THROW(h.push_level(fixtures::path(2), {0, 5, 1}), ReferenceError);  // parent out of range
  EXPECT_THROW(h.push_level(fixtures::path(4), {0, 1, 2}), ParameterError);  // level grows
  h.push_level(fixtures::path(2), {0, 0, 1});
  EXPECT_EQ(h.hierarchical_edges(0).size(), 3u);
}

TEST(ConnectedComponents, MaskAndOrder) {
  const auto g = fixtures::two_triangles();
  EXPECT_EQ(connected_components(g).count, 1u);
  std::vector<std::uint8_t> active(g.num_edges(), 1);
  active[*g.find_edge(2, 3)] = 0;
  const auto c = connected_components(g, active);
  EXPECT_EQ(c.count, 2u);
  EXPECT_EQ(c.component_of[0], 0u);
  EXPECT_EQ(c.component_of[5], 1u);
}

TEST(LevelSlice, RoundTripOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = fixtures::random_graph(12, 0.3, seed, {"A", "B"});
    const auto h = build_hierarchy(g, {});
    EXPECT_EQ(level_slice(h, 0, 0), g);
    for (std::size_t l = 0; l < h.num_levels(); ++l) EXPECT_EQ(level_slice(h, l, l), level_union(h, l, l));
  }
}

}  // namespace
}  // namespace hsge
