#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hsge/graph.hpp"
#include "hsge/rng.hpp"

namespace hsge::fixtures {

inline AttributedGraph from_pairs(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back(Edge::make(a, b));
  return AttributedGraph(n, edges);
}

inline AttributedGraph path(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return AttributedGraph(n, edges);
}

inline AttributedGraph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) edges.push_back(Edge::make(i, static_cast<NodeId>((i + 1) % n)));
  return AttributedGraph(n, edges);
}

inline AttributedGraph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return AttributedGraph(leaves + 1, edges);
}

inline AttributedGraph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j});
  return AttributedGraph(n, edges);
}

inline AttributedGraph triangle() { return cycle(3); }

/// Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline AttributedGraph two_triangles() {
  return from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

/// Six-node fixture used by the sampler checks.
inline AttributedGraph house_with_tail() {
  return from_pairs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}, {3, 5}});
}

/// Ten-node fixture: a 5-cycle with a chord and a pendant tree.
inline AttributedGraph ten_node() {
  return from_pairs(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {4, 5}, {5, 6}, {5, 7}, {7, 8}, {8, 9}, {9, 7}});
}

/// Eight-node fixture: two squares sharing an edge plus a path.
inline AttributedGraph ladder_tail() {
  return from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 4}, {4, 5}, {5, 2}, {5, 6}, {6, 7}});
}

/// Random graph on n nodes with edge probability p, labeled with symbols
/// from `alphabet` when non-empty.
inline AttributedGraph random_graph(std::size_t n, double p, std::uint64_t seed,
                                    const std::vector<std::string>& alphabet = {}) {
  Rng rng(seed);
  std::vector<Label> nodes(n);
  if (!alphabet.empty())
    for (auto& l : nodes) l = Label::symbol(alphabet[rng.below(alphabet.size())]);
  std::vector<Edge> edges;
  std::vector<Label> labels;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.uniform() < p) {
        edges.push_back({i, j});
        labels.push_back(alphabet.empty() ? Label{} : Label::symbol(std::to_string(rng.below(3))));
      }
  return AttributedGraph(std::move(nodes), std::move(edges), std::move(labels));
}

/// Random connected graph: a random spanning tree plus extra edges.
inline AttributedGraph random_connected(std::size_t n, std::size_t extra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId i = 1; i < n; ++i) edges.push_back(Edge::make(i, static_cast<NodeId>(rng.below(i))));
  for (std::size_t k = 0; k < extra; ++k) {
    const auto a = static_cast<NodeId>(rng.below(n)), b = static_cast<NodeId>(rng.below(n));
    if (a != b) edges.push_back(Edge::make(a, b));
  }
  return AttributedGraph(n, edges);
}

/// Same graph with node ids permuted by a seeded shuffle.
inline AttributedGraph relabel(const AttributedGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NodeId> p(g.num_nodes());
  std::iota(p.begin(), p.end(), NodeId{0});
  for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  std::vector<Label> nodes(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) nodes[p[u]] = g.node_label(u);
  std::vector<Edge> edges;
  std::vector<Label> labels;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    edges.push_back(Edge::make(p[g.edge(e).u], p[g.edge(e).v]));
    labels.push_back(g.edge_label(e));
  }
  return AttributedGraph(std::move(nodes), std::move(edges), std::move(labels));
}

}  // namespace hsge::fixtures
