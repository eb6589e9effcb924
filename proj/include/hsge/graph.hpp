#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsge {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Symbolic tokens plus real-valued attributes attached to a node or edge.
/// A label with both lists empty is the "unlabeled" value.
struct Label {
  std::vector<std::string> symbols;
  std::vector<double> attributes;

  bool unlabeled() const { return symbols.empty() && attributes.empty(); }
  bool has_attributes() const { return !attributes.empty(); }

  /// Symbols joined by ','; the token used in graphlet attribute signatures.
  std::string symbol_token() const;

  static Label symbol(std::string s) { return Label{{std::move(s)}, {}}; }

  friend bool operator==(const Label&, const Label&) = default;
};

/// Reserved symbol carried by edges linking a node to its cluster parent.
inline constexpr const char* kHierarchicalEdgeSymbol = "HIER";
Label hierarchical_edge_label();

/// Undirected edge, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  static Edge make(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
  NodeId node;
  EdgeId edge;
};

/// Immutable simple undirected graph with a Label on every node and edge.
///
/// Edges are kept sorted by (u, v); EdgeId is the index in that order.
/// Duplicate edges collapse onto the first occurrence.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  /// Unlabeled graph on `num_nodes` nodes.
  AttributedGraph(std::size_t num_nodes, std::span<const Edge> edges);

  /// Throws ReferenceError for endpoints out of range and ParameterError for
  /// self-loops or mismatched label counts. An empty `edge_labels` means
  /// every edge is unlabeled.
  AttributedGraph(std::vector<Label> node_labels, std::vector<Edge> edges,
                  std::vector<Label> edge_labels = {});

  std::size_t num_nodes() const { return node_labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return node_labels_.empty(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  const Label& node_label(NodeId u) const { return node_labels_[u]; }
  const Label& edge_label(EdgeId e) const { return edge_labels_[e]; }
  std::span<const Label> node_labels() const { return node_labels_; }
  std::span<const Label> edge_labels() const { return edge_labels_; }

  std::span<const Incidence> incident(NodeId u) const {
    return {incidence_.data() + offsets_[u], incidence_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;

  /// True if any node or edge label carries real-valued attributes.
  bool has_continuous_attributes() const;

  friend bool operator==(const AttributedGraph& a, const AttributedGraph& b) {
    return a.node_labels_ == b.node_labels_ && a.edges_ == b.edges_ &&
           a.edge_labels_ == b.edge_labels_;
  }

 private:
  void build_incidence();

  std::vector<Label> node_labels_;
  std::vector<Edge> edges_;
  std::vector<Label> edge_labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
};

/// Incremental construction helper; build() validates and canonicalizes.
class GraphBuilder {
 public:
  NodeId add_node(Label label = {});
  void add_edge(NodeId a, NodeId b, Label label = {});
  std::size_t num_nodes() const { return nodes_.size(); }
  AttributedGraph build() &&;

 private:
  std::vector<Label> nodes_;
  std::vector<Edge> edges_;
  std::vector<Label> edge_labels_;
};

struct Components {
  std::vector<std::uint32_t> component_of;  // per node
  std::size_t count = 0;
};

/// Connected components; component ids follow the smallest node id they contain.
/// `edge_active`, when non-empty, masks removed edges.
Components connected_components(const AttributedGraph& g,
                                std::span<const std::uint8_t> edge_active = {});

/// Multi-level graph: level 0 is the input, level l+1 summarizes clusters of
/// level l. Every node below the top level has exactly one parent.
class HierarchicalGraph {
 public:
  HierarchicalGraph() = default;
  explicit HierarchicalGraph(AttributedGraph base);

  /// Appends a level above the current top. `parent_of_top[u]` is the parent
  /// (in `level`) of node u of the current top level.
  void push_level(AttributedGraph level, std::vector<NodeId> parent_of_top);

  std::size_t num_levels() const { return levels_.size(); }
  std::size_t top_level() const { return levels_.size() - 1; }
  const AttributedGraph& level(std::size_t l) const;
  NodeId parent(std::size_t l, NodeId u) const;
  std::span<const NodeId> parents(std::size_t l) const;

  /// (child at level l, parent at level l+1) pairs.
  std::vector<std::pair<NodeId, NodeId>> hierarchical_edges(std::size_t l) const;

 private:
  std::vector<AttributedGraph> levels_;
  std::vector<std::vector<NodeId>> parent_;  // parent_[l] for l < top
};

/// Levels l1..l2 as one graph, joined by the hierarchical edges between
/// consecutive levels (labeled HIER). Node ids are laid out level by level:
/// node u of level l maps to offset(l) + u, offset(l1) = 0.
AttributedGraph level_slice(const HierarchicalGraph& h, std::size_t l1, std::size_t l2);

/// Disjoint union of levels l1..l2 without hierarchical edges, same node layout
/// as level_slice.
AttributedGraph level_union(const HierarchicalGraph& h, std::size_t l1, std::size_t l2);

/// Non-owning view of a connected edge-induced subgraph.
struct GraphletView {
  const AttributedGraph* graph = nullptr;
  std::span<const EdgeId> edges;  // sorted
  std::span<const NodeId> nodes;  // sorted

  std::size_t size() const { return edges.size(); }
};

/// Connected edge-induced subgraph with t >= 1 edges. Labels are read from
/// the parent graph, which must outlive the graphlet.
class Graphlet {
 public:
  /// `edges` must be connected, non-empty and valid for `graph`; the caller
  /// guarantees this (see induced_graphlet for the checked path).
  static Graphlet from_connected_edges(const AttributedGraph& graph, std::vector<EdgeId> edges);

  const AttributedGraph& parent() const { return *parent_; }
  std::span<const EdgeId> edges() const { return edges_; }
  std::span<const NodeId> nodes() const { return nodes_; }
  std::size_t size() const { return edges_.size(); }
  GraphletView view() const { return {parent_, edges_, nodes_}; }

  const Label& node_label(NodeId u) const { return parent_->node_label(u); }
  const Label& edge_label(EdgeId e) const { return parent_->edge_label(e); }

  /// Standalone copy with nodes renumbered 0..k-1 in sorted order.
  AttributedGraph materialize() const;

 private:
  Graphlet() = default;
  const AttributedGraph* parent_ = nullptr;
  std::vector<EdgeId> edges_;
  std::vector<NodeId> nodes_;
};

AttributedGraph materialize(const GraphletView& view);

/// Graphlet spanned by the given edges. Throws ReferenceError for edges not in
/// `g` and InvalidGraphletError for empty or disconnected edge sets.
Graphlet induced_graphlet(const AttributedGraph& g, std::span<const Edge> edges);

}  // namespace hsge
