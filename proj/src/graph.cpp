#include "hsge/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "hsge/errors.hpp"

namespace hsge {

std::string Label::symbol_token() const {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ',';
    out += symbols[i];
  }
  return out;
}

Label hierarchical_edge_label() { return Label::symbol(kHierarchicalEdgeSymbol); }

AttributedGraph::AttributedGraph(std::size_t num_nodes, std::span<const Edge> edges)
    : AttributedGraph(std::vector<Label>(num_nodes), std::vector<Edge>(edges.begin(), edges.end())) {}

AttributedGraph::AttributedGraph(std::vector<Label> node_labels, std::vector<Edge> edges,
                                 std::vector<Label> edge_labels)
    : node_labels_(std::move(node_labels)) {
  if (edge_labels.empty()) edge_labels.resize(edges.size());
  if (edge_labels.size() != edges.size())
    throw ParameterError("edge label count does not match edge count");

  const auto n = node_labels_.size();
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n)
      throw ReferenceError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") references a node outside 0.." + std::to_string(n));
    if (e.u == e.v) throw ParameterError("self-loop on node " + std::to_string(e.u));
    e = Edge::make(e.u, e.v);
  }

  // Stable order keeps the first label of a duplicated edge.
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  edges_.reserve(edges.size());
  edge_labels_.reserve(edges.size());
  for (auto i : order) {
    if (!edges_.empty() && edges_.back() == edges[i]) continue;
    edges_.push_back(edges[i]);
    edge_labels_.push_back(std::move(edge_labels[i]));
  }
  build_incidence();
}

void AttributedGraph::build_incidence() {
  const auto n = node_labels_.size();
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incidence_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    incidence_[fill[e.u]++] = {e.v, id};
    incidence_[fill[e.v]++] = {e.u, id};
  }
}

std::optional<EdgeId> AttributedGraph::find_edge(NodeId a, NodeId b) const {
  if (a >= num_nodes() || b >= num_nodes() || a == b) return std::nullopt;
  const Edge key = Edge::make(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

bool AttributedGraph::has_continuous_attributes() const {
  auto attributed = [](const Label& l) { return l.has_attributes(); };
  return std::any_of(node_labels_.begin(), node_labels_.end(), attributed) ||
         std::any_of(edge_labels_.begin(), edge_labels_.end(), attributed);
}

NodeId GraphBuilder::add_node(Label label) {
  nodes_.push_back(std::move(label));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void GraphBuilder::add_edge(NodeId a, NodeId b, Label label) {
  edges_.push_back({a, b});
  edge_labels_.push_back(std::move(label));
}

AttributedGraph GraphBuilder::build() && {
  return AttributedGraph(std::move(nodes_), std::move(edges_), std::move(edge_labels_));
}

Components connected_components(const AttributedGraph& g, std::span<const std::uint8_t> edge_active) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  Components out;
  out.component_of.assign(g.num_nodes(), kUnset);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (out.component_of[s] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.count++);
    out.component_of[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (const auto& inc : g.incident(u)) {
        if (!edge_active.empty() && !edge_active[inc.edge]) continue;
        if (out.component_of[inc.node] != kUnset) continue;
        out.component_of[inc.node] = id;
        stack.push_back(inc.node);
      }
    }
  }
  return out;
}

HierarchicalGraph::HierarchicalGraph(AttributedGraph base) { levels_.push_back(std::move(base)); }

void HierarchicalGraph::push_level(AttributedGraph level, std::vector<NodeId> parent_of_top) {
  if (levels_.empty()) throw StateError("hierarchy has no base level");
  const auto& top = levels_.back();
  if (parent_of_top.size() != top.num_nodes())
    throw ParameterError("parent map must cover every node of the current top level");
  if (level.num_nodes() > top.num_nodes())
    throw ParameterError("hierarchy levels must not grow in node count");
  for (auto p : parent_of_top)
    if (p >= level.num_nodes()) throw ReferenceError("parent index outside the new level");
  parent_.push_back(std::move(parent_of_top));
  levels_.push_back(std::move(level));
}

const AttributedGraph& HierarchicalGraph::level(std::size_t l) const {
  if (l >= levels_.size()) throw RangeError("level " + std::to_string(l) + " out of range");
  return levels_[l];
}

NodeId HierarchicalGraph::parent(std::size_t l, NodeId u) const {
  if (l >= parent_.size()) throw RangeError("level " + std::to_string(l) + " has no parents");
  return parent_[l].at(u);
}

std::span<const NodeId> HierarchicalGraph::parents(std::size_t l) const {
  if (l >= parent_.size()) throw RangeError("level " + std::to_string(l) + " has no parents");
  return parent_[l];
}

std::vector<std::pair<NodeId, NodeId>> HierarchicalGraph::hierarchical_edges(std::size_t l) const {
  const auto p = parents(l);
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(p.size());
  for (NodeId u = 0; u < p.size(); ++u) out.emplace_back(u, p[u]);
  return out;
}

namespace {

AttributedGraph stack_levels(const HierarchicalGraph& h, std::size_t l1, std::size_t l2,
                             bool with_hierarchical_edges) {
  if (h.num_levels() == 0 || l1 > l2 || l2 > h.top_level())
    throw RangeError("level range [" + std::to_string(l1) + "," + std::to_string(l2) +
                     "] outside hierarchy with " + std::to_string(h.num_levels()) + " levels");
  if (l1 == l2) return h.level(l1);

  std::vector<Label> nodes;
  std::vector<Edge> edges;
  std::vector<Label> edge_labels;
  std::vector<NodeId> offset;
  for (auto l = l1; l <= l2; ++l) {
    const auto& g = h.level(l);
    const auto base = static_cast<NodeId>(nodes.size());
    offset.push_back(base);
    nodes.insert(nodes.end(), g.node_labels().begin(), g.node_labels().end());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      edges.push_back({base + g.edge(e).u, base + g.edge(e).v});
      edge_labels.push_back(g.edge_label(e));
    }
  }
  if (with_hierarchical_edges) {
    for (auto l = l1; l < l2; ++l) {
      const auto parents = h.parents(l);
      for (NodeId u = 0; u < parents.size(); ++u) {
        edges.push_back({offset[l - l1] + u, offset[l - l1 + 1] + parents[u]});
        edge_labels.push_back(hierarchical_edge_label());
      }
    }
  }
  return AttributedGraph(std::move(nodes), std::move(edges), std::move(edge_labels));
}

}  // namespace

AttributedGraph level_slice(const HierarchicalGraph& h, std::size_t l1, std::size_t l2) {
  return stack_levels(h, l1, l2, true);
}

AttributedGraph level_union(const HierarchicalGraph& h, std::size_t l1, std::size_t l2) {
  return stack_levels(h, l1, l2, false);
}

Graphlet Graphlet::from_connected_edges(const AttributedGraph& graph, std::vector<EdgeId> edges) {
  Graphlet g;
  g.parent_ = &graph;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.nodes_.reserve(edges.size() + 1);
  for (auto e : edges) {
    g.nodes_.push_back(graph.edge(e).u);
    g.nodes_.push_back(graph.edge(e).v);
  }
  std::sort(g.nodes_.begin(), g.nodes_.end());
  g.nodes_.erase(std::unique(g.nodes_.begin(), g.nodes_.end()), g.nodes_.end());
  g.edges_ = std::move(edges);
  return g;
}

AttributedGraph Graphlet::materialize() const { return hsge::materialize(view()); }

AttributedGraph materialize(const GraphletView& view) {
  const auto& g = *view.graph;
  auto local = [&](NodeId u) {
    return static_cast<NodeId>(std::lower_bound(view.nodes.begin(), view.nodes.end(), u) -
                               view.nodes.begin());
  };
  std::vector<Label> nodes;
  nodes.reserve(view.nodes.size());
  for (auto u : view.nodes) nodes.push_back(g.node_label(u));
  std::vector<Edge> edges;
  std::vector<Label> labels;
  for (auto e : view.edges) {
    edges.push_back({local(g.edge(e).u), local(g.edge(e).v)});
    labels.push_back(g.edge_label(e));
  }
  return AttributedGraph(std::move(nodes), std::move(edges), std::move(labels));
}

Graphlet induced_graphlet(const AttributedGraph& g, std::span<const Edge> edges) {
  if (edges.empty()) throw InvalidGraphletError("a graphlet needs at least one edge");
  std::vector<EdgeId> ids;
  ids.reserve(edges.size());
  for (const auto& e : edges) {
    auto id = g.find_edge(e.u, e.v);
    if (!id)
      throw ReferenceError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") is not in the graph");
    ids.push_back(*id);
  }
  auto graphlet = Graphlet::from_connected_edges(g, std::move(ids));

  // Union-find over the graphlet's own nodes.
  const auto nodes = graphlet.nodes();
  std::vector<std::size_t> root(nodes.size());
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  auto local = [&](NodeId u) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), u) - nodes.begin());
  };
  std::size_t parts = nodes.size();
  for (auto e : graphlet.edges()) {
    auto a = find(local(g.edge(e).u));
    auto b = find(local(g.edge(e).v));
    if (a != b) {
      root[a] = b;
      --parts;
    }
  }
  if (parts != 1) throw InvalidGraphletError("edge set is not connected");
  return graphlet;
}

}  // namespace hsge
