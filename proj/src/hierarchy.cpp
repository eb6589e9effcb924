#include "hsge/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "hsge/clustering.hpp"
#include "hsge/errors.hpp"

namespace hsge {

double HierarchyParams::ratio_from_reduction(double reduction) {
  if (!(reduction >= 1.0))
    throw ParameterError("reduction R must be >= 1, got " + std::to_string(reduction));
  return 1.0 / reduction;
}

void HierarchyParams::validate() const {
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw ParameterError("reduction ratio must lie in (0, 1], got " + std::to_string(ratio));
  if (!(delta >= 0.0 && delta <= 1.0))
    throw ParameterError("connection threshold must lie in [0, 1], got " + std::to_string(delta));
}

double connection_ratio(const AttributedGraph& g, std::span<const NodeId> a,
                        std::span<const NodeId> b) {
  if (a.empty() || b.empty()) throw ParameterError("connection ratio needs non-empty groups");
  std::vector<std::uint8_t> side(g.num_nodes(), 0);
  for (auto u : a) side.at(u) = 1;
  for (auto u : b) {
    if (side.at(u) == 1) throw ParameterError("connection ratio groups overlap");
    side[u] = 2;
  }
  std::size_t crossing = 0;
  for (const auto& e : g.edges())
    if (side[e.u] && side[e.v] && side[e.u] != side[e.v]) ++crossing;
  return static_cast<double>(crossing) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

Label summarize_labels(std::span<const Label* const> labels) {
  Label out;
  if (labels.empty()) return out;

  std::map<std::vector<std::string>, std::size_t> votes;
  for (const auto* l : labels)
    if (!l->symbols.empty()) ++votes[l->symbols];
  std::size_t best = 0;
  for (const auto& [symbols, count] : votes) {
    // std::map iterates in lexicographic order, so strict > keeps the smallest on ties.
    if (count > best) {
      best = count;
      out.symbols = symbols;
    }
  }

  std::size_t dim = 0, attributed = 0;
  for (const auto* l : labels) {
    if (l->attributes.empty()) continue;
    dim = std::max(dim, l->attributes.size());
    ++attributed;
  }
  if (attributed > 0) {
    out.attributes.assign(dim, 0.0);
    for (const auto* l : labels)
      for (std::size_t i = 0; i < l->attributes.size(); ++i) out.attributes[i] += l->attributes[i];
    for (auto& x : out.attributes) x /= static_cast<double>(attributed);
  }
  return out;
}

Label cluster_label(const AttributedGraph& g, std::span<const NodeId> group) {
  std::vector<const Label*> labels;
  labels.reserve(group.size());
  for (auto u : group) labels.push_back(&g.node_label(u));
  return summarize_labels(labels);
}

namespace {

struct NextLevel {
  AttributedGraph graph;
  std::vector<NodeId> parent;
};

NextLevel contract(const AttributedGraph& g, const Clustering& c, double delta) {
  const auto k = c.size();
  std::vector<Label> nodes;
  nodes.reserve(k);
  for (const auto& cluster : c.clusters) nodes.push_back(cluster_label(g, cluster));

  // Crossing edges grouped by unordered cluster pair.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<const Label*>> crossing;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto a = c.cluster_of[g.edge(e).u];
    auto b = c.cluster_of[g.edge(e).v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    crossing[{a, b}].push_back(&g.edge_label(e));
  }

  std::vector<Edge> edges;
  std::vector<Label> edge_labels;
  for (const auto& [pair, labels] : crossing) {
    const double ratio = static_cast<double>(labels.size()) /
                         (static_cast<double>(c.clusters[pair.first].size()) *
                          static_cast<double>(c.clusters[pair.second].size()));
    if (ratio < delta) continue;
    edges.push_back({pair.first, pair.second});
    edge_labels.push_back(summarize_labels(labels));
  }

  std::vector<NodeId> parent(c.cluster_of.begin(), c.cluster_of.end());
  return {AttributedGraph(std::move(nodes), std::move(edges), std::move(edge_labels)),
          std::move(parent)};
}

}  // namespace

HierarchicalGraph build_hierarchy(const AttributedGraph& g, const HierarchyParams& params) {
  params.validate();
  if (g.empty()) throw ParameterError("cannot build a hierarchy over an empty graph");

  HierarchicalGraph h(g);
  for (std::size_t i = 1; i <= params.levels; ++i) {
    const auto& current = h.level(h.top_level());
    if (current.num_nodes() <= 1) break;
    const auto k = target_cluster_count(current.num_nodes(), params.ratio);
    auto next = contract(current, girvan_newman(current, k), params.delta);
    h.push_level(std::move(next.graph), std::move(next.parent));
  }
  return h;
}

}  // namespace hsge
