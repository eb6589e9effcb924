#include "hsge/sampler.hpp"

#include <algorithm>

#include "hsge/errors.hpp"
#include "hsge/rng.hpp"

namespace hsge {

void SamplerParams::validate() const {
  if (restarts == 0) throw ParameterError("M (restarts) must be at least 1");
  if (max_edges == 0) throw ParameterError("T (max graphlet edges) must be at least 1");
}

namespace {

template <typename T>
void insert_sorted(std::vector<T>& v, T x) {
  v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

}  // namespace

std::size_t for_each_graphlet(const AttributedGraph& g, const SamplerParams& params,
                              const std::function<void(const GraphletView&)>& visit) {
  params.validate();
  if (g.num_edges() == 0) return 0;

  Rng rng(params.seed);
  std::size_t emitted = 0;
  std::vector<NodeId> visited;        // insertion order; drives the node draw
  std::vector<NodeId> sorted_nodes;   // exposed through the view
  std::vector<EdgeId> sorted_edges;
  std::vector<NodeId> eligible;
  std::vector<EdgeId> unused;

  auto used = [&](EdgeId e) {
    return std::binary_search(sorted_edges.begin(), sorted_edges.end(), e);
  };

  for (std::size_t restart = 0; restart < params.restarts; ++restart) {
    const auto start = static_cast<NodeId>(rng.below(g.num_nodes()));
    visited.assign(1, start);
    sorted_nodes.assign(1, start);
    sorted_edges.clear();

    for (std::size_t t = 1; t <= params.max_edges; ++t) {
      eligible.clear();
      for (auto u : visited) {
        for (const auto& inc : g.incident(u)) {
          if (!used(inc.edge)) {
            eligible.push_back(u);
            break;
          }
        }
      }
      if (eligible.empty()) break;

      const NodeId u = eligible[rng.below(eligible.size())];
      unused.clear();
      for (const auto& inc : g.incident(u))
        if (!used(inc.edge)) unused.push_back(inc.edge);
      const EdgeId e = unused[rng.below(unused.size())];

      insert_sorted(sorted_edges, e);
      const auto& edge = g.edge(e);
      const NodeId v = edge.u == u ? edge.v : edge.u;
      if (!std::binary_search(sorted_nodes.begin(), sorted_nodes.end(), v)) {
        visited.push_back(v);
        insert_sorted(sorted_nodes, v);
      }
      visit(GraphletView{&g, sorted_edges, sorted_nodes});
      ++emitted;
    }
  }
  return emitted;
}

GraphletSample sample_graphlets(const AttributedGraph& g, const SamplerParams& params) {
  GraphletSample out;
  params.validate();
  if (g.num_edges() == 0) {
    out.status = SampleStatus::kEdgeless;
    return out;
  }
  out.graphlets.reserve(params.restarts * params.max_edges);
  for_each_graphlet(g, params, [&](const GraphletView& view) {
    out.graphlets.push_back(
        Graphlet::from_connected_edges(g, std::vector<EdgeId>(view.edges.begin(), view.edges.end())));
  });
  return out;
}

}  // namespace hsge
