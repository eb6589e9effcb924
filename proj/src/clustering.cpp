#include "hsge/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsge/centrality.hpp"
#include "hsge/errors.hpp"

namespace hsge {

std::size_t target_cluster_count(std::size_t n, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw ParameterError("reduction ratio must lie in (0, 1], got " + std::to_string(ratio));
  if (n == 0) throw ParameterError("cannot cluster an empty graph");
  const auto k = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
  return std::max<std::size_t>(1, k);
}

namespace {

Clustering from_components(const Components& comps) {
  Clustering c;
  c.cluster_of = comps.component_of;
  c.clusters.resize(comps.count);
  for (NodeId u = 0; u < comps.component_of.size(); ++u) c.clusters[comps.component_of[u]].push_back(u);
  return c;
}

}  // namespace

Clustering girvan_newman(const AttributedGraph& g, std::size_t k) {
  if (k == 0) throw ParameterError("cluster count must be positive");
  if (k > g.num_nodes())
    throw ParameterError("cluster count " + std::to_string(k) + " exceeds node count " +
                         std::to_string(g.num_nodes()));

  std::vector<std::uint8_t> active(g.num_edges(), 1);
  auto active_span = [&] { return std::span<const std::uint8_t>(active); };

  auto comps = connected_components(g, active_span());
  if (comps.count >= k) return from_components(comps);

  std::vector<double> scores = edge_betweenness(g);
  while (comps.count < k) {
    double best = -1.0;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (active[e]) best = std::max(best, scores[e]);
    const double slack = 1e-9 * std::max(1.0, best);
    EdgeId removed = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (active[e] && scores[e] >= best - slack) {
        removed = e;
        break;
      }
    }
    active[removed] = 0;
    comps = connected_components(g, active_span());

    // Rescore the (at most two) components containing the removed edge's endpoints.
    const auto cu = comps.component_of[g.edge(removed).u];
    const auto cv = comps.component_of[g.edge(removed).v];
    std::vector<NodeId> sources;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      if (comps.component_of[u] == cu || comps.component_of[u] == cv) sources.push_back(u);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto c = comps.component_of[g.edge(e).u];
      if (c == cu || c == cv) scores[e] = 0.0;
    }
    detail::accumulate_brandes(g, sources, active_span(), nullptr, &scores);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto c = comps.component_of[g.edge(e).u];
      if (c == cu || c == cv) scores[e] *= 0.5;
    }
  }
  return from_components(comps);
}

}  // namespace hsge
