#include "hsge/centrality.hpp"

#include <numeric>

namespace hsge {
namespace detail {

void accumulate_brandes(const AttributedGraph& g, std::span<const NodeId> sources,
                        std::span<const std::uint8_t> edge_active, std::vector<double>* node_scores,
                        std::vector<double>* edge_scores) {
  const auto n = g.num_nodes();
  std::vector<double> sigma(n), delta(n);
  std::vector<int> dist(n, -1);
  std::vector<NodeId> order;  // BFS order, doubles as the stack
  order.reserve(n);

  for (const NodeId s : sources) {
    for (auto u : order) {
      dist[u] = -1;
      sigma[u] = 0.0;
      delta[u] = 0.0;
    }
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (const auto& inc : g.incident(u)) {
        if (!edge_active.empty() && !edge_active[inc.edge]) continue;
        const NodeId w = inc.node;
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (const auto& inc : g.incident(w)) {
        if (!edge_active.empty() && !edge_active[inc.edge]) continue;
        const NodeId v = inc.node;
        if (dist[v] != dist[w] - 1) continue;
        const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
        if (edge_scores) (*edge_scores)[inc.edge] += c;
        delta[v] += c;
      }
      if (node_scores && w != s) (*node_scores)[w] += delta[w];
    }
  }
}

}  // namespace detail

namespace {

std::vector<NodeId> all_nodes(const AttributedGraph& g) {
  std::vector<NodeId> nodes(g.num_nodes());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  return nodes;
}

}  // namespace

CentralityScores edge_betweenness(const AttributedGraph& g) {
  CentralityScores scores(g.num_edges(), 0.0);
  if (g.num_edges() == 0) return scores;
  detail::accumulate_brandes(g, all_nodes(g), {}, nullptr, &scores);
  for (auto& s : scores) s *= 0.5;
  return scores;
}

CentralityScores node_betweenness(const AttributedGraph& g) {
  CentralityScores scores(g.num_nodes(), 0.0);
  if (g.num_edges() == 0) return scores;
  detail::accumulate_brandes(g, all_nodes(g), {}, &scores, nullptr);
  for (auto& s : scores) s *= 0.5;
  return scores;
}

}  // namespace hsge
