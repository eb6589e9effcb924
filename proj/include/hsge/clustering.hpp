#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hsge/graph.hpp"

namespace hsge {

/// Partition of a graph's nodes. Clusters are ordered by their smallest node
/// and list their nodes in ascending order.
struct Clustering {
  std::vector<std::vector<NodeId>> clusters;
  std::vector<std::uint32_t> cluster_of;  // per node

  std::size_t size() const { return clusters.size(); }
};

/// max(1, floor(r * n)); r must lie in (0, 1].
std::size_t target_cluster_count(std::size_t n, double ratio);

/// Girvan-Newman divisive clustering stopped as soon as the remaining graph
/// has at least `k` connected components.
///
/// Each step removes the edge with the highest betweenness on the remaining
/// graph; among edges within 1e-9 (relative) of the maximum the
/// lexicographically smallest (u, v) goes first. Only the component that lost
/// the edge is rescored. When the input already has more than `k` components
/// those are returned unchanged.
Clustering girvan_newman(const AttributedGraph& g, std::size_t k);

}  // namespace hsge
