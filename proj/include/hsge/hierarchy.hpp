#pragma once

#include <cstddef>
#include <span>

#include "hsge/graph.hpp"

namespace hsge {

struct HierarchyParams {
  std::size_t levels = 2;  // levels above the base graph
  double ratio = 0.5;      // r in (0, 1]; level i+1 has max(1, floor(r |V_i|)) nodes
  double delta = 0.0;      // connection-ratio threshold in [0, 1]

  /// r = 1 / R for the "reduction" spelling, where R = 2 halves each level.
  static double ratio_from_reduction(double reduction);

  /// Throws ParameterError.
  void validate() const;
};

/// Edges between the groups divided by |a| * |b|. Groups must be disjoint and
/// non-empty.
double connection_ratio(const AttributedGraph& g, std::span<const NodeId> a,
                        std::span<const NodeId> b);

/// Representative label of a node group: the most frequent symbol list
/// (lexicographically smallest on ties) and the component-wise mean of the
/// attribute vectors. Unlabeled members yield an unlabeled result.
Label cluster_label(const AttributedGraph& g, std::span<const NodeId> group);

/// Same summarization applied to an arbitrary list of labels.
Label summarize_labels(std::span<const Label* const> labels);

/// Pyramid construction: each level clusters the previous one with
/// Girvan-Newman, turns clusters into nodes, links two cluster nodes when at
/// least one edge crosses between them and their connection ratio reaches
/// delta, and records a parent for every node of the level below. Stops early
/// once a level has a single node.
HierarchicalGraph build_hierarchy(const AttributedGraph& g, const HierarchyParams& params);

}  // namespace hsge
