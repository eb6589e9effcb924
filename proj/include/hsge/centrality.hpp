#pragma once

#include <span>
#include <vector>

#include "hsge/graph.hpp"

namespace hsge {

/// Unnormalized betweenness, one entry per edge (EdgeId) or node (NodeId).
/// Each unordered pair contributes once; ties among equal-length shortest
/// paths are split evenly.
using CentralityScores = std::vector<double>;

CentralityScores edge_betweenness(const AttributedGraph& g);

/// Interior nodes only; endpoints of a path receive nothing from it.
CentralityScores node_betweenness(const AttributedGraph& g);

namespace detail {

/// Brandes accumulation from the given sources over edges with
/// `edge_active[e]` set (all edges if empty). Adds ordered-pair dependencies,
/// i.e. twice the unordered value when every node of a component is a source.
/// Either output may be null.
void accumulate_brandes(const AttributedGraph& g, std::span<const NodeId> sources,
                        std::span<const std::uint8_t> edge_active, std::vector<double>* node_scores,
                        std::vector<double>* edge_scores);

}  // namespace detail

}  // namespace hsge
