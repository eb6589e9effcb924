#pragma once

// Brute-force references for tests and audits. Exponential by design; every
// entry point refuses inputs beyond its size guard.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hsge/graph.hpp"
#include "hsge/hashing.hpp"

namespace hsge::oracle {

inline constexpr std::size_t kIsoMaxNodes = 12;
inline constexpr std::size_t kCanonMaxNodes = 8;
inline constexpr std::size_t kEnumMaxEdges = 6;

/// Exact isomorphism by backtracking over label-consistent bijections.
bool is_isomorphic(const AttributedGraph& a, const AttributedGraph& b, bool use_labels = true);
bool is_isomorphic(const Graphlet& a, const Graphlet& b, bool use_labels = true);

/// Topology-only canonical form: the smallest upper-triangle adjacency
/// bitmask over all node permutations, prefixed by the node count.
std::string canonical_form(const AttributedGraph& g);
std::string canonical_form(const GraphletView& g);

struct IsoClass {
  AttributedGraph representative;
  std::size_t edges = 0;
  std::uint64_t labelings = 0;  // distinct edge sets on the node set 0..n-1 in this class
};

/// All connected graphs with 1..max_edges edges, one per isomorphism class.
struct IsoPairUniverse {
  std::vector<IsoClass> classes;
  std::vector<std::size_t> of_size(std::size_t edges) const;
};

IsoPairUniverse enumerate_connected(std::size_t max_edges);

/// Exact per-size distribution over canonical forms of the graphlet emitted
/// at growth step t of one sampler restart, conditioned on step t happening.
using WalkDistribution = std::vector<std::map<std::string, double>>;  // [t-1]
WalkDistribution exact_walk_distribution(const AttributedGraph& g, std::size_t max_edges);

/// Betweenness by listing every shortest path between every node pair.
std::vector<double> naive_node_betweenness(const AttributedGraph& g);
std::vector<double> naive_edge_betweenness(const AttributedGraph& g);

/// Smallest within-cluster sum of squares over all 2-partitions.
double best_two_means_cost(const std::vector<std::vector<double>>& points);

/// Best training accuracy (%) of a 2-D linear separator, searched over an
/// angle grid and every threshold between projected points.
double grid_separator_accuracy(const std::vector<std::vector<double>>& points, const std::vector<int>& labels,
                               std::size_t angles = 3600);

struct CollisionRow {
  std::size_t edges = 0;
  std::size_t classes = 0;
  std::size_t bins = 0;                 // distinct codes among the classes
  std::size_t colliding_pairs = 0;      // non-isomorphic class pairs with equal codes
  std::size_t total_pairs = 0;
  double pair_rate = 0.0;               // colliding_pairs / total_pairs
  /// P(non-isomorphic | equal codes) over ordered pairs of labeled graphs,
  /// each class weighted by its labelings.
  double conditional_rate = 0.0;
};

/// Collision tables of the two topology hashes, one row per size 1..max_edges.
std::vector<CollisionRow> degree_collisions(const IsoPairUniverse& u, std::size_t max_edges);
std::vector<CollisionRow> betweenness_collisions(const IsoPairUniverse& u, std::size_t max_edges);

/// Whole-graph graphlet of a connected graph.
Graphlet whole_graphlet(const AttributedGraph& g);

}  // namespace hsge::oracle
