#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsge/graph.hpp"
#include "hsge/sampler.hpp"

namespace hsge {

enum class TopologyKind : std::uint8_t { kDegree = 0, kBetweenness = 1 };

/// Betweenness values are stored as integers in units of 1e-6.
inline constexpr std::int64_t kBetweennessScale = 1'000'000;

/// Graphlet hash code: a sorted topology statistic plus an optional sorted
/// list of node and edge symbol tokens.
struct HashCode {
  TopologyKind kind = TopologyKind::kDegree;
  std::vector<std::int64_t> topology;
  std::vector<std::string> attributes;

  /// Topology entries in natural units (degrees, or betweenness).
  std::vector<double> topology_values() const;

  /// Canonical text form, e.g. "deg:1,1,2|C,N,1" or "btw:0.000000,1.000000".
  /// Tokens are percent-escaped so the form round-trips through parse().
  std::string serialize() const;
  static HashCode parse(std::string_view text);

  friend auto operator<=>(const HashCode&, const HashCode&) = default;
  friend bool operator==(const HashCode&, const HashCode&) = default;
};

/// Ascending degree sequence of the graphlet.
HashCode degree_hash(const GraphletView& g);
inline HashCode degree_hash(const Graphlet& g) { return degree_hash(g.view()); }

/// Ascending node betweenness of the graphlet, rounded to 6 decimals.
HashCode betweenness_hash(const GraphletView& g);
inline HashCode betweenness_hash(const Graphlet& g) { return betweenness_hash(g.view()); }

/// Graphlets up to this many edges are hashed by degree, larger ones by betweenness.
inline constexpr std::size_t kDegreeHashMaxEdges = 4;

/// Size-dependent hash; with `labeled`, appends the sorted node symbol tokens
/// followed by the sorted edge symbol tokens. Throws StateError when a
/// labeled graphlet still carries continuous attributes.
HashCode graphlet_code(const GraphletView& g, bool labeled);
inline HashCode graphlet_code(const Graphlet& g, bool labeled) { return graphlet_code(g.view(), labeled); }

/// Mapping from hash codes to histogram bins, one table per graphlet size t.
///
/// While building, codes get provisional bins in first-seen order. finalize()
/// re-indexes every table in lexicographic code order; after that the
/// vocabulary is read-only.
class GraphletVocabulary {
 public:
  GraphletVocabulary() = default;

  bool finalized() const { return finalized_; }
  /// Largest graphlet size with a table (0 when empty).
  std::size_t max_size() const { return tables_.size(); }

  /// Returns the code's bin, inserting it when new. Throws StateError once finalized.
  std::size_t insert(std::size_t t, const HashCode& code);
  void merge(const GraphletVocabulary& other);
  /// Makes sizes 1..t present (possibly with no codes).
  void ensure_size(std::size_t t);
  void finalize();

  std::optional<std::size_t> bin(std::size_t t, const HashCode& code) const;
  std::size_t bin_count(std::size_t t) const;
  /// Codes of size t in bin order.
  const std::vector<HashCode>& codes(std::size_t t) const;
  std::size_t total_codes() const;

  friend bool operator==(const GraphletVocabulary& a, const GraphletVocabulary& b) {
    return a.finalized_ == b.finalized_ && a.codes_ == b.codes_;
  }

 private:
  bool finalized_ = false;
  std::vector<std::map<HashCode, std::size_t>> tables_;  // [t-1]
  std::vector<std::vector<HashCode>> codes_;             // [t-1][bin]
};

/// Per-size counts keyed by code; the raw output of hashing one graph's sample.
struct CodeCounts {
  std::vector<std::map<HashCode, std::uint64_t>> by_size;  // [t-1]

  void add(std::size_t t, const HashCode& code, std::uint64_t n = 1);
  std::uint64_t total(std::size_t t) const;
  friend bool operator==(const CodeCounts&, const CodeCounts&) = default;
};

/// Per-size bin counts aligned to a vocabulary. Each size block has
/// bin_count(t) + 1 entries; the last one is the overflow bin for codes the
/// vocabulary does not know.
struct Histogram {
  std::vector<std::vector<std::uint64_t>> counts;  // [t-1][bin]

  std::uint64_t total(std::size_t t) const;
  std::uint64_t overflow(std::size_t t) const;
};

/// Samples `g` and counts graphlet codes by size.
CodeCounts count_codes(const AttributedGraph& g, const SamplerParams& params, bool labeled);

/// Bins codes against `vocab` for sizes 1..max_size.
Histogram bin_counts(const CodeCounts& counts, const GraphletVocabulary& vocab, std::size_t max_size);

/// Hashes each graphlet and counts it. A vocabulary still being built learns
/// unseen codes; a finalized one sends them to the overflow bin.
Histogram accumulate_histogram(std::span<const Graphlet> graphlets, GraphletVocabulary& vocab,
                               bool labeled);

struct KMeansResult {
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> assignment;
};

/// Lloyd iterations from a k-means++ start drawn with `seed`.
KMeansResult kmeans(std::span<const std::vector<double>> points, std::size_t k, std::uint64_t seed);

struct DiscretizationResult {
  std::vector<AttributedGraph> graphs;
  std::size_t node_clusters = 0;
  std::size_t edge_clusters = 0;
  std::vector<std::string> warnings;
};

/// Replaces continuous node attributes by a cluster token ("n<i>") appended
/// to the node's symbols, fitted with k-means on the pooled vectors of the
/// whole dataset; edge attributes likewise ("e<i>"). k is reduced, with a
/// warning, when there are fewer distinct vectors.
DiscretizationResult discretize_attributes(std::span<const AttributedGraph> dataset, std::size_t k,
                                           std::uint64_t seed = 0);

}  // namespace hsge
