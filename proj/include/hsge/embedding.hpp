#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsge/graph.hpp"
#include "hsge/hashing.hpp"
#include "hsge/sampler.hpp"

namespace hsge {

enum class EmbeddingMode { kBaseline, kPyramidal, kGeneralizedPyramidal, kHierarchical, kExhaustive };

std::string_view to_string(EmbeddingMode mode);
/// Accepts "baseline", "pyramidal", "generalized_pyramidal", "hierarchical",
/// "exhaustive" (and the short forms "pyr", "gen_pyr", "hier", "exh").
EmbeddingMode parse_mode(std::string_view name);

enum class Normalization { kPerSizeL1, kRaw };

std::string_view to_string(Normalization n);
Normalization parse_normalization(std::string_view name);

/// Which hierarchy blocks go into the embedding.
///   levels (K):     level graphs 0..K
///   slice_span (k1): slices H^{i,i+k} with hierarchical edges, k = 1..k1
///   union_span (k2): unions H^i u ... u H^{i+k}, k = 1..k2
struct EmbeddingConfig {
  EmbeddingMode mode = EmbeddingMode::kBaseline;
  std::size_t levels = 0;
  std::size_t slice_span = 0;
  std::size_t union_span = 0;
  Normalization normalization = Normalization::kPerSizeL1;

  /// Config for `mode`, zeroing the spans the mode does not use. Throws
  /// ParameterError when the remaining values violate the mode's constraints.
  static EmbeddingConfig make(EmbeddingMode mode, std::size_t levels, std::size_t slice_span,
                              std::size_t union_span,
                              Normalization normalization = Normalization::kPerSizeL1);

  void validate() const;
};

/// One block of the embedding: a level graph, a slice (levels first..last
/// with hierarchical edges) or a union (levels first..last without them).
struct SliceDescriptor {
  enum class Kind { kLevel, kSlice, kUnion };
  Kind kind = Kind::kLevel;
  std::size_t first = 0;
  std::size_t last = 0;

  /// "L0", "S0-1", "U0-2".
  std::string name() const;
  static SliceDescriptor parse(std::string_view name);
  friend bool operator==(const SliceDescriptor&, const SliceDescriptor&) = default;
};

/// Blocks in embedding order: levels, then slices by span, then unions by span.
std::vector<SliceDescriptor> embedding_blocks(const EmbeddingConfig& config);

AttributedGraph block_graph(const HierarchicalGraph& h, const SliceDescriptor& block);

/// Sampling seed of a block. The base level uses `seed` itself so that the
/// baseline embedding coincides with plain sge(); other blocks get derived streams.
std::uint64_t block_seed(std::uint64_t seed, const SliceDescriptor& block);

struct Coordinate {
  std::size_t block = 0;  // index into EmbeddingLayout::blocks
  std::size_t size = 0;   // graphlet edge count t
  std::int64_t bin = 0;   // -1 for the overflow bin
};

/// Meaning of every coordinate: blocks x sizes 1..T x (vocabulary bins, overflow).
struct EmbeddingLayout {
  std::vector<SliceDescriptor> blocks;
  std::size_t max_size = 0;
  std::vector<Coordinate> coordinates;

  static EmbeddingLayout make(std::vector<SliceDescriptor> blocks, const GraphletVocabulary& vocab,
                              std::size_t max_size);

  std::size_t dimension() const { return coordinates.size(); }
  /// "L0/t3/b12" or "L0/t3/overflow".
  std::string column_name(std::size_t i) const;

  friend bool operator==(const EmbeddingLayout& a, const EmbeddingLayout& b) {
    if (a.blocks != b.blocks || a.max_size != b.max_size || a.coordinates.size() != b.coordinates.size())
      return false;
    for (std::size_t i = 0; i < a.coordinates.size(); ++i) {
      const auto& x = a.coordinates[i];
      const auto& y = b.coordinates[i];
      if (x.block != y.block || x.size != y.size || x.bin != y.bin) return false;
    }
    return true;
  }
};

struct EmbeddingVector {
  std::vector<double> values;
  std::shared_ptr<const EmbeddingLayout> layout;
};

/// Stochastic graphlet embedding of one graph: per-size histograms of
/// sampled graphlet codes, concatenated for t = 1..T. A vocabulary that is
/// still being built learns the graph's codes first.
EmbeddingVector sge(const AttributedGraph& g, const SamplerParams& params, GraphletVocabulary& vocab,
                    bool labeled, Normalization normalization = Normalization::kPerSizeL1);

/// Hierarchical embedding: sge of every block of `config`, concatenated in
/// embedding_blocks() order. Throws ParameterError when the config needs more
/// levels than `h` has.
EmbeddingVector hsge(const HierarchicalGraph& h, const EmbeddingConfig& config,
                     const SamplerParams& params, GraphletVocabulary& vocab, bool labeled);

/// Code counts of every block of one graph, before any vocabulary exists.
struct GraphCodes {
  std::vector<CodeCounts> blocks;
  bool edgeless = false;  // base graph had no edges
};

GraphCodes collect_codes(const HierarchicalGraph& h, const EmbeddingConfig& config,
                         const SamplerParams& params, bool labeled);

/// Finalized vocabulary over the given rows (all rows when `rows` is empty).
GraphletVocabulary build_vocabulary(std::span<const GraphCodes> codes, std::span<const std::size_t> rows = {});

/// Coordinates of one graph under `layout`, normalized per block and size.
std::vector<double> embed_codes(const GraphCodes& codes, const EmbeddingLayout& layout,
                                const GraphletVocabulary& vocab, Normalization normalization);

/// Extends a hierarchy that stopped early (single-node top) with copies of
/// its top level until it has `levels` levels above the base, which is what
/// continued construction would produce.
HierarchicalGraph pad_hierarchy(HierarchicalGraph h, std::size_t levels);

}  // namespace hsge
