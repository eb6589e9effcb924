#include "hsge/embedding.hpp"

#include <algorithm>
#include <numeric>

#include "hsge/errors.hpp"
#include "hsge/rng.hpp"

namespace hsge {

std::string_view to_string(EmbeddingMode mode) {
  switch (mode) {
    case EmbeddingMode::kBaseline: return "baseline";
    case EmbeddingMode::kPyramidal: return "pyramidal";
    case EmbeddingMode::kGeneralizedPyramidal: return "generalized_pyramidal";
    case EmbeddingMode::kHierarchical: return "hierarchical";
    case EmbeddingMode::kExhaustive: return "exhaustive";
  }
  return "?";
}

EmbeddingMode parse_mode(std::string_view name) {
  if (name == "baseline" || name == "sge") return EmbeddingMode::kBaseline;
  if (name == "pyramidal" || name == "pyr") return EmbeddingMode::kPyramidal;
  if (name == "generalized_pyramidal" || name == "gen_pyr") return EmbeddingMode::kGeneralizedPyramidal;
  if (name == "hierarchical" || name == "hier") return EmbeddingMode::kHierarchical;
  if (name == "exhaustive" || name == "exh") return EmbeddingMode::kExhaustive;
  throw ParameterError("unknown embedding mode '" + std::string(name) + "'");
}

std::string_view to_string(Normalization n) { return n == Normalization::kRaw ? "raw" : "l1"; }

Normalization parse_normalization(std::string_view name) {
  if (name == "l1") return Normalization::kPerSizeL1;
  if (name == "raw") return Normalization::kRaw;
  throw ParameterError("unknown normalization '" + std::string(name) + "'");
}

EmbeddingConfig EmbeddingConfig::make(EmbeddingMode mode, std::size_t levels, std::size_t slice_span,
                                      std::size_t union_span, Normalization normalization) {
  EmbeddingConfig c{mode, levels, slice_span, union_span, normalization};
  switch (mode) {
    case EmbeddingMode::kBaseline: c.levels = c.slice_span = c.union_span = 0; break;
    case EmbeddingMode::kPyramidal: c.slice_span = c.union_span = 0; break;
    case EmbeddingMode::kGeneralizedPyramidal: c.slice_span = 0; break;
    case EmbeddingMode::kHierarchical: c.union_span = 0; break;
    case EmbeddingMode::kExhaustive: break;
  }
  c.validate();
  return c;
}

void EmbeddingConfig::validate() const {
  auto fail = [&](const std::string& why) {
    throw ParameterError(std::string(to_string(mode)) + " embedding: " + why);
  };
  if (slice_span > levels || union_span > levels) fail("slice and union spans must not exceed K");
  switch (mode) {
    case EmbeddingMode::kBaseline:
      if (levels || slice_span || union_span) fail("requires K = k1 = k2 = 0");
      break;
    case EmbeddingMode::kPyramidal:
      if (levels < 1 || slice_span || union_span) fail("requires K >= 1 and k1 = k2 = 0");
      break;
    case EmbeddingMode::kGeneralizedPyramidal:
      if (slice_span || union_span < 1) fail("requires k1 = 0 and k2 >= 1");
      break;
    case EmbeddingMode::kHierarchical:
      if (union_span || slice_span < 1) fail("requires k2 = 0 and k1 >= 1");
      break;
    case EmbeddingMode::kExhaustive:
      if (slice_span < 1 || union_span < 1) fail("requires k1 >= 1 and k2 >= 1");
      break;
  }
}

std::string SliceDescriptor::name() const {
  switch (kind) {
    case Kind::kLevel: return "L" + std::to_string(first);
    case Kind::kSlice: return "S" + std::to_string(first) + "-" + std::to_string(last);
    case Kind::kUnion: return "U" + std::to_string(first) + "-" + std::to_string(last);
  }
  return "?";
}

SliceDescriptor SliceDescriptor::parse(std::string_view name) {
  auto number = [&](std::string_view s) {
    if (s.empty()) throw ParseError("bad block name '" + std::string(name) + "'");
    std::size_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw ParseError("bad block name '" + std::string(name) + "'");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  if (name.empty()) throw ParseError("empty block name");
  SliceDescriptor d;
  const auto body = name.substr(1);
  switch (name[0]) {
    case 'L':
      d.kind = Kind::kLevel;
      d.first = d.last = number(body);
      return d;
    case 'S':
    case 'U': {
      d.kind = name[0] == 'S' ? Kind::kSlice : Kind::kUnion;
      const auto dash = body.find('-');
      if (dash == std::string_view::npos) throw ParseError("bad block name '" + std::string(name) + "'");
      d.first = number(body.substr(0, dash));
      d.last = number(body.substr(dash + 1));
      return d;
    }
    default: throw ParseError("bad block name '" + std::string(name) + "'");
  }
}

std::vector<SliceDescriptor> embedding_blocks(const EmbeddingConfig& config) {
  config.validate();
  using Kind = SliceDescriptor::Kind;
  std::vector<SliceDescriptor> blocks;
  const auto K = config.levels;
  for (std::size_t l = 0; l <= K; ++l) blocks.push_back({Kind::kLevel, l, l});
  for (std::size_t k = 1; k <= config.slice_span; ++k)
    for (std::size_t i = 0; i + k <= K; ++i) blocks.push_back({Kind::kSlice, i, i + k});
  for (std::size_t k = 1; k <= config.union_span; ++k)
    for (std::size_t i = 0; i + k <= K; ++i) blocks.push_back({Kind::kUnion, i, i + k});
  return blocks;
}

AttributedGraph block_graph(const HierarchicalGraph& h, const SliceDescriptor& block) {
  switch (block.kind) {
    case SliceDescriptor::Kind::kLevel: return h.level(block.first);
    case SliceDescriptor::Kind::kSlice: return level_slice(h, block.first, block.last);
    case SliceDescriptor::Kind::kUnion: return level_union(h, block.first, block.last);
  }
  return {};
}

std::uint64_t block_seed(std::uint64_t seed, const SliceDescriptor& block) {
  if (block.kind == SliceDescriptor::Kind::kLevel && block.first == 0) return seed;
  return derive_seed(seed, block.name());
}

EmbeddingLayout EmbeddingLayout::make(std::vector<SliceDescriptor> blocks, const GraphletVocabulary& vocab,
                                      std::size_t max_size) {
  EmbeddingLayout layout;
  layout.blocks = std::move(blocks);
  layout.max_size = max_size;
  for (std::size_t b = 0; b < layout.blocks.size(); ++b) {
    for (std::size_t t = 1; t <= max_size; ++t) {
      const auto bins = static_cast<std::int64_t>(vocab.bin_count(t));
      for (std::int64_t i = 0; i < bins; ++i) layout.coordinates.push_back({b, t, i});
      layout.coordinates.push_back({b, t, -1});
    }
  }
  return layout;
}

std::string EmbeddingLayout::column_name(std::size_t i) const {
  const auto& c = coordinates.at(i);
  return blocks[c.block].name() + "/t" + std::to_string(c.size) + "/" +
         (c.bin < 0 ? std::string("overflow") : "b" + std::to_string(c.bin));
}

namespace {

void append_histogram(const Histogram& h, Normalization normalization, std::vector<double>& out) {
  for (const auto& block : h.counts) {
    const double total = static_cast<double>(std::accumulate(block.begin(), block.end(), std::uint64_t{0}));
    for (auto c : block) {
      const double x = static_cast<double>(c);
      out.push_back(normalization == Normalization::kPerSizeL1 ? (total > 0 ? x / total : 0.0) : x);
    }
  }
}

void learn(GraphletVocabulary& vocab, const CodeCounts& counts) {
  for (std::size_t t = 1; t <= counts.by_size.size(); ++t)
    for (const auto& [code, n] : counts.by_size[t - 1]) vocab.insert(t, code);
}

}  // namespace

EmbeddingVector sge(const AttributedGraph& g, const SamplerParams& params, GraphletVocabulary& vocab,
                    bool labeled, Normalization normalization) {
  const auto counts = count_codes(g, params, labeled);
  if (!vocab.finalized()) learn(vocab, counts);
  auto layout = std::make_shared<EmbeddingLayout>(
      EmbeddingLayout::make({SliceDescriptor{}}, vocab, params.max_edges));
  EmbeddingVector out;
  out.values.reserve(layout->dimension());
  append_histogram(bin_counts(counts, vocab, params.max_edges), normalization, out.values);
  out.layout = std::move(layout);
  return out;
}

GraphCodes collect_codes(const HierarchicalGraph& h, const EmbeddingConfig& config,
                         const SamplerParams& params, bool labeled) {
  const auto blocks = embedding_blocks(config);
  if (config.levels > h.top_level())
    throw ParameterError("embedding uses " + std::to_string(config.levels) + " levels but the hierarchy has " +
                         std::to_string(h.top_level()));
  GraphCodes out;
  out.edgeless = h.level(0).num_edges() == 0;
  out.blocks.reserve(blocks.size());
  for (const auto& block : blocks) {
    SamplerParams p = params;
    p.seed = block_seed(params.seed, block);
    out.blocks.push_back(count_codes(block_graph(h, block), p, labeled));
  }
  return out;
}

EmbeddingVector hsge(const HierarchicalGraph& h, const EmbeddingConfig& config, const SamplerParams& params,
                     GraphletVocabulary& vocab, bool labeled) {
  const auto codes = collect_codes(h, config, params, labeled);
  if (!vocab.finalized())
    for (const auto& c : codes.blocks) learn(vocab, c);
  auto layout = std::make_shared<EmbeddingLayout>(
      EmbeddingLayout::make(embedding_blocks(config), vocab, params.max_edges));
  EmbeddingVector out;
  out.values = embed_codes(codes, *layout, vocab, config.normalization);
  out.layout = std::move(layout);
  return out;
}

GraphletVocabulary build_vocabulary(std::span<const GraphCodes> codes, std::span<const std::size_t> rows) {
  GraphletVocabulary vocab;
  auto add = [&](const GraphCodes& g) {
    for (const auto& c : g.blocks) learn(vocab, c);
  };
  if (rows.empty()) {
    for (const auto& g : codes) add(g);
  } else {
    for (auto r : rows) add(codes[r]);
  }
  vocab.finalize();
  return vocab;
}

std::vector<double> embed_codes(const GraphCodes& codes, const EmbeddingLayout& layout,
                                const GraphletVocabulary& vocab, Normalization normalization) {
  if (codes.blocks.size() != layout.blocks.size())
    throw ParameterError("graph codes have " + std::to_string(codes.blocks.size()) + " blocks, layout expects " +
                         std::to_string(layout.blocks.size()));
  std::vector<double> values;
  values.reserve(layout.dimension());
  for (const auto& block : codes.blocks)
    append_histogram(bin_counts(block, vocab, layout.max_size), normalization, values);
  return values;
}

HierarchicalGraph pad_hierarchy(HierarchicalGraph h, std::size_t levels) {
  while (h.top_level() < levels) {
    const auto& top = h.level(h.top_level());
    std::vector<NodeId> identity(top.num_nodes());
    std::iota(identity.begin(), identity.end(), NodeId{0});
    AttributedGraph copy = top;
    h.push_level(std::move(copy), std::move(identity));
  }
  return h;
}

}  // namespace hsge
