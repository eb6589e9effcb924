#include <gtest/gtest.h>

#include <numeric>

#include "fixtures.hpp"
#include "hsge/embedding.hpp"
#include "hsge/errors.hpp"
#include "hsge/hierarchy.hpp"

namespace hsge {
namespace {

std::vector<std::string> names(const EmbeddingConfig& c) {
  std::vector<std::string> out;
  for (const auto& b : embedding_blocks(c)) out.push_back(b.name());
  return out;
}

TEST(EmbeddingBlocks, PerMode) {
  EXPECT_EQ(names(EmbeddingConfig{}), (std::vector<std::string>{"L0"}));
  EXPECT_EQ(names(EmbeddingConfig::make(EmbeddingMode::kPyramidal, 2, 0, 0)),
            (std::vector<std::string>{"L0", "L1", "L2"}));
  EXPECT_EQ(names(EmbeddingConfig::make(EmbeddingMode::kExhaustive, 1, 1, 1)),
            (std::vector<std::string>{"L0", "L1", "S0-1", "U0-1"}));
  EXPECT_EQ(names(EmbeddingConfig::make(EmbeddingMode::kHierarchical, 2, 2, 0)),
            (std::vector<std::string>{"L0", "L1", "L2", "S0-1", "S1-2", "S0-2"}));
  EXPECT_EQ(names(EmbeddingConfig::make(EmbeddingMode::kGeneralizedPyramidal, 2, 0, 1)),
            (std::vector<std::string>{"L0", "L1", "L2", "U0-1", "U1-2"}));
  EXPECT_EQ(embedding_blocks(EmbeddingConfig::make(EmbeddingMode::kExhaustive, 2, 2, 2)).size(), 9u);
}

TEST(EmbeddingConfig, Validation) {
  EXPECT_THROW(EmbeddingConfig::make(EmbeddingMode::kPyramidal, 0, 0, 0), ParameterError);
  EXPECT_THROW(EmbeddingConfig::make(EmbeddingMode::kHierarchical, 1, 0, 0), ParameterError);
  EXPECT_THROW(EmbeddingConfig::make(EmbeddingMode::kExhaustive, 1, 2, 1), ParameterError);
  EXPECT_THROW(EmbeddingConfig::make(EmbeddingMode::kGeneralizedPyramidal, 1, 0, 0), ParameterError);
  EXPECT_EQ(EmbeddingConfig::make(EmbeddingMode::kBaseline, 3, 2, 1).levels, 0u);
  EXPECT_EQ(EmbeddingConfig::make(EmbeddingMode::kPyramidal, 2, 2, 2).slice_span, 0u);
}

TEST(EmbeddingConfig, ParseNames) {
  EXPECT_EQ(parse_mode("pyr"), EmbeddingMode::kPyramidal);
  EXPECT_EQ(parse_mode("generalized_pyramidal"), EmbeddingMode::kGeneralizedPyramidal);
  EXPECT_EQ(parse_mode("exh"), EmbeddingMode::kExhaustive);
  EXPECT_THROW(parse_mode("bogus"), ParameterError);
  EXPECT_EQ(parse_normalization("raw"), Normalization::kRaw);
  EXPECT_THROW(parse_normalization("l2"), ParameterError);
  for (const auto* n : {"L3", "S0-2", "U1-4"}) EXPECT_EQ(SliceDescriptor::parse(n).name(), n);
  EXPECT_THROW(SliceDescriptor::parse("S1"), ParseError);
  EXPECT_THROW(SliceDescriptor::parse("X0"), ParseError);
}

TEST(Sge, SingleEdgeIsOneHot) {
  GraphletVocabulary v;
  const auto e = sge(fixtures::path(2), {.restarts = 50, .max_edges = 1}, v, false);
  EXPECT_EQ(e.values, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(e.layout->column_name(0), "L0/t1/b0");
  EXPECT_EQ(e.layout->column_name(1), "L0/t1/overflow");
}

TEST(Sge, BlocksSumToOne) {
  const auto g = fixtures::random_connected(20, 10, 5);
  GraphletVocabulary v;
  const auto e = sge(g, {.restarts = 300, .max_edges = 5, .seed = 1}, v, false);
  const auto& layout = *e.layout;
  std::vector<double> sums(layout.max_size + 1, 0.0);
  for (std::size_t i = 0; i < layout.dimension(); ++i) sums[layout.coordinates[i].size] += e.values[i];
  for (std::size_t t = 1; t <= 5; ++t) EXPECT_NEAR(sums[t], 1.0, 1e-12);
}

TEST(Sge, RawCountsMatchSampleSize) {
  GraphletVocabulary v;
  const auto e = sge(fixtures::complete(5), {.restarts = 40, .max_edges = 3}, v, false, Normalization::kRaw);
  EXPECT_DOUBLE_EQ(std::accumulate(e.values.begin(), e.values.end(), 0.0), 120.0);
}

TEST(Hsge, BaselineEqualsSge) {
  const auto g = fixtures::ten_node();
  const SamplerParams p{.restarts = 200, .max_edges = 4, .seed = 3};
  GraphletVocabulary a, b;
  const auto plain = sge(g, p, a, false);
  const auto hier = hsge(HierarchicalGraph(g), EmbeddingConfig{}, p, b, false);
  EXPECT_EQ(plain.values, hier.values);
  EXPECT_EQ(*plain.layout, *hier.layout);
}

TEST(Hsge, BaseBlockIsPlainSge) {
  const auto g = fixtures::random_connected(24, 14, 8);
  const auto h = build_hierarchy(g, {.levels = 2, .ratio = 0.5});
  const auto cfg = EmbeddingConfig::make(EmbeddingMode::kExhaustive, 2, 2, 2);
  const SamplerParams p{.restarts = 150, .max_edges = 4, .seed = 11};
  const std::vector<GraphCodes> codes{collect_codes(h, cfg, p, false)};
  auto vocab = build_vocabulary(codes);
  const auto full = hsge(h, cfg, p, vocab, false);
  const auto base = sge(g, p, vocab, false);
  ASSERT_GT(full.values.size(), base.values.size());
  EXPECT_TRUE(std::equal(base.values.begin(), base.values.end(), full.values.begin()));
  EXPECT_EQ(full.layout->blocks.size(), 9u);
  EXPECT_EQ(full.values.size(), full.layout->dimension());
}

TEST(Hsge, TooFewLevels) {
  const auto h = build_hierarchy(fixtures::ten_node(), {.levels = 1, .ratio = 0.5});
  GraphletVocabulary v;
  EXPECT_THROW(hsge(h, EmbeddingConfig::make(EmbeddingMode::kPyramidal, 2, 0, 0), {.restarts = 5}, v, false),
               ParameterError);
}

TEST(Hsge, Deterministic) {
  const auto g = fixtures::random_graph(16, 0.3, 4, {"C", "N"});
  const auto h = pad_hierarchy(build_hierarchy(g, {.levels = 2, .ratio = 0.5}), 2);
  const auto cfg = EmbeddingConfig::make(EmbeddingMode::kHierarchical, 2, 1, 0);
  GraphletVocabulary a, b;
  const SamplerParams p{.restarts = 100, .max_edges = 3, .seed = 5};
  EXPECT_EQ(hsge(h, cfg, p, a, true).values, hsge(h, cfg, p, b, true).values);
  EXPECT_EQ(a, b);
}

TEST(BuildVocabulary, RowsRestrictLearning) {
  const std::vector<AttributedGraph> gs{fixtures::path(5), fixtures::star(4)};
  std::vector<GraphCodes> codes;
  for (const auto& g : gs) codes.push_back(collect_codes(HierarchicalGraph(g), {}, {.restarts = 30, .max_edges = 3}, false));
  const std::vector<std::size_t> first{0};
  const auto v = build_vocabulary(codes, first);
  EXPECT_TRUE(v.finalized());
  EXPECT_EQ(v.bin_count(3), 1u);  // only the 3-path
  const auto layout = EmbeddingLayout::make({SliceDescriptor{}}, v, 3);
  const auto star = embed_codes(codes[1], layout, v, Normalization::kPerSizeL1);
  EXPECT_EQ(star.back(), 1.0);  // the 3-star lands in overflow
}

TEST(PadHierarchy, CopiesTop) {
  const auto h = build_hierarchy(fixtures::path(3), {.levels = 4, .ratio = 0.5});
  ASSERT_EQ(h.num_levels(), 2u);
  const auto p = pad_hierarchy(h, 4);
  EXPECT_EQ(p.num_levels(), 5u);
  for (std::size_t l = 2; l <= 4; ++l) {
    EXPECT_EQ(p.level(l), h.level(1));
    EXPECT_EQ(p.parent(l - 1, 0), 0u);
  }
  EXPECT_EQ(pad_hierarchy(p, 2).num_levels(), 5u);
}

}  // namespace
}  // namespace hsge
