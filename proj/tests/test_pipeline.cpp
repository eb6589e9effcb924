#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hsge/errors.hpp"
#include "hsge/pipeline.hpp"

namespace hsge {
namespace {

// Class 0: cycles with a pendant path; class 1: random trees. 24 graphs.
Dataset toy(std::size_t per_class = 12) {
  Dataset ds;
  ds.name = "toy";
  ds.class_names = {"cyclic", "tree"};
  for (std::size_t i = 0; i < per_class; ++i) {
    const std::size_t n = 6 + i % 5;
    std::vector<Edge> e;
    for (NodeId k = 0; k < n; ++k) e.push_back(Edge::make(k, static_cast<NodeId>((k + 1) % n)));
    e.push_back({0, static_cast<NodeId>(n)});
    ds.graphs.emplace_back(n + 1, e);
    ds.classes.push_back(0);
    ds.graphs.push_back(fixtures::random_connected(7 + i % 5, 0, 100 + i));
    ds.classes.push_back(1);
  }
  for (std::size_t i = 0; i < ds.size(); ++i) ds.graph_ids.push_back("g" + std::to_string(i));
  return ds;
}

PipelineConfig small_config() {
  PipelineConfig c;
  c.hierarchy = {.levels = 1, .ratio = 0.5};
  c.embedding = EmbeddingConfig::make(EmbeddingMode::kExhaustive, 1, 1, 1);
  c.sampler = {.restarts = 200, .max_edges = 4, .seed = 3};
  return c;
}

TEST(Pipeline, ConfigValidation) {
  auto c = small_config();
  c.embedding = EmbeddingConfig::make(EmbeddingMode::kPyramidal, 2, 0, 0);
  EXPECT_THROW(c.validate(), ParameterError);
  c.hierarchy.levels = 2;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.to_json().at("mode"), "pyramidal");
}

TEST(Pipeline, PrepareStripsLabelsWhenUnlabeled) {
  Dataset ds;
  ds.graphs = {fixtures::random_graph(5, 0.5, 1, {"C", "N"})};
  ds.classes = {0};
  auto c = small_config();
  EXPECT_TRUE(prepare_graphs(ds, c)[0].node_label(0).unlabeled());
  c.labeled = true;
  EXPECT_EQ(prepare_graphs(ds, c)[0], ds.graphs[0]);
}

TEST(Pipeline, HierarchyPaddedToK) {
  auto c = small_config();
  c.hierarchy.levels = 3;
  c.embedding = EmbeddingConfig::make(EmbeddingMode::kPyramidal, 3, 0, 0);
  const auto h = graph_hierarchy(fixtures::path(3), c);
  EXPECT_EQ(h.num_levels(), 4u);
  EXPECT_EQ(graph_hierarchy(AttributedGraph(2, {}), c).num_levels(), 4u);
}

TEST(Pipeline, FoldVocabularyIgnoresTestGraphs) {
  Dataset ds;
  ds.graphs = {fixtures::path(5), fixtures::path(6), fixtures::star(4)};
  ds.classes = {0, 0, 1};
  auto c = small_config();
  c.embedding = EmbeddingConfig{};
  c.hierarchy.levels = 0;
  const auto h = dataset_hierarchies(prepare_graphs(ds, c), c);
  const auto codes = dataset_codes(h, c, 1);
  const std::vector<std::size_t> train{0, 1}, test{2};
  const auto fold = embed_fold(codes, c, train, test);
  ASSERT_EQ(fold.test.rows(), 1u);
  // Size-3 block of the star: only the path code is known, so the star's
  // 3-star graphlets all land in overflow.
  const auto vocab = build_vocabulary(codes, train);
  const auto layout = EmbeddingLayout::make(embedding_blocks(c.embedding), vocab, c.sampler.max_edges);
  double overflow = 0.0;
  for (std::size_t j = 0; j < layout.dimension(); ++j)
    if (layout.coordinates[j].size == 3 && layout.coordinates[j].bin < 0) overflow = fold.test(0, j);
  EXPECT_DOUBLE_EQ(overflow, 1.0);
  for (std::size_t j = 0; j < layout.dimension(); ++j)
    if (layout.coordinates[j].bin < 0) {
      EXPECT_EQ(fold.train(0, j), 0.0);
    }
}

TEST(Pipeline, EmbedDatasetDeterministic) {
  const auto ds = toy();
  auto c = small_config();
  std::vector<std::string> warnings;
  const auto a = embed_dataset(ds, c, &warnings);
  c.jobs = 4;
  const auto b = embed_dataset(ds, c);
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(a.vocabulary, b.vocabulary);
  EXPECT_EQ(a.table.row_ids.front(), "g0");
  EXPECT_EQ(a.table.layout.blocks.size(), 4u);
  EXPECT_TRUE(warnings.empty());
}

TEST(Pipeline, EdgelessGraphsWarn) {
  auto ds = toy(3);
  ds.graphs.push_back(AttributedGraph(3, {}));
  ds.classes.push_back(1);
  std::vector<std::string> warnings;
  const auto e = embed_dataset(ds, small_config(), &warnings);
  EXPECT_EQ(e.edgeless, 1u);
  ASSERT_EQ(warnings.size(), 1u);
  const auto last = e.table.values.row(e.table.values.rows() - 1);
  for (std::size_t j = 0; j < last.size(); ++j)
    if (e.table.layout.coordinates[j].block == 0) {
      EXPECT_EQ(last[j], 0.0);
    }
}

TEST(Pipeline, EvaluateSeparatesToyClasses) {
  const auto ds = toy();
  const auto r = evaluate_dataset(ds, small_config(), {.folds = 4, .repetitions = 2});
  EXPECT_GE(r.mean_accuracy, 90.0);
  EXPECT_EQ(r.seed, 3u);
}

TEST(Pipeline, EvaluateDeterministicAcrossJobs) {
  const auto ds = toy();
  auto c = small_config();
  const CvOptions cv{.folds = 3, .repetitions = 2};
  const auto a = evaluate_dataset(ds, c, cv);
  EXPECT_EQ(a, evaluate_dataset(ds, c, cv));
  auto threaded = cv;
  threaded.jobs = 4;
  EXPECT_EQ(a, evaluate_dataset(ds, c, threaded));
  c.jobs = 3;
  EXPECT_EQ(a, evaluate_dataset(ds, c, cv));
}

TEST(Pipeline, HoldoutRepetitions) {
  auto ds = toy();
  Split s;
  for (std::size_t i = 0; i < ds.size(); ++i) (i % 4 == 0 ? s.test : i % 4 == 1 ? s.validation : s.train).push_back(i);
  ds.split = s;
  const auto r = evaluate_dataset(ds, small_config(), {.repetitions = 3});
  EXPECT_EQ(r.protocol, "holdout");
  EXPECT_EQ(r.repetition_means.size(), 3u);
}

TEST(Pipeline, RepetitionSeeds) {
  EXPECT_EQ(repetition_seed(42, 0), 42u);
  EXPECT_NE(repetition_seed(42, 1), 42u);
  EXPECT_NE(repetition_seed(42, 1), repetition_seed(42, 2));
}

}  // namespace
}  // namespace hsge
