#include "hsge/pipeline.hpp"

#include <cmath>
#include <mutex>

#include "hsge/errors.hpp"
#include "hsge/parallel.hpp"
#include "hsge/rng.hpp"

namespace hsge {

void PipelineConfig::validate() const {
  hierarchy.validate();
  embedding.validate();
  sampler.validate();
  if (embedding.levels > hierarchy.levels)
    throw ParameterError("embedding uses K = " + std::to_string(embedding.levels) + " levels but the hierarchy has L = " +
                         std::to_string(hierarchy.levels));
  if (labeled && discretize_k == 0) throw ParameterError("discretization needs k >= 1");
}

Json PipelineConfig::to_json() const {
  return Json{{"mode", to_string(embedding.mode)},
              {"L", hierarchy.levels},
              {"r", hierarchy.ratio},
              {"delta", hierarchy.delta},
              {"K", embedding.levels},
              {"k1", embedding.slice_span},
              {"k2", embedding.union_span},
              {"normalization", to_string(embedding.normalization)},
              {"M", sampler.restarts},
              {"T", sampler.max_edges},
              {"seed", sampler.seed},
              {"labeled", labeled},
              {"discretize_k", discretize_k}};
}

std::vector<AttributedGraph> prepare_graphs(const Dataset& ds, const PipelineConfig& config,
                                            std::vector<std::string>* warnings) {
  if (!config.labeled) {
    std::vector<AttributedGraph> out;
    out.reserve(ds.size());
    for (const auto& g : ds.graphs) out.emplace_back(g.num_nodes(), g.edges());
    return out;
  }
  const bool continuous = std::any_of(ds.graphs.begin(), ds.graphs.end(),
                                      [](const AttributedGraph& g) { return g.has_continuous_attributes(); });
  if (!continuous) return ds.graphs;
  auto result = discretize_attributes(ds.graphs, config.discretize_k, derive_seed(config.sampler.seed, "discretize"));
  if (warnings) warnings->insert(warnings->end(), result.warnings.begin(), result.warnings.end());
  return std::move(result.graphs);
}

HierarchicalGraph graph_hierarchy(const AttributedGraph& g, const PipelineConfig& config) {
  if (config.embedding.levels == 0 || g.empty()) return pad_hierarchy(HierarchicalGraph(g), config.embedding.levels);
  HierarchyParams p = config.hierarchy;
  p.levels = config.embedding.levels;
  return pad_hierarchy(build_hierarchy(g, p), config.embedding.levels);
}

std::vector<HierarchicalGraph> dataset_hierarchies(std::span<const AttributedGraph> graphs,
                                                   const PipelineConfig& config) {
  std::vector<HierarchicalGraph> out(graphs.size());
  parallel_for(graphs.size(), config.jobs, [&](std::size_t i) { out[i] = graph_hierarchy(graphs[i], config); });
  return out;
}

std::vector<GraphCodes> dataset_codes(std::span<const HierarchicalGraph> hierarchies, const PipelineConfig& config,
                                      std::uint64_t seed) {
  std::vector<GraphCodes> codes(hierarchies.size());
  SamplerParams sampler = config.sampler;
  sampler.seed = seed;
  parallel_for(hierarchies.size(), config.jobs, [&](std::size_t i) {
    codes[i] = collect_codes(hierarchies[i], config.embedding, sampler, config.labeled);
  });
  return codes;
}

FoldData embed_fold(std::span<const GraphCodes> codes, const PipelineConfig& config,
                    std::span<const std::size_t> train, std::span<const std::size_t> test) {
  const auto vocab = build_vocabulary(codes, train);
  const auto layout = EmbeddingLayout::make(embedding_blocks(config.embedding), vocab, config.sampler.max_edges);
  auto fill = [&](std::span<const std::size_t> rows) {
    DenseMatrix m(rows.size(), layout.dimension());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto v = embed_codes(codes[rows[i]], layout, vocab, config.embedding.normalization);
      std::copy(v.begin(), v.end(), m.row(i).begin());
    }
    return m;
  };
  return {fill(train), fill(test)};
}

DatasetEmbedding embed_dataset(const Dataset& ds, const PipelineConfig& config, std::vector<std::string>* warnings) {
  config.validate();
  const auto graphs = prepare_graphs(ds, config, warnings);
  const auto codes = dataset_codes(dataset_hierarchies(graphs, config), config, config.sampler.seed);

  DatasetEmbedding out;
  out.vocabulary = build_vocabulary(codes);
  out.table.layout = EmbeddingLayout::make(embedding_blocks(config.embedding), out.vocabulary, config.sampler.max_edges);
  out.table.values = DenseMatrix(codes.size(), out.table.layout.dimension());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const auto v = embed_codes(codes[i], out.table.layout, out.vocabulary, config.embedding.normalization);
    std::copy(v.begin(), v.end(), out.table.values.row(i).begin());
    out.edgeless += codes[i].edgeless;
    out.table.row_ids.push_back(i < ds.graph_ids.size() ? ds.graph_ids[i] : std::to_string(i));
  }
  if (out.edgeless && warnings)
    warnings->push_back(std::to_string(out.edgeless) + " edgeless graph(s); their base-level histograms are zero");
  return out;
}

namespace {

double mean(std::span<const double> xs) {
  double s = 0.0;
  for (auto x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (auto x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::uint64_t repetition_seed(std::uint64_t seed, std::size_t r) {
  return r == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(r));
}

EvalReport evaluate_dataset(const Dataset& ds, const PipelineConfig& config, CvOptions cv,
                            std::vector<std::string>* warnings) {
  config.validate();
  const auto hierarchies = dataset_hierarchies(prepare_graphs(ds, config, warnings), config);
  cv.seed = config.sampler.seed;

  const std::size_t reps = cv.repetitions;
  if (reps == 0) throw ParameterError("need at least one repetition");
  std::vector<std::vector<GraphCodes>> codes(reps);
  std::vector<std::once_flag> ready(reps);
  // Sampling runs inside the fold jobs, so the graph loop stays sequential there.
  PipelineConfig inner = config;
  inner.jobs = cv.jobs > 1 ? 1 : config.jobs;
  auto codes_for = [&](std::size_t r) -> const std::vector<GraphCodes>& {
    std::call_once(ready[r], [&] { codes[r] = dataset_codes(hierarchies, inner, repetition_seed(config.sampler.seed, r)); });
    return codes[r];
  };
  const FoldFeaturizer featurizer = [&](std::size_t r, std::span<const std::size_t> train,
                                        std::span<const std::size_t> test) {
    return embed_fold(codes_for(r), config, train, test);
  };

  if (ds.split) {
    EvalReport report;
    for (std::size_t r = 0; r < reps; ++r) {
      const FoldFeaturizer rep_features = [&](std::size_t, std::span<const std::size_t> train,
                                              std::span<const std::size_t> test) { return featurizer(r, train, test); };
      const auto one = holdout_eval(rep_features, ds.classes, *ds.split, cv.c_grid);
      report.repetition_means.push_back(one.mean_accuracy);
      report.fold_accuracies.push_back(one.fold_accuracies.at(0));
      report.chosen_c.push_back(one.chosen_c.at(0));
    }
    report.protocol = "holdout";
    report.folds = 1;
    report.seed = cv.seed;
    report.mean_accuracy = mean(report.repetition_means);
    report.std_accuracy = report.fold_std = sample_std(report.repetition_means);
    return report;
  }
  return cross_validate(featurizer, ds.classes, cv);
}

}  // namespace hsge
