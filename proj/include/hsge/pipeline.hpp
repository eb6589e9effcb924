#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hsge/classify.hpp"
#include "hsge/embedding.hpp"
#include "hsge/hierarchy.hpp"
#include "hsge/io.hpp"
#include "hsge/sampler.hpp"

namespace hsge {

/// Everything needed to turn a dataset into embeddings.
struct PipelineConfig {
  HierarchyParams hierarchy;
  EmbeddingConfig embedding = EmbeddingConfig::make(EmbeddingMode::kExhaustive, 2, 2, 2);
  SamplerParams sampler;
  bool labeled = false;
  std::size_t discretize_k = 10;  // clusters per continuous attribute space
  std::size_t jobs = 1;

  /// Throws ParameterError on invalid or inconsistent values (K > L).
  void validate() const;
  Json to_json() const;
};

/// Graphs as the embedding sees them: labels stripped for topology-only
/// runs, continuous attributes discretized for labeled runs.
std::vector<AttributedGraph> prepare_graphs(const Dataset& ds, const PipelineConfig& config,
                                            std::vector<std::string>* warnings = nullptr);

/// Hierarchy of one graph under `config`, padded to K levels when
/// construction stopped early.
HierarchicalGraph graph_hierarchy(const AttributedGraph& g, const PipelineConfig& config);

std::vector<HierarchicalGraph> dataset_hierarchies(std::span<const AttributedGraph> graphs,
                                                   const PipelineConfig& config);

/// Sampled codes of every hierarchy with sampler seed `seed`.
std::vector<GraphCodes> dataset_codes(std::span<const HierarchicalGraph> hierarchies, const PipelineConfig& config,
                                      std::uint64_t seed);

/// Vocabulary from `train` rows, then every row of `rows` embedded with it.
FoldData embed_fold(std::span<const GraphCodes> codes, const PipelineConfig& config,
                    std::span<const std::size_t> train, std::span<const std::size_t> test);

struct DatasetEmbedding {
  GraphletVocabulary vocabulary;
  EmbeddingTable table;
  std::size_t edgeless = 0;
};

/// Embeds the whole dataset with a vocabulary learned from all graphs.
DatasetEmbedding embed_dataset(const Dataset& ds, const PipelineConfig& config,
                               std::vector<std::string>* warnings = nullptr);

/// Repetition r samples with derive_seed(seed, r) (r = 0 keeps `seed`) and
/// rebuilds the vocabulary per fold from training graphs only.
EvalReport evaluate_dataset(const Dataset& ds, const PipelineConfig& config, CvOptions cv,
                            std::vector<std::string>* warnings = nullptr);

/// Sampling seed of repetition r.
std::uint64_t repetition_seed(std::uint64_t seed, std::size_t r);

}  // namespace hsge
