#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsge/classify.hpp"
#include "hsge/embedding.hpp"
#include "hsge/graph.hpp"
#include "hsge/hashing.hpp"
#include "json.hpp"

namespace hsge {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Datasets

struct Dataset {
  std::string name;
  std::vector<AttributedGraph> graphs;
  std::vector<int> classes;              // 0..C-1, per graph
  std::vector<std::string> class_names;  // original class label of each id
  std::vector<std::string> graph_ids;
  std::optional<Split> split;
  std::vector<std::string> warnings;

  std::size_t size() const { return graphs.size(); }
};

enum class DatasetFormat { kTud, kGxlCxl, kCtds, kJson };

std::string_view to_string(DatasetFormat f);
DatasetFormat parse_format(std::string_view tag);

/// Attribute handling for GXL graphs. Attributes named in a symbol list
/// become label tokens, those in a real list become attribute vectors (in
/// list order); anything else is reported once in Dataset::warnings.
struct GxlSchema {
  std::vector<std::string> node_symbols{"symbol", "type"};
  std::vector<std::string> node_reals{"x", "y"};
  std::vector<std::string> edge_symbols{"valence", "type"};
  std::vector<std::string> edge_reals;
  bool normalize_positions = true;  // zero mean, unit variance per graph
};

struct DatasetManifest {
  std::string name;
  DatasetFormat format = DatasetFormat::kTud;
  fs::path path;       // dataset directory, or file for the json format
  std::string prefix;  // TUD file prefix; defaults to the directory name
  GxlSchema gxl;
  std::map<std::string, std::string> node_label_map;
  std::map<std::string, std::string> edge_label_map;
  std::size_t subsample = 0;  // 0 = all graphs
  std::uint64_t subsample_seed = 0;
};

/// Reads a .toml or .json manifest. Relative paths resolve against the
/// manifest's directory. Throws ParseError / FormatError.
DatasetManifest load_manifest(const fs::path& file);

/// Dataset root: `flag` when given, else $HSGE_DATA_DIR, else "./data".
fs::path resolve_data_dir(const std::optional<std::string>& flag = std::nullopt);

/// Looks for `name` under `root`: a manifest file (name.toml / name.json) or
/// a directory whose files identify the format. Name matching ignores case.
std::optional<DatasetManifest> find_dataset(const std::string& name, const fs::path& root);

/// Manifest from a path that is either a manifest file or a dataset directory.
DatasetManifest manifest_for(const fs::path& path);

Dataset load_dataset(const DatasetManifest& manifest, std::size_t jobs = 1);

/// TUDataset text layout: <prefix>_A.txt, _graph_indicator.txt,
/// _graph_labels.txt and optional _node_labels, _edge_labels,
/// _node_attributes, _edge_attributes. Node ids are 1-based in the files.
Dataset load_tud(const fs::path& dir, std::string prefix = {});

/// IAM layout: train/valid/test .cxl indexes naming .gxl graph files.
Dataset load_gxl_cxl(const fs::path& dir, const GxlSchema& schema = {}, std::size_t jobs = 1);

/// GREYC chemistry layout: a .ds index of "<file>.ct <class>" lines.
Dataset load_ctds(const fs::path& dir, std::size_t jobs = 1);

Dataset load_json_dataset(const fs::path& file);
void save_json_dataset(const Dataset& ds, const fs::path& file);

/// Keeps n graphs, drawn per class in proportion to class size, in their
/// original order. The predefined split is dropped.
Dataset stratified_subsample(const Dataset& ds, std::size_t n, std::uint64_t seed);

struct DatasetStats {
  std::size_t graphs = 0;
  std::size_t classes = 0;
  std::vector<std::size_t> class_counts;  // by class id
  double avg_nodes = 0.0;
  double avg_edges = 0.0;  // undirected edges
  std::size_t node_labels = 0;  // distinct node symbol tokens
};

DatasetStats dataset_stats(const Dataset& ds);

// ---------------------------------------------------------------------------
// Graph and hierarchy JSON

Json graph_to_json(const AttributedGraph& g);
AttributedGraph graph_from_json(const Json& j);

/// {"format":"hsge-hierarchy","version":1,"level_sizes":[...],"levels":[...]}.
Json hierarchy_to_json(const HierarchicalGraph& h);
HierarchicalGraph hierarchy_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Embeddings

struct EmbeddingTable {
  std::vector<std::string> row_ids;
  DenseMatrix values;
  EmbeddingLayout layout;
  std::string config;  // resolved run configuration (JSON text)

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;
};

/// Text form: two '#' lines (format tag, config), a header of column names,
/// one row per graph with values printed to full precision.
void save_embeddings_csv(const EmbeddingTable& t, const fs::path& file);
EmbeddingTable load_embeddings_csv(const fs::path& file);

/// Binary form: "HSGEEMB1", format version, layout, row ids, f64 values.
void save_embeddings_binary(const EmbeddingTable& t, const fs::path& file);
EmbeddingTable load_embeddings_binary(const fs::path& file);

inline constexpr std::uint32_t kEmbeddingFormatVersion = 1;

// ---------------------------------------------------------------------------
// Vocabulary

/// `config`, when given, is written as a "config <json>" line after the tag.
void save_vocabulary(const GraphletVocabulary& v, const fs::path& file, const std::string& config = {});
GraphletVocabulary load_vocabulary(const fs::path& file);

// ---------------------------------------------------------------------------
// Reports

inline constexpr int kReportSchemaVersion = 1;

Json report_to_json(const EvalReport& r, const Json& config = Json::object());
EvalReport report_from_json(const Json& j);
/// Plain-text summary table.
std::string format_report(const EvalReport& r, const std::string& title = {});

// ---------------------------------------------------------------------------
// Files

std::string read_text(const fs::path& file);
/// Writes through a temporary file and renames it into place.
void write_text(const fs::path& file, const std::string& text);

}  // namespace hsge
