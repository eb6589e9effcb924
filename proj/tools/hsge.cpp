// hsge: embed, evaluate and inspect graph datasets from the command line.
//
//   hsge embed    --dataset mutag.toml --mode exhaustive --levels 2 --ratio 0.5 --M 10000 --T 5 --seed 7
//   hsge evaluate --dataset MAO --repeat 10 --emit-plot-data T=3..7
//   hsge inspect  --dataset MUTAG --graph 3
//
// Exit codes: 0 ok, 2 configuration error, 3 data error, 4 runtime error.
// Failures print one JSON object on stderr.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hsge/errors.hpp"
#include "hsge/io.hpp"
#include "hsge/parallel.hpp"
#include "hsge/pipeline.hpp"

namespace {

using namespace hsge;

enum ExitCode { kOk = 0, kConfigError = 2, kDataError = 3, kRuntimeError = 4 };

struct DataError : Error {
  using Error::Error;
};

struct RunOptions {
  std::string dataset;
  std::optional<std::string> data_dir;
  std::size_t subsample = 0;
  std::string mode = "exhaustive";
  std::size_t levels = 2;
  std::optional<std::size_t> K, k1, k2;
  std::optional<double> ratio, reduction;
  double delta = 0.0;
  std::string normalization = "l1";
  std::size_t M = 10000, T = 5;
  bool labeled = false;
  std::size_t discretize_k = 10;
  std::uint64_t seed = 0;
  std::size_t folds = 10;
  std::size_t repeat = 1;
  std::vector<double> c_grid{0.01, 0.1, 1.0, 10.0, 100.0};
  std::vector<std::string> plot;
  std::size_t graph = 0;
  std::string out = "hsge-out";
  std::size_t jobs = 0;
};

void add_common(CLI::App& cmd, RunOptions& o) {
  cmd.add_option("--dataset", o.dataset, "manifest file, dataset directory, or name under the data dir")->required();
  cmd.add_option("--data-dir", o.data_dir, "dataset root (default $HSGE_DATA_DIR, then ./data)");
  cmd.add_option("--subsample", o.subsample, "stratified subsample of N graphs (0 = all)");
  cmd.add_option("--mode", o.mode, "baseline | pyramidal | generalized-pyramidal | hierarchical | exhaustive");
  cmd.add_option("--levels,-L", o.levels, "hierarchy levels above the base graph");
  cmd.add_option("--K", o.K, "levels used by the embedding (default L)");
  cmd.add_option("--k1", o.k1, "slice span (default K)");
  cmd.add_option("--k2", o.k2, "union span (default K)");
  auto* r = cmd.add_option("--ratio,-r", o.ratio, "nodes kept per level, in (0, 1]");
  cmd.add_option("--reduction,-R", o.reduction, "reduction factor, ratio = 1/R")->excludes(r);
  cmd.add_option("--delta", o.delta, "connection-ratio threshold for abstract edges");
  cmd.add_option("--normalization", o.normalization, "l1 | raw");
  cmd.add_option("--M", o.M, "sampler restarts per block");
  cmd.add_option("--T", o.T, "maximum graphlet edges");
  cmd.add_flag("--labeled", o.labeled, "use node and edge labels");
  cmd.add_option("--discretize-k", o.discretize_k, "clusters per continuous attribute space");
  cmd.add_option("--seed", o.seed, "sampling and fold seed");
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
}

PipelineConfig pipeline_config(const RunOptions& o) {
  PipelineConfig c;
  c.hierarchy.levels = o.levels;
  c.hierarchy.ratio = o.reduction ? HierarchyParams::ratio_from_reduction(*o.reduction) : o.ratio.value_or(0.5);
  c.hierarchy.delta = o.delta;
  const auto mode = parse_mode(o.mode);
  const bool slices = mode == EmbeddingMode::kHierarchical || mode == EmbeddingMode::kExhaustive;
  const bool unions = mode == EmbeddingMode::kGeneralizedPyramidal || mode == EmbeddingMode::kExhaustive;
  if (o.k1 && *o.k1 && !slices) throw ParameterError("--k1 is not used by " + o.mode + " mode");
  if (o.k2 && *o.k2 && !unions) throw ParameterError("--k2 is not used by " + o.mode + " mode");
  if (o.K && *o.K && mode == EmbeddingMode::kBaseline) throw ParameterError("--K must be 0 in baseline mode");
  const std::size_t K = o.K.value_or(mode == EmbeddingMode::kBaseline ? 0 : o.levels);
  c.embedding = EmbeddingConfig::make(mode, K, o.k1.value_or(K), o.k2.value_or(K), parse_normalization(o.normalization));
  c.sampler = {.restarts = o.M, .max_edges = o.T, .seed = o.seed};
  c.labeled = o.labeled;
  c.discretize_k = o.discretize_k;
  c.jobs = o.jobs ? o.jobs : default_jobs();
  c.validate();
  c.sampler.validate();
  return c;
}

CvOptions cv_options(const RunOptions& o) {
  if (o.repeat == 0) throw ParameterError("--repeat must be at least 1");
  CvOptions cv;
  cv.folds = o.folds;
  cv.c_grid = o.c_grid;
  cv.repetitions = o.repeat;
  cv.seed = o.seed;
  cv.jobs = o.jobs ? o.jobs : default_jobs();
  return cv;
}

std::string describe_mode(const PipelineConfig& c) {
  return std::string(to_string(c.embedding.mode)) + (c.labeled ? ", labeled" : ", unlabeled");
}

// Resolved configuration written into every output. Thread count is left out.
Json config_echo(const RunOptions& o, const PipelineConfig& c, const Dataset& ds) {
  Json j = c.to_json();
  j["dataset"] = ds.name;
  j["graphs"] = ds.size();
  j["subsample"] = o.subsample;
  j["folds"] = o.folds;
  j["repetitions"] = o.repeat;
  j["c_grid"] = o.c_grid;
  return j;
}

Dataset load(const RunOptions& o) {
  DatasetManifest m;
  if (fs::exists(o.dataset)) {
    m = manifest_for(o.dataset);
  } else if (auto found = find_dataset(o.dataset, resolve_data_dir(o.data_dir))) {
    m = *found;
  } else {
    throw DataError("dataset '" + o.dataset + "' is neither a path nor a dataset under " +
                    resolve_data_dir(o.data_dir).string());
  }
  auto ds = load_dataset(m, o.jobs ? o.jobs : default_jobs());
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << "\n";
  if (ds.size() == 0) throw DataError("dataset '" + ds.name + "' has no graphs");
  if (o.subsample) ds = stratified_subsample(ds, o.subsample, o.seed);
  return ds;
}

fs::path output(const RunOptions& o, const Dataset& ds, const std::string& suffix) {
  fs::create_directories(o.out);
  return fs::path(o.out) / (ds.name + "." + suffix);
}

class Clock {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void print_written(const std::vector<fs::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

// embed -----------------------------------------------------------------------

int cmd_embed(const RunOptions& o) {
  const auto config = pipeline_config(o);
  Clock clock;
  const auto ds = load(o);
  const double load_s = clock.lap();
  const auto echo = config_echo(o, config, ds);
  std::vector<std::string> warnings;
  auto e = embed_dataset(ds, config, &warnings);
  const double embed_s = clock.lap();
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  e.table.config = echo.dump();

  const std::vector<fs::path> files{output(o, ds, "embeddings.csv"), output(o, ds, "embeddings.bin"),
                                    output(o, ds, "vocabulary.tsv"), output(o, ds, "embed.json"),
                                    output(o, ds, "embed.timings.json")};
  save_embeddings_csv(e.table, files[0]);
  save_embeddings_binary(e.table, files[1]);
  save_vocabulary(e.vocabulary, files[2], echo.dump());
  Json blocks = Json::array();
  for (const auto& b : e.table.layout.blocks) blocks.push_back(b.name());
  Json summary{{"config", echo},
               {"dimension", e.table.layout.dimension()},
               {"blocks", blocks},
               {"vocabulary_codes", e.vocabulary.total_codes()},
               {"edgeless_graphs", e.edgeless},
               {"warnings", warnings}};
  write_text(files[3], summary.dump(2) + "\n");
  write_text(files[4], Json{{"load_seconds", load_s}, {"embed_seconds", embed_s}}.dump(2) + "\n");
  std::cout << ds.name << ": " << ds.size() << " graphs, dimension " << e.table.layout.dimension() << ", "
            << e.vocabulary.total_codes() << " vocabulary codes\n";
  print_written(files);
  return kOk;
}

// evaluate --------------------------------------------------------------------

struct Sweep {
  std::string param;  // levels | T | R | r
  std::vector<double> values;
};

// "levels=1..4", "T=3..7", "R=1.5,2,3".
Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParameterError("plot sweep '" + text + "' must look like name=a..b or name=a,b");
  Sweep s{text.substr(0, eq), {}};
  if (s.param == "L") s.param = "levels";
  if (s.param != "levels" && s.param != "T" && s.param != "R" && s.param != "r")
    throw ParameterError("plot sweep parameter must be levels, T, R or r, got '" + s.param + "'");
  const std::string rest = text.substr(eq + 1);
  try {
    if (const auto dots = rest.find(".."); dots != std::string::npos) {
      const long a = std::stol(rest.substr(0, dots)), b = std::stol(rest.substr(dots + 2));
      if (a > b) throw ParameterError("empty range in '" + text + "'");
      for (long v = a; v <= b; ++v) s.values.push_back(static_cast<double>(v));
    } else {
      std::stringstream in(rest);
      for (std::string item; std::getline(in, item, ',');) s.values.push_back(std::stod(item));
    }
  } catch (const std::logic_error&) {
    throw ParameterError("bad value list in plot sweep '" + text + "'");
  }
  if (s.values.empty()) throw ParameterError("plot sweep '" + text + "' has no values");
  return s;
}

PipelineConfig swept(const RunOptions& o, const Sweep& s, double v) {
  RunOptions p = o;
  if (s.param == "levels") {
    p.levels = static_cast<std::size_t>(v);
    p.K = p.k1 = p.k2 = std::nullopt;
  } else if (s.param == "T") {
    p.T = static_cast<std::size_t>(v);
  } else if (s.param == "R") {
    p.ratio.reset();
    p.reduction = v;
  } else {
    p.reduction.reset();
    p.ratio = v;
  }
  return pipeline_config(p);
}

std::string number(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

int cmd_evaluate(const RunOptions& o) {
  const auto config = pipeline_config(o);
  const auto cv = cv_options(o);
  std::vector<Sweep> sweeps;
  for (const auto& text : o.plot) sweeps.push_back(parse_sweep(text));
  for (const auto& s : sweeps)
    for (double v : s.values) swept(o, s, v);

  Clock clock;
  const auto ds = load(o);
  Json timings{{"load_seconds", clock.lap()}};
  const auto echo = config_echo(o, config, ds);
  std::vector<std::string> warnings;
  const auto report = evaluate_dataset(ds, config, cv, &warnings);
  timings["evaluate_seconds"] = clock.lap();
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  std::vector<fs::path> files{output(o, ds, "report.json"), output(o, ds, "report.txt")};
  auto j = report_to_json(report, echo);
  j["warnings"] = warnings;
  write_text(files[0], j.dump(2) + "\n");
  const auto table = format_report(report, ds.name + " (" + describe_mode(config) + ")");
  write_text(files[1], table + "config " + echo.dump() + "\n");
  std::cout << table;

  for (const auto& s : sweeps) {
    std::string csv = "# config " + echo.dump() + "\n" + s.param + ",mean_accuracy,std_accuracy\n";
    for (double v : s.values) {
      const auto r = evaluate_dataset(ds, swept(o, s, v), cv);
      csv += number(v) + "," + number(r.mean_accuracy) + "," + number(r.std_accuracy) + "\n";
      std::cout << s.param << "=" << number(v) << ": " << number(r.mean_accuracy) << "%\n";
    }
    timings["plot_" + s.param + "_seconds"] = clock.lap();
    files.push_back(output(o, ds, "plot-" + s.param + ".csv"));
    write_text(files.back(), csv);
  }
  files.push_back(output(o, ds, "evaluate.timings.json"));
  write_text(files.back(), timings.dump(2) + "\n");
  print_written(files);
  return kOk;
}

// inspect ---------------------------------------------------------------------

int cmd_inspect(const RunOptions& o) {
  const auto config = pipeline_config(o);
  const auto ds = load(o);
  if (o.graph >= ds.size())
    throw ParameterError("--graph " + std::to_string(o.graph) + " out of range for " + std::to_string(ds.size()) +
                         " graphs");
  const auto echo = config_echo(o, config, ds);
  const auto graphs = prepare_graphs(ds, config);
  const auto h = graph_hierarchy(graphs[o.graph], config);

  Json hj = hierarchy_to_json(h);
  std::cout << "graph " << o.graph << " (id " << ds.graph_ids.at(o.graph) << ") hierarchy, nodes per level:";
  for (std::size_t l = 0; l < h.num_levels(); ++l) std::cout << " " << h.level(l).num_nodes();
  std::cout << "\n";

  const auto e = embed_dataset(ds, config);
  Json vocab = Json::array();
  std::cout << "vocabulary (all graphs):\n  size  codes\n";
  for (std::size_t t = 1; t <= e.vocabulary.max_size(); ++t) {
    vocab.push_back({{"size", t}, {"codes", e.vocabulary.bin_count(t)}});
    std::cout << "  " << std::setw(4) << t << "  " << std::setw(5) << e.vocabulary.bin_count(t) << "\n";
  }
  std::cout << "  total " << e.vocabulary.total_codes() << "\n";

  const std::vector<fs::path> files{output(o, ds, "graph" + std::to_string(o.graph) + ".hierarchy.json"),
                                    output(o, ds, "inspect.json")};
  write_text(files[0], Json{{"config", echo}, {"graph", ds.graph_ids.at(o.graph)}, {"hierarchy", hj}}.dump(2) + "\n");
  write_text(files[1], Json{{"config", echo},
                            {"graph", ds.graph_ids.at(o.graph)},
                            {"level_sizes", hj.at("level_sizes")},
                            {"vocabulary", vocab},
                            {"vocabulary_codes", e.vocabulary.total_codes()}}
                                .dump(2) + "\n");
  print_written(files);
  return kOk;
}

// Flat TOML keys apply to the subcommand being run; [embed]-style sections still work.
class RunConfigFile : public CLI::ConfigTOML {
 public:
  explicit RunConfigFile(std::string command) : command_(std::move(command)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    for (auto& item : items)
      if (item.parents.empty() && !command_.empty()) item.parents = {command_};
    return items;
  }

 private:
  std::string command_;
};

std::string command_in(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    for (const char* c : {"embed", "evaluate", "inspect"})
      if (std::string_view(argv[i]) == c) return c;
  return {};
}

// errors ----------------------------------------------------------------------

int report_error(int code, const std::string& kind, const std::string& type, const std::string& message) {
  std::cerr << Json{{"status", "error"}, {"exit_code", code}, {"kind", kind}, {"type", type}, {"message", message}}
                   .dump()
            << std::endl;
  return code;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParameterError& e) {
    return report_error(kConfigError, "config", "ParameterError", e.what());
  } catch (const RangeError& e) {
    return report_error(kConfigError, "config", "RangeError", e.what());
  } catch (const DataError& e) {
    return report_error(kDataError, "data", "DataError", e.what());
  } catch (const ParseError& e) {
    return report_error(kDataError, "data", "ParseError", e.what());
  } catch (const FormatError& e) {
    return report_error(kDataError, "data", "FormatError", e.what());
  } catch (const fs::filesystem_error& e) {
    return report_error(kDataError, "data", "FilesystemError", e.what());
  } catch (const Error& e) {
    return report_error(kRuntimeError, "runtime", "Error", e.what());
  } catch (const std::exception& e) {
    return report_error(kRuntimeError, "runtime", "Exception", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical stochastic graphlet embedding"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML run configuration; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.config_formatter(std::make_shared<RunConfigFile>(command_in(argc, argv)));

  RunOptions o;
  auto* embed = app.add_subcommand("embed", "embed every graph of a dataset");
  auto* evaluate = app.add_subcommand("evaluate", "cross-validate or hold-out evaluate a dataset");
  auto* inspect = app.add_subcommand("inspect", "dump one graph's hierarchy and the vocabulary summary");
  for (auto* cmd : {embed, evaluate, inspect}) {
    cmd->fallthrough();
    add_common(*cmd, o);
  }
  evaluate->add_option("--folds", o.folds, "cross-validation folds");
  evaluate->add_option("--repeat", o.repeat, "reseeded repetitions");
  evaluate->add_option("--c-grid", o.c_grid, "SVM C values")->delimiter(',');
  evaluate->add_option("--emit-plot-data", o.plot, "sweep, e.g. levels=1..4, T=3..7, R=1,2,3");
  inspect->add_option("--graph", o.graph, "graph index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(kConfigError, "config", "CommandLineError", e.what());
  }

  if (*embed) return guarded([&] { return cmd_embed(o); });
  if (*evaluate) return guarded([&] { return cmd_evaluate(o); });
  return guarded([&] { return cmd_inspect(o); });
}
