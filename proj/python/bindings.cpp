#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>

#include "hsge/errors.hpp"
#include "hsge/hierarchy.hpp"
#include "hsge/io.hpp"
#include "hsge/parallel.hpp"
#include "hsge/pipeline.hpp"

namespace py = pybind11;
using namespace hsge;

namespace {

std::size_t resolve_jobs(std::size_t jobs) { return jobs ? jobs : default_jobs(); }

AttributedGraph make_graph(std::size_t num_nodes, const std::vector<std::pair<NodeId, NodeId>>& edges,
                           std::optional<std::vector<std::string>> node_labels,
                           std::optional<std::vector<std::string>> edge_labels) {
  std::vector<Edge> e;
  e.reserve(edges.size());
  for (auto [u, v] : edges) e.push_back({u, v});
  if (!node_labels && !edge_labels) return AttributedGraph(num_nodes, e);
  std::vector<Label> nl(num_nodes), el;
  if (node_labels) {
    if (node_labels->size() != num_nodes) throw ParameterError("node_labels must have one entry per node");
    for (std::size_t i = 0; i < num_nodes; ++i) nl[i] = Label::symbol((*node_labels)[i]);
  }
  if (edge_labels) {
    if (edge_labels->size() != edges.size()) throw ParameterError("edge_labels must have one entry per edge");
    for (const auto& s : *edge_labels) el.push_back(Label::symbol(s));
  }
  return AttributedGraph(std::move(nl), std::move(e), std::move(el));
}

PipelineConfig make_config(const std::string& mode, std::size_t levels, double ratio, double delta,
                           std::optional<std::size_t> K, std::optional<std::size_t> k1, std::optional<std::size_t> k2,
                           std::size_t M, std::size_t T, std::uint64_t seed, bool labeled, std::size_t discretize_k,
                           const std::string& normalization, std::size_t jobs) {
  PipelineConfig c;
  c.hierarchy = {.levels = levels, .ratio = ratio, .delta = delta};
  const auto m = parse_mode(mode);
  const std::size_t k = K.value_or(m == EmbeddingMode::kBaseline ? 0 : levels);
  c.embedding = EmbeddingConfig::make(m, k, k1.value_or(k), k2.value_or(k), parse_normalization(normalization));
  c.sampler = {.restarts = M, .max_edges = T, .seed = seed};
  c.labeled = labeled;
  c.discretize_k = discretize_k;
  c.jobs = resolve_jobs(jobs);
  c.validate();
  c.sampler.validate();
  return c;
}

Dataset dataset_from_graphs(std::vector<AttributedGraph> graphs, const std::vector<int>& labels, std::string name) {
  if (graphs.size() != labels.size()) throw ParameterError("one class label per graph is required");
  Dataset ds;
  ds.name = std::move(name);
  ds.graphs = std::move(graphs);
  std::map<int, int> ids;
  for (int l : labels) ids.emplace(l, 0);
  int next = 0;
  for (auto& [label, id] : ids) {
    id = next++;
    ds.class_names.push_back(std::to_string(label));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ds.classes.push_back(ids.at(labels[i]));
    ds.graph_ids.push_back(std::to_string(i));
  }
  return ds;
}

py::dict embed(const Dataset& ds, const PipelineConfig& config) {
  std::vector<std::string> warnings;
  DatasetEmbedding e;
  {
    py::gil_scoped_release release;
    e = embed_dataset(ds, config, &warnings);
  }
  const auto& v = e.table.values;
  py::array_t<double> values({v.rows(), v.cols()});
  auto out = values.mutable_unchecked<2>();
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) out(i, j) = v(i, j);
  std::vector<std::string> columns, blocks;
  for (std::size_t j = 0; j < e.table.layout.dimension(); ++j) columns.push_back(e.table.layout.column_name(j));
  for (const auto& b : e.table.layout.blocks) blocks.push_back(b.name());
  py::dict d;
  d["values"] = values;
  d["row_ids"] = e.table.row_ids;
  d["columns"] = columns;
  d["blocks"] = blocks;
  d["vocabulary_codes"] = e.vocabulary.total_codes();
  d["edgeless_graphs"] = e.edgeless;
  d["warnings"] = warnings;
  return d;
}

std::string evaluate(const Dataset& ds, const PipelineConfig& config, std::size_t folds, std::size_t repetitions,
                     std::uint64_t seed, std::optional<std::vector<double>> c_grid, std::size_t jobs) {
  CvOptions cv;
  cv.folds = folds;
  cv.repetitions = repetitions;
  cv.seed = seed;
  if (c_grid) cv.c_grid = *c_grid;
  cv.jobs = resolve_jobs(jobs);
  return report_to_json(evaluate_dataset(ds, config, cv), config.to_json()).dump();
}

}  // namespace

PYBIND11_MODULE(_hsge, m) {
  m.doc() = "Hierarchical stochastic graphlet embedding";

  auto base = py::register_exception<Error>(m, "HsgeError", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<StateError>(m, "StateError", base.ptr());
  py::register_exception<DegenerateModelError>(m, "DegenerateModelError", base.ptr());

  py::class_<AttributedGraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("num_nodes"), py::arg("edges"), py::arg("node_labels") = py::none(),
           py::arg("edge_labels") = py::none())
      .def_property_readonly("num_nodes", &AttributedGraph::num_nodes)
      .def_property_readonly("num_edges", &AttributedGraph::num_edges)
      .def("to_json", [](const AttributedGraph& g) { return graph_to_json(g).dump(); })
      .def("__repr__", [](const AttributedGraph& g) {
        return "<Graph nodes=" + std::to_string(g.num_nodes()) + " edges=" + std::to_string(g.num_edges()) + ">";
      });

  py::class_<PipelineConfig>(m, "Config")
      .def(py::init(&make_config), py::kw_only(), py::arg("mode") = "exhaustive", py::arg("levels") = 2,
           py::arg("ratio") = 0.5, py::arg("delta") = 0.0, py::arg("K") = py::none(), py::arg("k1") = py::none(),
           py::arg("k2") = py::none(), py::arg("M") = 10000, py::arg("T") = 5, py::arg("seed") = 0,
           py::arg("labeled") = false, py::arg("discretize_k") = 10, py::arg("normalization") = "l1",
           py::arg("jobs") = 0)
      .def("to_json", [](const PipelineConfig& c) { return c.to_json().dump(); });

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("name", &Dataset::name)
      .def_readonly("classes", &Dataset::classes)
      .def_readonly("class_names", &Dataset::class_names)
      .def_readonly("graph_ids", &Dataset::graph_ids)
      .def_readonly("warnings", &Dataset::warnings)
      .def_readonly("graphs", &Dataset::graphs)
      .def_property_readonly("has_split", [](const Dataset& d) { return d.split.has_value(); })
      .def("__len__", &Dataset::size)
      .def("stats_json",
           [](const Dataset& d) {
             const auto s = dataset_stats(d);
             return Json{{"graphs", s.graphs},
                         {"classes", s.classes},
                         {"class_counts", s.class_counts},
                         {"avg_nodes", s.avg_nodes},
                         {"avg_edges", s.avg_edges},
                         {"node_labels", s.node_labels}}
                 .dump();
           })
      .def("subsample", &stratified_subsample, py::arg("n"), py::arg("seed") = 0);

  m.def(
      "load_dataset",
      [](const std::string& dataset, std::optional<std::string> data_dir, std::size_t jobs) {
        if (std::filesystem::exists(dataset)) return load_dataset(manifest_for(dataset), resolve_jobs(jobs));
        const auto root = resolve_data_dir(data_dir);
        const auto found = find_dataset(dataset, root);
        if (!found) throw ParseError("dataset '" + dataset + "' not found under " + root.string());
        return load_dataset(*found, resolve_jobs(jobs));
      },
      py::arg("dataset"), py::arg("data_dir") = py::none(), py::arg("jobs") = 0);
  m.def("dataset_from_graphs", &dataset_from_graphs, py::arg("graphs"), py::arg("labels"),
        py::arg("name") = "graphs");
  m.def("save_json_dataset", &save_json_dataset, py::arg("dataset"), py::arg("path"));
  m.def("embed", &embed, py::arg("dataset"), py::arg("config"));
  m.def("evaluate_json", &evaluate, py::arg("dataset"), py::arg("config"), py::arg("folds") = 10,
        py::arg("repetitions") = 1, py::arg("seed") = 0, py::arg("c_grid") = py::none(), py::arg("jobs") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "hierarchy_json",
      [](const AttributedGraph& g, std::size_t levels, double ratio, double delta) {
        return hierarchy_to_json(build_hierarchy(g, {.levels = levels, .ratio = ratio, .delta = delta})).dump();
      },
      py::arg("graph"), py::arg("levels") = 2, py::arg("ratio") = 0.5, py::arg("delta") = 0.0);
}
