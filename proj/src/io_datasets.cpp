#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "hsge/errors.hpp"
#include "hsge/io.hpp"
#include "hsge/parallel.hpp"
#include "hsge/rng.hpp"
#include "toml.hpp"

namespace hsge {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

struct LineFile {
  fs::path path;
  std::vector<std::string> lines;  // non-empty lines
  std::vector<std::size_t> line_no;

  [[noreturn]] void fail(std::size_t i, const std::string& what) const {
    throw ParseError(path.filename().string() + ":" + std::to_string(line_no[i]) + ": " + what);
  }
};

LineFile read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  LineFile f{path, {}, {}};
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    auto t = trim(line);
    if (t.empty()) continue;
    f.lines.push_back(std::move(t));
    f.line_no.push_back(n);
  }
  return f;
}

std::int64_t int_field(const LineFile& f, std::size_t i, const std::string& field) {
  std::int64_t v = 0;
  if (!parse_number(field, v)) f.fail(i, "expected an integer, got '" + field + "'");
  return v;
}

std::vector<double> real_fields(const LineFile& f, std::size_t i) {
  std::vector<double> out;
  for (const auto& s : split_fields(f.lines[i], ',')) {
    double v = 0.0;
    if (!parse_real(s, v)) f.fail(i, "expected a real number, got '" + s + "'");
    out.push_back(v);
  }
  return out;
}

/// Class ids in natural order: numerically when every name is an integer.
std::pair<std::vector<int>, std::vector<std::string>> index_classes(const std::vector<std::string>& raw) {
  std::vector<std::string> names(raw.begin(), raw.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& s) {
    double v = 0.0;
    return parse_real(s, v);
  });
  if (numeric)
    std::stable_sort(names.begin(), names.end(),
                     [](const std::string& a, const std::string& b) { return std::stod(a) < std::stod(b); });
  std::map<std::string, int> id;
  for (std::size_t i = 0; i < names.size(); ++i) id[names[i]] = static_cast<int>(i);
  std::vector<int> classes;
  classes.reserve(raw.size());
  for (const auto& r : raw) classes.push_back(id.at(r));
  return {std::move(classes), std::move(names)};
}

std::string number_token(std::string s) {
  // "1.0" and "1" name the same discrete label.
  double v = 0.0;
  if (parse_real(s, v) && v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  return s;
}

}  // namespace

std::string_view to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::kTud: return "tud";
    case DatasetFormat::kGxlCxl: return "gxl-cxl";
    case DatasetFormat::kCtds: return "ct-ds";
    case DatasetFormat::kJson: return "json";
  }
  return "?";
}

DatasetFormat parse_format(std::string_view tag) {
  const auto t = lower(std::string(tag));
  if (t == "tud") return DatasetFormat::kTud;
  if (t == "gxl-cxl" || t == "gxl" || t == "iam") return DatasetFormat::kGxlCxl;
  if (t == "ct-ds" || t == "ct" || t == "greyc") return DatasetFormat::kCtds;
  if (t == "json") return DatasetFormat::kJson;
  throw FormatError("unknown dataset format '" + std::string(tag) + "'");
}

// ---------------------------------------------------------------------------
// TUD

Dataset load_tud(const fs::path& dir, std::string prefix) {
  if (prefix.empty()) prefix = dir.filename().string();
  auto file = [&](const char* suffix) { return dir / (prefix + "_" + suffix + ".txt"); };
  for (const char* required : {"A", "graph_indicator", "graph_labels"})
    if (!fs::exists(file(required))) throw ParseError("missing TUD file " + file(required).string());

  Dataset ds;
  ds.name = prefix;

  const auto indicator = read_lines(file("graph_indicator"));
  const auto num_nodes = indicator.lines.size();
  std::vector<std::size_t> graph_of(num_nodes), local_id(num_nodes);
  std::size_t num_graphs = 0;
  for (std::size_t i = 0; i < num_nodes; ++i) {
    const auto g = int_field(indicator, i, indicator.lines[i]);
    if (g < 1) indicator.fail(i, "graph ids are 1-based");
    graph_of[i] = static_cast<std::size_t>(g - 1);
    num_graphs = std::max(num_graphs, graph_of[i] + 1);
  }

  const auto labels = read_lines(file("graph_labels"));
  if (labels.lines.size() != num_graphs)
    throw ParseError(labels.path.filename().string() + ": " + std::to_string(labels.lines.size()) +
                     " graph labels for " + std::to_string(num_graphs) + " graphs in the indicator file");
  std::vector<std::string> raw_classes;
  for (std::size_t i = 0; i < labels.lines.size(); ++i)
    raw_classes.push_back(std::to_string(int_field(labels, i, labels.lines[i])));

  std::vector<std::vector<Label>> nodes(num_graphs);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    local_id[i] = nodes[graph_of[i]].size();
    nodes[graph_of[i]].emplace_back();
  }

  if (fs::exists(file("node_labels"))) {
    const auto f = read_lines(file("node_labels"));
    if (f.lines.size() != num_nodes)
      throw ParseError(f.path.filename().string() + ": " + std::to_string(f.lines.size()) + " node labels for " +
                       std::to_string(num_nodes) + " nodes");
    for (std::size_t i = 0; i < num_nodes; ++i)
      nodes[graph_of[i]][local_id[i]].symbols.push_back(std::to_string(int_field(f, i, split_fields(f.lines[i], ',')[0])));
  }
  if (fs::exists(file("node_attributes"))) {
    const auto f = read_lines(file("node_attributes"));
    if (f.lines.size() != num_nodes)
      throw ParseError(f.path.filename().string() + ": " + std::to_string(f.lines.size()) +
                       " attribute rows for " + std::to_string(num_nodes) + " nodes");
    for (std::size_t i = 0; i < num_nodes; ++i) nodes[graph_of[i]][local_id[i]].attributes = real_fields(f, i);
  }

  const auto adjacency = read_lines(file("A"));
  std::optional<LineFile> edge_labels, edge_attributes;
  if (fs::exists(file("edge_labels"))) edge_labels = read_lines(file("edge_labels"));
  if (fs::exists(file("edge_attributes"))) edge_attributes = read_lines(file("edge_attributes"));
  for (const auto* f : {edge_labels ? &*edge_labels : nullptr, edge_attributes ? &*edge_attributes : nullptr})
    if (f && f->lines.size() != adjacency.lines.size())
      throw ParseError(f->path.filename().string() + ": " + std::to_string(f->lines.size()) + " rows for " +
                       std::to_string(adjacency.lines.size()) + " adjacency entries");

  std::vector<std::vector<Edge>> edges(num_graphs);
  std::vector<std::vector<Label>> edge_label_lists(num_graphs);
  std::size_t self_loops = 0;
  for (std::size_t i = 0; i < adjacency.lines.size(); ++i) {
    const auto fields = split_fields(adjacency.lines[i], ',');
    if (fields.size() != 2) adjacency.fail(i, "expected 'u, v'");
    const auto a = int_field(adjacency, i, fields[0]), b = int_field(adjacency, i, fields[1]);
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > num_nodes || static_cast<std::size_t>(b) > num_nodes)
      adjacency.fail(i, "node id out of range 1.." + std::to_string(num_nodes));
    const auto u = static_cast<std::size_t>(a - 1), v = static_cast<std::size_t>(b - 1);
    if (graph_of[u] != graph_of[v])
      adjacency.fail(i, "edge joins graphs " + std::to_string(graph_of[u] + 1) + " and " +
                            std::to_string(graph_of[v] + 1));
    if (u == v) {
      ++self_loops;
      continue;
    }
    Label label;
    if (edge_labels) label.symbols.push_back(std::to_string(int_field(*edge_labels, i, split_fields(edge_labels->lines[i], ',')[0])));
    if (edge_attributes) label.attributes = real_fields(*edge_attributes, i);
    const auto g = graph_of[u];
    edges[g].push_back(Edge::make(static_cast<NodeId>(local_id[u]), static_cast<NodeId>(local_id[v])));
    edge_label_lists[g].push_back(std::move(label));
  }
  if (self_loops) ds.warnings.push_back("dropped " + std::to_string(self_loops) + " self-loop entries");

  for (std::size_t g = 0; g < num_graphs; ++g) {
    ds.graphs.emplace_back(std::move(nodes[g]), std::move(edges[g]), std::move(edge_label_lists[g]));
    ds.graph_ids.push_back(std::to_string(g + 1));
  }
  std::tie(ds.classes, ds.class_names) = index_classes(raw_classes);
  return ds;
}

// ---------------------------------------------------------------------------
// GXL / CXL

namespace pt = boost::property_tree;

namespace {

struct GxlGraph {
  AttributedGraph graph;
  std::set<std::string> unknown;
};

std::string attr_text(const pt::ptree& attr) {
  for (const auto& [tag, child] : attr)
    if (tag != "<xmlattr>") return trim(child.get_value<std::string>());
  return trim(attr.get_value<std::string>());
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

Label read_attrs(const pt::ptree& element, const std::vector<std::string>& symbols,
                 const std::vector<std::string>& reals, std::set<std::string>& unknown, const fs::path& file) {
  std::map<std::string, std::string> values;
  for (const auto& [tag, child] : element) {
    if (tag != "attr") continue;
    values[child.get<std::string>("<xmlattr>.name", "")] = attr_text(child);
  }
  Label label;
  for (const auto& name : symbols)
    if (auto it = values.find(name); it != values.end()) label.symbols.push_back(number_token(it->second));
  for (const auto& name : reals) {
    auto it = values.find(name);
    if (it == values.end()) continue;
    double v = 0.0;
    if (!parse_real(it->second, v))
      throw ParseError(file.filename().string() + ": attribute '" + name + "' is not a number: '" + it->second + "'");
    label.attributes.push_back(v);
  }
  for (const auto& [name, v] : values)
    if (!contains(symbols, name) && !contains(reals, name)) unknown.insert(name);
  return label;
}

GxlGraph read_gxl(const fs::path& file, const GxlSchema& schema) {
  pt::ptree tree;
  try {
    pt::read_xml(file.string(), tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(file.string() + ": malformed XML: " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  const auto graph_node = tree.get_child_optional("gxl.graph");
  if (!graph_node) throw ParseError(file.string() + ": no <gxl><graph> element");

  GxlGraph out;
  std::map<std::string, NodeId> ids;
  std::vector<Label> nodes;
  std::vector<Edge> edges;
  std::vector<Label> edge_labels;
  for (const auto& [tag, child] : *graph_node) {
    if (tag == "node") {
      const auto id = child.get<std::string>("<xmlattr>.id", "");
      if (!ids.emplace(id, static_cast<NodeId>(nodes.size())).second)
        throw ParseError(file.string() + ": duplicate node id '" + id + "'");
      nodes.push_back(read_attrs(child, schema.node_symbols, schema.node_reals, out.unknown, file));
    }
  }
  for (const auto& [tag, child] : *graph_node) {
    if (tag != "edge") continue;
    const auto from = child.get<std::string>("<xmlattr>.from", "");
    const auto to = child.get<std::string>("<xmlattr>.to", "");
    const auto a = ids.find(from), b = ids.find(to);
    if (a == ids.end() || b == ids.end())
      throw ParseError(file.string() + ": edge references unknown node '" + (a == ids.end() ? from : to) + "'");
    if (a->second == b->second) continue;
    edges.push_back(Edge::make(a->second, b->second));
    edge_labels.push_back(read_attrs(child, schema.edge_symbols, schema.edge_reals, out.unknown, file));
  }

  if (schema.normalize_positions && !nodes.empty()) {
    for (const char* axis : {"x", "y"}) {
      const auto it = std::find(schema.node_reals.begin(), schema.node_reals.end(), axis);
      if (it == schema.node_reals.end()) continue;
      const auto col = static_cast<std::size_t>(it - schema.node_reals.begin());
      if (!std::all_of(nodes.begin(), nodes.end(), [&](const Label& l) { return l.attributes.size() > col; }))
        continue;
      double mean = 0.0, var = 0.0;
      for (const auto& l : nodes) mean += l.attributes[col];
      mean /= static_cast<double>(nodes.size());
      for (const auto& l : nodes) var += (l.attributes[col] - mean) * (l.attributes[col] - mean);
      const double sd = std::sqrt(var / static_cast<double>(nodes.size()));
      for (auto& l : nodes) l.attributes[col] = sd > 0 ? (l.attributes[col] - mean) / sd : 0.0;
    }
  }
  out.graph = AttributedGraph(std::move(nodes), std::move(edges), std::move(edge_labels));
  return out;
}

std::vector<std::pair<std::string, std::string>> read_cxl(const fs::path& file) {
  pt::ptree tree;
  try {
    pt::read_xml(file.string(), tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(file.string() + ": malformed XML: " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  const auto prints = tree.get_child_optional("GraphCollection.fingerprints");
  if (!prints) throw ParseError(file.string() + ": no <GraphCollection><fingerprints> element");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [tag, child] : *prints) {
    if (tag != "print") continue;
    out.emplace_back(child.get<std::string>("<xmlattr>.file", ""), child.get<std::string>("<xmlattr>.class", ""));
    if (out.back().first.empty()) throw ParseError(file.string() + ": <print> without a file attribute");
  }
  return out;
}

std::optional<fs::path> first_existing(const fs::path& dir, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (fs::exists(dir / n)) return dir / n;
  return std::nullopt;
}

}  // namespace

Dataset load_gxl_cxl(const fs::path& dir, const GxlSchema& schema, std::size_t jobs) {
  const auto train = first_existing(dir, {"train.cxl", "training.cxl"});
  const auto valid = first_existing(dir, {"valid.cxl", "validation.cxl", "val.cxl"});
  const auto test = first_existing(dir, {"test.cxl"});
  if (!train || !test) throw ParseError("missing train/test .cxl index in " + dir.string());

  Dataset ds;
  ds.name = dir.filename().string();
  Split split;
  std::vector<std::pair<std::string, std::string>> entries;
  auto take = [&](const std::optional<fs::path>& f, std::vector<std::size_t>& rows) {
    if (!f) return;
    for (auto& e : read_cxl(*f)) {
      rows.push_back(entries.size());
      entries.push_back(std::move(e));
    }
  };
  take(train, split.train);
  take(valid, split.validation);
  take(test, split.test);

  std::vector<GxlGraph> parsed(entries.size());
  parallel_for(entries.size(), jobs, [&](std::size_t i) { parsed[i] = read_gxl(dir / entries[i].first, schema); });

  std::set<std::string> unknown;
  std::vector<std::string> raw_classes;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    unknown.insert(parsed[i].unknown.begin(), parsed[i].unknown.end());
    ds.graphs.push_back(std::move(parsed[i].graph));
    ds.graph_ids.push_back(fs::path(entries[i].first).stem().string());
    raw_classes.push_back(entries[i].second);
  }
  for (const auto& name : unknown) ds.warnings.push_back("ignored unknown attribute '" + name + "'");
  std::tie(ds.classes, ds.class_names) = index_classes(raw_classes);
  ds.split = std::move(split);
  return ds;
}

// ---------------------------------------------------------------------------
// GREYC ct/ds

namespace {

AttributedGraph read_ct(const fs::path& file) {
  const auto f = read_lines(file);
  std::size_t i = 0;
  auto counts = [&](std::size_t k, std::int64_t& atoms, std::int64_t& bonds) {
    if (k >= f.lines.size()) return false;
    const auto t = split_ws(f.lines[k]);
    return t.size() >= 2 && parse_number(t[0], atoms) && parse_number(t[1], bonds);
  };
  std::int64_t atoms = 0, bonds = 0;
  if (!counts(0, atoms, bonds)) {
    i = 1;  // title line
    if (!counts(1, atoms, bonds)) throw ParseError(file.string() + ": missing atom/bond count line");
  }
  ++i;
  if (atoms < 0 || bonds < 0 || i + static_cast<std::size_t>(atoms + bonds) > f.lines.size())
    throw ParseError(file.string() + ": file shorter than its atom/bond counts");
  std::vector<Label> nodes;
  for (std::int64_t a = 0; a < atoms; ++a, ++i) {
    const auto t = split_ws(f.lines[i]);
    if (t.empty()) f.fail(i, "empty atom line");
    nodes.push_back(Label::symbol(t.size() >= 4 ? t[3] : t.back()));
  }
  std::vector<Edge> edges;
  std::vector<Label> labels;
  for (std::int64_t b = 0; b < bonds; ++b, ++i) {
    const auto t = split_ws(f.lines[i]);
    if (t.size() < 3) f.fail(i, "expected 'atom atom order'");
    const auto u = int_field(f, i, t[0]), v = int_field(f, i, t[1]);
    if (u < 1 || v < 1 || u > atoms || v > atoms) f.fail(i, "atom index out of range");
    if (u == v) continue;
    edges.push_back(Edge::make(static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)));
    labels.push_back(Label::symbol(t[2]));
  }
  return AttributedGraph(std::move(nodes), std::move(edges), std::move(labels));
}

}  // namespace

Dataset load_ctds(const fs::path& dir, std::size_t jobs) {
  std::optional<fs::path> index = first_existing(dir, {"dataset.ds"});
  if (!index) {
    std::vector<fs::path> found;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".ds") found.push_back(e.path());
    std::sort(found.begin(), found.end());
    if (found.empty()) throw ParseError("no .ds index in " + dir.string());
    index = found.front();
  }
  const auto f = read_lines(*index);
  std::vector<std::pair<std::string, std::string>> entries;
  for (std::size_t i = 0; i < f.lines.size(); ++i) {
    if (f.lines[i][0] == '#') continue;
    const auto t = split_ws(f.lines[i]);
    if (t.size() < 2) f.fail(i, "expected '<file> <class>'");
    entries.emplace_back(t[0], number_token(t[1]));
  }
  Dataset ds;
  ds.name = dir.filename().string();
  ds.graphs.resize(entries.size());
  parallel_for(entries.size(), jobs, [&](std::size_t i) { ds.graphs[i] = read_ct(dir / entries[i].first); });
  std::vector<std::string> raw;
  for (const auto& [file, cls] : entries) {
    ds.graph_ids.push_back(fs::path(file).stem().string());
    raw.push_back(cls);
  }
  std::tie(ds.classes, ds.class_names) = index_classes(raw);
  return ds;
}

// ---------------------------------------------------------------------------
// JSON dataset

Dataset load_json_dataset(const fs::path& file) {
  Json j;
  try {
    j = Json::parse(read_text(file));
  } catch (const Json::parse_error& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  if (j.value("format", "") != "hsge-dataset") throw FormatError(file.string() + ": not an hsge-dataset file");
  if (j.value("version", 0) != 1)
    throw FormatError(file.string() + ": unsupported dataset version " + j.value("version", Json()).dump());
  Dataset ds;
  try {
    ds.name = j.value("name", file.stem().string());
    std::vector<std::string> raw;
    for (const auto& g : j.at("graphs")) {
      ds.graphs.push_back(graph_from_json(g));
      ds.graph_ids.push_back(g.value("id", std::to_string(ds.graph_ids.size())));
      raw.push_back(g.at("class").is_string() ? g.at("class").get<std::string>() : g.at("class").dump());
    }
    std::tie(ds.classes, ds.class_names) = index_classes(raw);
    if (j.contains("split")) {
      const auto& s = j.at("split");
      ds.split = Split{s.at("train").get<std::vector<std::size_t>>(), s.at("validation").get<std::vector<std::size_t>>(),
                       s.at("test").get<std::vector<std::size_t>>()};
    }
  } catch (const Json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return ds;
}

void save_json_dataset(const Dataset& ds, const fs::path& file) {
  Json j;
  j["format"] = "hsge-dataset";
  j["version"] = 1;
  j["name"] = ds.name;
  Json graphs = Json::array();
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
    Json g = graph_to_json(ds.graphs[i]);
    g["id"] = i < ds.graph_ids.size() ? ds.graph_ids[i] : std::to_string(i);
    g["class"] = ds.class_names.empty() ? std::to_string(ds.classes[i]) : ds.class_names[ds.classes[i]];
    graphs.push_back(std::move(g));
  }
  j["graphs"] = std::move(graphs);
  if (ds.split) j["split"] = {{"train", ds.split->train}, {"validation", ds.split->validation}, {"test", ds.split->test}};
  write_text(file, j.dump(1) + "\n");
}

// ---------------------------------------------------------------------------
// Manifests and discovery

namespace {

Json toml_to_json(const toml::node& n) {
  if (const auto* t = n.as_table()) {
    Json j = Json::object();
    for (const auto& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v);
    return j;
  }
  if (const auto* a = n.as_array()) {
    Json j = Json::array();
    for (const auto& v : *a) j.push_back(toml_to_json(v));
    return j;
  }
  if (auto v = n.value_exact<std::string>()) return *v;
  if (auto v = n.value_exact<std::int64_t>()) return *v;
  if (auto v = n.value_exact<double>()) return *v;
  if (auto v = n.value_exact<bool>()) return *v;
  throw FormatError("unsupported TOML value type");
}

DatasetManifest manifest_from_json(const Json& j, const fs::path& base) {
  DatasetManifest m;
  try {
    m.name = j.at("name").get<std::string>();
    m.format = parse_format(j.value("format", "tud"));
    fs::path p = j.value("path", m.name);
    m.path = p.is_absolute() ? p : base / p;
    m.prefix = j.value("prefix", "");
    auto list = [&](const char* key, std::vector<std::string>& out) {
      if (j.contains(key)) out = j.at(key).get<std::vector<std::string>>();
    };
    list("node_symbols", m.gxl.node_symbols);
    list("node_reals", m.gxl.node_reals);
    list("edge_symbols", m.gxl.edge_symbols);
    list("edge_reals", m.gxl.edge_reals);
    m.gxl.normalize_positions = j.value("normalize_positions", true);
    if (j.contains("label_map")) {
      const auto& lm = j.at("label_map");
      if (lm.contains("node")) m.node_label_map = lm.at("node").get<std::map<std::string, std::string>>();
      if (lm.contains("edge")) m.edge_label_map = lm.at("edge").get<std::map<std::string, std::string>>();
    }
    m.subsample = j.value("subsample", std::size_t{0});
    m.subsample_seed = j.value("subsample_seed", std::uint64_t{0});
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad manifest: ") + e.what());
  }
  return m;
}

std::optional<DatasetManifest> detect_directory(const fs::path& dir, const std::string& name, int depth) {
  if (!fs::is_directory(dir)) return std::nullopt;
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir)) entries.push_back(e.path());
  std::sort(entries.begin(), entries.end());
  DatasetManifest m;
  m.name = name;
  m.path = dir;
  for (const auto& p : entries) {
    const auto f = p.filename().string();
    if (ends_with(f, "_graph_indicator.txt")) {
      m.format = DatasetFormat::kTud;
      m.prefix = f.substr(0, f.size() - std::string("_graph_indicator.txt").size());
      return m;
    }
  }
  for (const auto& p : entries) {
    if (p.extension() == ".cxl") {
      m.format = DatasetFormat::kGxlCxl;
      return m;
    }
    if (p.extension() == ".ds") {
      m.format = DatasetFormat::kCtds;
      return m;
    }
    if (p.filename() == "dataset.json") {
      m.format = DatasetFormat::kJson;
      m.path = p;
      return m;
    }
  }
  if (depth > 0)
    for (const auto& p : entries)
      if (auto sub = detect_directory(p, name, depth - 1)) return sub;
  return std::nullopt;
}

}  // namespace

DatasetManifest load_manifest(const fs::path& file) {
  const auto base = file.parent_path();
  if (file.extension() == ".json") {
    try {
      return manifest_from_json(Json::parse(read_text(file)), base);
    } catch (const Json::parse_error& e) {
      throw ParseError(file.string() + ": " + e.what());
    }
  }
  try {
    const auto table = toml::parse(read_text(file), file.string());
    return manifest_from_json(toml_to_json(table), base);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << file.string() << ":" << e.source().begin.line << ": " << e.description();
    throw ParseError(msg.str());
  }
}

fs::path resolve_data_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("HSGE_DATA_DIR"); env && *env) return env;
  return "data";
}

std::optional<DatasetManifest> find_dataset(const std::string& name, const fs::path& root) {
  if (!fs::is_directory(root)) return std::nullopt;
  const auto want = lower(name);
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(root)) entries.push_back(e.path());
  std::sort(entries.begin(), entries.end());
  for (const auto& p : entries) {
    if (fs::is_regular_file(p) && lower(p.stem().string()) == want &&
        (p.extension() == ".toml" || p.extension() == ".json"))
      return load_manifest(p);
  }
  for (const auto& p : entries) {
    const auto n = lower(p.filename().string());
    if (n == want || n == want + "_dataset")
      if (auto m = detect_directory(p, name, 2)) return m;
  }
  return std::nullopt;
}

DatasetManifest manifest_for(const fs::path& path) {
  if (fs::is_regular_file(path)) {
    if (path.extension() == ".toml") return load_manifest(path);
    if (path.extension() == ".json") {
      const auto text = read_text(path);
      if (text.find("\"hsge-dataset\"") != std::string::npos) {
        DatasetManifest m;
        m.name = path.stem().string();
        m.format = DatasetFormat::kJson;
        m.path = path;
        return m;
      }
      return load_manifest(path);
    }
    throw FormatError(path.string() + ": expected a .toml or .json manifest");
  }
  if (auto m = detect_directory(path, path.filename().string(), 2)) return *m;
  throw FormatError("cannot recognise a dataset at " + path.string());
}

Dataset load_dataset(const DatasetManifest& m, std::size_t jobs) {
  Dataset ds;
  switch (m.format) {
    case DatasetFormat::kTud: ds = load_tud(m.path, m.prefix); break;
    case DatasetFormat::kGxlCxl: ds = load_gxl_cxl(m.path, m.gxl, jobs); break;
    case DatasetFormat::kCtds: ds = load_ctds(m.path, jobs); break;
    case DatasetFormat::kJson: ds = load_json_dataset(m.path); break;
  }
  if (!m.name.empty()) ds.name = m.name;
  if (!m.node_label_map.empty() || !m.edge_label_map.empty()) {
    auto relabel = [](std::span<const Label> in, const std::map<std::string, std::string>& map) {
      std::vector<Label> out(in.begin(), in.end());
      for (auto& l : out)
        for (auto& s : l.symbols)
          if (auto it = map.find(s); it != map.end()) s = it->second;
      return out;
    };
    for (auto& g : ds.graphs)
      g = AttributedGraph(relabel(g.node_labels(), m.node_label_map), {g.edges().begin(), g.edges().end()},
                          relabel(g.edge_labels(), m.edge_label_map));
  }
  if (m.subsample > 0 && m.subsample < ds.size()) ds = stratified_subsample(ds, m.subsample, m.subsample_seed);
  return ds;
}

Dataset stratified_subsample(const Dataset& ds, std::size_t n, std::uint64_t seed) {
  if (n >= ds.size()) {
    Dataset copy = ds;
    copy.split.reset();
    return copy;
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < ds.size(); ++i) by_class[ds.classes[i]].push_back(i);
  // Largest-remainder apportionment of n over the classes.
  std::vector<std::pair<double, int>> remainders;
  std::map<int, std::size_t> quota;
  std::size_t assigned = 0;
  for (const auto& [c, rows] : by_class) {
    const double exact = static_cast<double>(n) * static_cast<double>(rows.size()) / static_cast<double>(ds.size());
    quota[c] = static_cast<std::size_t>(exact);
    assigned += quota[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++quota[remainders[i % remainders.size()].second];

  Rng rng(seed);
  std::vector<std::size_t> keep;
  for (auto& [c, rows] : by_class) {
    for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);
    keep.insert(keep.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(std::min(quota[c], rows.size())));
  }
  std::sort(keep.begin(), keep.end());

  Dataset out;
  out.name = ds.name;
  out.class_names = ds.class_names;
  out.warnings = ds.warnings;
  for (auto i : keep) {
    out.graphs.push_back(ds.graphs[i]);
    out.classes.push_back(ds.classes[i]);
    if (i < ds.graph_ids.size()) out.graph_ids.push_back(ds.graph_ids[i]);
  }
  return out;
}

DatasetStats dataset_stats(const Dataset& ds) {
  DatasetStats s;
  s.graphs = ds.size();
  std::set<std::string> labels;
  double nodes = 0.0, edges = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto c = static_cast<std::size_t>(ds.classes[i]);
    if (c >= s.class_counts.size()) s.class_counts.resize(c + 1, 0);
    ++s.class_counts[c];
    nodes += static_cast<double>(ds.graphs[i].num_nodes());
    edges += static_cast<double>(ds.graphs[i].num_edges());
    for (const auto& l : ds.graphs[i].node_labels())
      if (!l.symbols.empty()) labels.insert(l.symbol_token());
  }
  s.classes = static_cast<std::size_t>(std::count_if(s.class_counts.begin(), s.class_counts.end(),
                                                     [](std::size_t n) { return n > 0; }));
  if (s.graphs) {
    s.avg_nodes = nodes / static_cast<double>(s.graphs);
    s.avg_edges = edges / static_cast<double>(s.graphs);
  }
  s.node_labels = labels.size();
  return s;
}

}  // namespace hsge
