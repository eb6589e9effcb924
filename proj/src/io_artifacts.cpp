#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hsge/errors.hpp"
#include "hsge/io.hpp"

namespace hsge {

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + file.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("write failed: " + file.string());
  }
  fs::rename(tmp, file);
}

// ---------------------------------------------------------------------------
// Graph / hierarchy JSON

namespace {

Json label_fields(Json j, const Label& l) {
  if (!l.symbols.empty()) j["symbols"] = l.symbols;
  if (!l.attributes.empty()) j["attributes"] = l.attributes;
  return j;
}

Label label_from(const Json& j) {
  Label l;
  if (j.contains("symbols")) l.symbols = j.at("symbols").get<std::vector<std::string>>();
  if (j.contains("attributes")) l.attributes = j.at("attributes").get<std::vector<double>>();
  return l;
}

}  // namespace

Json graph_to_json(const AttributedGraph& g) {
  Json nodes = Json::array(), edges = Json::array();
  for (const auto& l : g.node_labels()) nodes.push_back(label_fields(Json::object(), l));
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    edges.push_back(label_fields(Json{{"u", g.edge(e).u}, {"v", g.edge(e).v}}, g.edge_label(e)));
  return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

AttributedGraph graph_from_json(const Json& j) {
  try {
    std::vector<Label> nodes;
    for (const auto& n : j.at("nodes")) nodes.push_back(label_from(n));
    std::vector<Edge> edges;
    std::vector<Label> labels;
    for (const auto& e : j.at("edges")) {
      edges.push_back(Edge::make(e.at("u").get<NodeId>(), e.at("v").get<NodeId>()));
      labels.push_back(label_from(e));
    }
    return AttributedGraph(std::move(nodes), std::move(edges), std::move(labels));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
}

Json hierarchy_to_json(const HierarchicalGraph& h) {
  Json sizes = Json::array(), levels = Json::array();
  for (std::size_t l = 0; l < h.num_levels(); ++l) {
    sizes.push_back(h.level(l).num_nodes());
    Json level{{"level", l}, {"graph", graph_to_json(h.level(l))}};
    if (l < h.top_level()) {
      const auto p = h.parents(l);
      level["parents"] = std::vector<NodeId>(p.begin(), p.end());
    }
    levels.push_back(std::move(level));
  }
  return Json{{"format", "hsge-hierarchy"}, {"version", 1}, {"level_sizes", std::move(sizes)},
              {"levels", std::move(levels)}};
}

HierarchicalGraph hierarchy_from_json(const Json& j) {
  if (j.value("format", "") != "hsge-hierarchy") throw FormatError("not an hsge-hierarchy document");
  if (j.value("version", 0) != 1) throw FormatError("unsupported hierarchy version " + j.value("version", Json()).dump());
  try {
    const auto& levels = j.at("levels");
    if (levels.empty()) throw FormatError("hierarchy without levels");
    HierarchicalGraph h(graph_from_json(levels.at(0).at("graph")));
    for (std::size_t l = 1; l < levels.size(); ++l)
      h.push_level(graph_from_json(levels[l].at("graph")), levels[l - 1].at("parents").get<std::vector<NodeId>>());
    return h;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad hierarchy JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Embeddings, text

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw FormatError("line " + std::to_string(line_no) + ": unterminated quote");
  out.push_back(std::move(cur));
  return out;
}

constexpr std::string_view kCsvTag = "# hsge-embeddings v";

EmbeddingLayout layout_from_columns(std::span<const std::string> names) {
  EmbeddingLayout layout;
  for (const auto& name : names) {
    const auto s1 = name.find('/'), s2 = name.rfind('/');
    if (s1 == std::string::npos || s1 == s2 || name.compare(s1 + 1, 1, "t") != 0)
      throw FormatError("bad column name '" + name + "'");
    const auto block = SliceDescriptor::parse(name.substr(0, s1));
    const auto size = std::stoull(name.substr(s1 + 2, s2 - s1 - 2));
    const auto bin_text = name.substr(s2 + 1);
    std::int64_t bin = -1;
    if (bin_text != "overflow") {
      if (bin_text.empty() || bin_text[0] != 'b') throw FormatError("bad column name '" + name + "'");
      bin = std::stoll(bin_text.substr(1));
    }
    auto it = std::find(layout.blocks.begin(), layout.blocks.end(), block);
    if (it == layout.blocks.end()) {
      layout.blocks.push_back(block);
      it = layout.blocks.end() - 1;
    }
    layout.coordinates.push_back({static_cast<std::size_t>(it - layout.blocks.begin()), size, bin});
    layout.max_size = std::max<std::size_t>(layout.max_size, size);
  }
  return layout;
}

}  // namespace

void save_embeddings_csv(const EmbeddingTable& t, const fs::path& file) {
  if (t.values.cols() != t.layout.dimension() || t.values.rows() != t.row_ids.size())
    throw ParameterError("embedding table shape does not match its layout or ids");
  std::string out;
  out += kCsvTag;
  out += std::to_string(kEmbeddingFormatVersion) + "\n";
  out += "# config: " + Json(t.config).dump() + "\n";
  out += "id";
  for (std::size_t c = 0; c < t.layout.dimension(); ++c) out += "," + t.layout.column_name(c);
  out += "\n";
  for (std::size_t r = 0; r < t.values.rows(); ++r) {
    out += csv_field(t.row_ids[r]);
    for (auto v : t.values.row(r)) {
      out += ',';
      out += format_double(v);
    }
    out += "\n";
  }
  write_text(file, out);
}

EmbeddingTable load_embeddings_csv(const fs::path& file) {
  std::istringstream in(read_text(file));
  std::string line;
  auto next = [&](std::size_t n) {
    if (!std::getline(in, line)) throw FormatError(file.string() + ": truncated at line " + std::to_string(n));
  };
  next(1);
  if (line.rfind(kCsvTag, 0) != 0) throw FormatError(file.string() + ": not an hsge embedding CSV");
  if (line.substr(kCsvTag.size()) != std::to_string(kEmbeddingFormatVersion))
    throw FormatError(file.string() + ": unsupported embedding format version " + line.substr(kCsvTag.size()));
  EmbeddingTable t;
  next(2);
  if (line.rfind("# config: ", 0) != 0) throw FormatError(file.string() + ": missing config line");
  try {
    t.config = Json::parse(line.substr(10)).get<std::string>();
  } catch (const Json::exception& e) {
    throw FormatError(file.string() + ": bad config line: " + e.what());
  }
  next(3);
  auto header = csv_split(line, 3);
  if (header.empty() || header[0] != "id") throw FormatError(file.string() + ": missing header");
  t.layout = layout_from_columns(std::span(header).subspan(1));
  std::vector<std::vector<double>> rows;
  for (std::size_t n = 4; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    auto fields = csv_split(line, n);
    if (fields.size() != header.size())
      throw FormatError(file.string() + ":" + std::to_string(n) + ": expected " + std::to_string(header.size()) +
                        " fields, found " + std::to_string(fields.size()));
    t.row_ids.push_back(fields[0]);
    std::vector<double> row(fields.size() - 1);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto& f = fields[c];
      const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), row[c - 1]);
      if (ec != std::errc() || p != f.data() + f.size())
        throw FormatError(file.string() + ":" + std::to_string(n) + ": bad number '" + f + "'");
    }
    rows.push_back(std::move(row));
  }
  t.values = rows.empty() ? DenseMatrix(0, t.layout.dimension()) : DenseMatrix::from_rows(rows);
  return t;
}

// ---------------------------------------------------------------------------
// Embeddings, binary

namespace {

constexpr char kBinaryMagic[8] = {'H', 'S', 'G', 'E', 'E', 'M', 'B', '1'};

class Writer {
 public:
  template <typename T>
  void put(T v) {
    const auto* p = reinterpret_cast<const char*>(&v);
    buf_.append(p, sizeof v);
  }
  void str(const std::string& s) {
    put<std::uint64_t>(s.size());
    buf_ += s;
  }
  void raw(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(std::string data, std::string name) : data_(std::move(data)), name_(std::move(name)) {}
  template <typename T>
  T get() {
    T v;
    std::memcpy(&v, take(sizeof v), sizeof v);
    return v;
  }
  std::string str() {
    const auto n = get<std::uint64_t>();
    const char* p = take(n);
    return std::string(p, n);
  }
  const char* take(std::uint64_t n) {
    if (n > data_.size() - pos_) throw FormatError(name_ + ": truncated file");
    const char* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string data_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_embeddings_binary(const EmbeddingTable& t, const fs::path& file) {
  if (t.values.cols() != t.layout.dimension() || t.values.rows() != t.row_ids.size())
    throw ParameterError("embedding table shape does not match its layout or ids");
  Writer w;
  w.raw(kBinaryMagic, sizeof kBinaryMagic);
  w.put<std::uint32_t>(kEmbeddingFormatVersion);
  w.str(t.config);
  w.put<std::uint64_t>(t.layout.blocks.size());
  for (const auto& b : t.layout.blocks) w.str(b.name());
  w.put<std::uint64_t>(t.layout.max_size);
  w.put<std::uint64_t>(t.layout.coordinates.size());
  for (const auto& c : t.layout.coordinates) {
    w.put<std::uint64_t>(c.block);
    w.put<std::uint64_t>(c.size);
    w.put<std::int64_t>(c.bin);
  }
  w.put<std::uint64_t>(t.values.rows());
  for (const auto& id : t.row_ids) w.str(id);
  for (std::size_t r = 0; r < t.values.rows(); ++r) w.raw(t.values.row(r).data(), t.values.cols() * sizeof(double));
  write_text(file, w.data());
}

EmbeddingTable load_embeddings_binary(const fs::path& file) {
  Reader r(read_text(file), file.string());
  if (std::memcmp(r.take(sizeof kBinaryMagic), kBinaryMagic, sizeof kBinaryMagic) != 0)
    throw FormatError(file.string() + ": not an hsge binary embedding file");
  const auto version = r.get<std::uint32_t>();
  if (version != kEmbeddingFormatVersion)
    throw FormatError(file.string() + ": unsupported embedding format version " + std::to_string(version));
  EmbeddingTable t;
  t.config = r.str();
  const auto nblocks = r.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < nblocks; ++i) {
    try {
      t.layout.blocks.push_back(SliceDescriptor::parse(r.str()));
    } catch (const ParseError& e) {
      throw FormatError(file.string() + ": " + e.what());
    }
  }
  t.layout.max_size = r.get<std::uint64_t>();
  const auto ncoords = r.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < ncoords; ++i) {
    Coordinate c;
    c.block = r.get<std::uint64_t>();
    c.size = r.get<std::uint64_t>();
    c.bin = r.get<std::int64_t>();
    if (c.block >= nblocks) throw FormatError(file.string() + ": coordinate references a missing block");
    t.layout.coordinates.push_back(c);
  }
  const auto rows = r.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < rows; ++i) t.row_ids.push_back(r.str());
  t.values = DenseMatrix(rows, ncoords);
  for (std::uint64_t i = 0; i < rows; ++i)
    std::memcpy(t.values.row(i).data(), r.take(ncoords * sizeof(double)), ncoords * sizeof(double));
  if (!r.done()) throw FormatError(file.string() + ": trailing bytes after embedding data");
  return t;
}

// ---------------------------------------------------------------------------
// Vocabulary

namespace {
constexpr std::string_view kVocabTag = "hsge-vocabulary v";
}

void save_vocabulary(const GraphletVocabulary& v, const fs::path& file, const std::string& config) {
  std::string out;
  out += kVocabTag;
  out += "1\n";
  if (!config.empty()) out += "config " + config + "\n";
  out += "finalized " + std::string(v.finalized() ? "1" : "0") + "\n";
  out += "sizes " + std::to_string(v.max_size()) + "\n";
  for (std::size_t t = 1; t <= v.max_size(); ++t) {
    const auto& codes = v.codes(t);
    for (std::size_t b = 0; b < codes.size(); ++b)
      out += std::to_string(t) + "\t" + std::to_string(b) + "\t" + codes[b].serialize() + "\n";
  }
  write_text(file, out);
}

GraphletVocabulary load_vocabulary(const fs::path& file) {
  std::istringstream in(read_text(file));
  std::string line;
  auto fail = [&](std::size_t n, const std::string& what) -> void {
    throw FormatError(file.string() + ":" + std::to_string(n) + ": " + what);
  };
  if (!std::getline(in, line) || line.rfind(kVocabTag, 0) != 0) fail(1, "not an hsge vocabulary file");
  if (line.substr(kVocabTag.size()) != "1") fail(1, "unsupported vocabulary version " + line.substr(kVocabTag.size()));
  bool finalized = false;
  std::size_t sizes = 0, skip = 0;
  bool got = static_cast<bool>(std::getline(in, line));
  if (got && line.rfind("config ", 0) == 0) {
    skip = 1;
    got = static_cast<bool>(std::getline(in, line));
  }
  if (!got || (line != "finalized 0" && line != "finalized 1")) fail(2 + skip, "missing finalized flag");
  finalized = line.back() == '1';
  if (!std::getline(in, line) || line.rfind("sizes ", 0) != 0) fail(3 + skip, "missing size count");
  try {
    sizes = std::stoull(line.substr(6));
  } catch (const std::exception&) {
    fail(3 + skip, "bad size count");
  }

  GraphletVocabulary v;
  v.ensure_size(sizes);
  std::vector<std::vector<HashCode>> expected(sizes);
  for (std::size_t n = 4 + skip; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto a = line.find('\t'), b = line.find('\t', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) fail(n, "expected size<TAB>bin<TAB>code");
    std::size_t t = 0, bin = 0;
    try {
      t = std::stoull(line.substr(0, a));
      bin = std::stoull(line.substr(a + 1, b - a - 1));
    } catch (const std::exception&) {
      fail(n, "bad size or bin");
    }
    if (t == 0 || t > sizes) fail(n, "size out of range");
    HashCode code;
    try {
      code = HashCode::parse(line.substr(b + 1));
    } catch (const Error& e) {
      fail(n, e.what());
    }
    if (bin != expected[t - 1].size() || v.insert(t, code) != bin) fail(n, "bins out of order or duplicated");
    expected[t - 1].push_back(std::move(code));
  }
  if (finalized) {
    v.finalize();
    for (std::size_t t = 1; t <= sizes; ++t)
      if (v.codes(t) != expected[t - 1]) throw FormatError(file.string() + ": finalized bins are not in code order");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Reports

Json report_to_json(const EvalReport& r, const Json& config) {
  return Json{{"schema_version", kReportSchemaVersion},
              {"protocol", r.protocol},
              {"mean_accuracy", r.mean_accuracy},
              {"std_accuracy", r.std_accuracy},
              {"fold_std", r.fold_std},
              {"folds", r.folds},
              {"seed", r.seed},
              {"repetition_means", r.repetition_means},
              {"fold_accuracies", r.fold_accuracies},
              {"chosen_c", r.chosen_c},
              {"config", config}};
}

EvalReport report_from_json(const Json& j) {
  const auto version = j.value("schema_version", -1);
  if (version != kReportSchemaVersion) throw FormatError("unsupported report schema version " + std::to_string(version));
  try {
    EvalReport r;
    r.protocol = j.at("protocol").get<std::string>();
    r.mean_accuracy = j.at("mean_accuracy").get<double>();
    r.std_accuracy = j.at("std_accuracy").get<double>();
    r.fold_std = j.at("fold_std").get<double>();
    r.folds = j.at("folds").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.repetition_means = j.at("repetition_means").get<std::vector<double>>();
    r.fold_accuracies = j.at("fold_accuracies").get<std::vector<std::vector<double>>>();
    r.chosen_c = j.at("chosen_c").get<std::vector<std::vector<double>>>();
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad report JSON: ") + e.what());
  }
}

std::string format_report(const EvalReport& r, const std::string& title) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  if (!title.empty()) out << title << "\n";
  out << "protocol   " << r.protocol << "\n";
  out << "accuracy   " << r.mean_accuracy << " +/- " << r.std_accuracy << " (%)\n";
  if (r.protocol == "cv") {
    out << "folds      " << r.folds << " x " << r.fold_accuracies.size() << " repetition(s), fold std " << r.fold_std
        << "\n";
    for (std::size_t i = 0; i < r.fold_accuracies.size(); ++i) {
      out << "rep " << std::setw(2) << i << "     mean " << std::setw(6) << r.repetition_means[i] << " | folds";
      for (auto a : r.fold_accuracies[i]) out << " " << std::setw(6) << a;
      out << "\n";
    }
  } else if (!r.chosen_c.empty() && !r.chosen_c[0].empty()) {
    out << "C          " << r.chosen_c[0][0] << "\n";
  }
  return out.str();
}

}  // namespace hsge
