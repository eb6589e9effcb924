#include "hsge/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "hsge/centrality.hpp"
#include "hsge/errors.hpp"
#include "hsge/rng.hpp"

namespace hsge {

namespace {

std::string escape_token(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (c == ',' || c == '|' || c == '%' || c <= ' ' || c == 0x7f) {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xf];
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::string unescape_token(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size()) throw ParseError("truncated escape in hash code");
    const int hi = hex_value(s[i + 1]), lo = hex_value(s[i + 2]);
    if (hi < 0 || lo < 0) throw ParseError("bad escape in hash code");
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string format_fixed6(std::int64_t micro) {
  const bool negative = micro < 0;
  const auto mag = static_cast<std::uint64_t>(negative ? -micro : micro);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%llu.%06llu", negative ? "-" : "",
                static_cast<unsigned long long>(mag / kBetweennessScale),
                static_cast<unsigned long long>(mag % kBetweennessScale));
  return buf;
}

std::int64_t parse_fixed6(std::string_view s) {
  const bool negative = !s.empty() && s[0] == '-';
  if (negative) s.remove_prefix(1);
  const auto dot = s.find('.');
  if (dot == std::string_view::npos || s.size() - dot - 1 != 6) throw ParseError("bad betweenness value in hash code");
  std::int64_t whole = 0, frac = 0;
  for (char c : s.substr(0, dot)) {
    if (c < '0' || c > '9') throw ParseError("bad betweenness value in hash code");
    whole = whole * 10 + (c - '0');
  }
  for (char c : s.substr(dot + 1)) {
    if (c < '0' || c > '9') throw ParseError("bad betweenness value in hash code");
    frac = frac * 10 + (c - '0');
  }
  const auto v = whole * kBetweennessScale + frac;
  return negative ? -v : v;
}

std::int64_t parse_int(std::string_view s) {
  if (s.empty()) throw ParseError("empty number in hash code");
  std::int64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError("bad degree in hash code");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::vector<double> HashCode::topology_values() const {
  std::vector<double> out;
  out.reserve(topology.size());
  for (auto x : topology)
    out.push_back(kind == TopologyKind::kDegree ? static_cast<double>(x)
                                                : static_cast<double>(x) / kBetweennessScale);
  return out;
}

std::string HashCode::serialize() const {
  std::string out = kind == TopologyKind::kDegree ? "deg:" : "btw:";
  for (std::size_t i = 0; i < topology.size(); ++i) {
    if (i) out += ',';
    out += kind == TopologyKind::kDegree ? std::to_string(topology[i]) : format_fixed6(topology[i]);
  }
  if (!attributes.empty()) {
    out += '|';
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      if (i) out += ',';
      out += escape_token(attributes[i]);
    }
  }
  return out;
}

HashCode HashCode::parse(std::string_view text) {
  HashCode code;
  if (text.starts_with("deg:")) {
    code.kind = TopologyKind::kDegree;
  } else if (text.starts_with("btw:")) {
    code.kind = TopologyKind::kBetweenness;
  } else {
    throw ParseError("hash code must start with deg: or btw:");
  }
  text.remove_prefix(4);
  const auto bar = text.find('|');
  const auto topo = text.substr(0, bar);
  if (!topo.empty()) {
    for (auto part : split(topo, ','))
      code.topology.push_back(code.kind == TopologyKind::kDegree ? parse_int(part) : parse_fixed6(part));
  }
  if (bar != std::string_view::npos) {
    for (auto part : split(text.substr(bar + 1), ',')) code.attributes.push_back(unescape_token(part));
  }
  return code;
}

HashCode degree_hash(const GraphletView& g) {
  HashCode code;
  code.kind = TopologyKind::kDegree;
  code.topology.assign(g.nodes.size(), 0);
  auto local = [&](NodeId u) { return std::lower_bound(g.nodes.begin(), g.nodes.end(), u) - g.nodes.begin(); };
  for (auto e : g.edges) {
    ++code.topology[local(g.graph->edge(e).u)];
    ++code.topology[local(g.graph->edge(e).v)];
  }
  std::sort(code.topology.begin(), code.topology.end());
  return code;
}

HashCode betweenness_hash(const GraphletView& g) {
  auto local = [&](NodeId u) {
    return static_cast<NodeId>(std::lower_bound(g.nodes.begin(), g.nodes.end(), u) - g.nodes.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(g.edges.size());
  for (auto e : g.edges) edges.push_back({local(g.graph->edge(e).u), local(g.graph->edge(e).v)});
  const AttributedGraph topology(g.nodes.size(), edges);

  HashCode code;
  code.kind = TopologyKind::kBetweenness;
  for (double b : node_betweenness(topology))
    code.topology.push_back(std::llround(b * static_cast<double>(kBetweennessScale)));
  std::sort(code.topology.begin(), code.topology.end());
  return code;
}

HashCode graphlet_code(const GraphletView& g, bool labeled) {
  HashCode code = g.size() <= kDegreeHashMaxEdges ? degree_hash(g) : betweenness_hash(g);
  if (!labeled) return code;

  std::vector<std::string> nodes, edges;
  nodes.reserve(g.nodes.size());
  edges.reserve(g.edges.size());
  for (auto u : g.nodes) {
    const auto& l = g.graph->node_label(u);
    if (l.has_attributes()) throw StateError("node carries continuous attributes; discretize before labeled hashing");
    nodes.push_back(l.symbol_token());
  }
  for (auto e : g.edges) {
    const auto& l = g.graph->edge_label(e);
    if (l.has_attributes()) throw StateError("edge carries continuous attributes; discretize before labeled hashing");
    edges.push_back(l.symbol_token());
  }
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end());
  code.attributes = std::move(nodes);
  code.attributes.insert(code.attributes.end(), std::make_move_iterator(edges.begin()),
                         std::make_move_iterator(edges.end()));
  return code;
}

std::size_t GraphletVocabulary::insert(std::size_t t, const HashCode& code) {
  if (finalized_) throw StateError("vocabulary is finalized");
  if (t == 0) throw ParameterError("graphlet size must be at least 1");
  ensure_size(t);
  auto [it, inserted] = tables_[t - 1].try_emplace(code, codes_[t - 1].size());
  if (inserted) codes_[t - 1].push_back(code);
  return it->second;
}

void GraphletVocabulary::merge(const GraphletVocabulary& other) {
  if (finalized_) throw StateError("vocabulary is finalized");
  ensure_size(other.max_size());
  for (std::size_t t = 1; t <= other.max_size(); ++t)
    for (const auto& code : other.codes(t)) insert(t, code);
}

void GraphletVocabulary::ensure_size(std::size_t t) {
  if (tables_.size() < t) {
    tables_.resize(t);
    codes_.resize(t);
  }
}

void GraphletVocabulary::finalize() {
  for (std::size_t t = 0; t < tables_.size(); ++t) {
    std::size_t bin = 0;
    codes_[t].clear();
    for (auto& [code, index] : tables_[t]) {
      index = bin++;
      codes_[t].push_back(code);
    }
  }
  finalized_ = true;
}

std::optional<std::size_t> GraphletVocabulary::bin(std::size_t t, const HashCode& code) const {
  if (t == 0 || t > tables_.size()) return std::nullopt;
  auto it = tables_[t - 1].find(code);
  if (it == tables_[t - 1].end()) return std::nullopt;
  return it->second;
}

std::size_t GraphletVocabulary::bin_count(std::size_t t) const {
  return t == 0 || t > codes_.size() ? 0 : codes_[t - 1].size();
}

const std::vector<HashCode>& GraphletVocabulary::codes(std::size_t t) const {
  static const std::vector<HashCode> kEmpty;
  return t == 0 || t > codes_.size() ? kEmpty : codes_[t - 1];
}

std::size_t GraphletVocabulary::total_codes() const {
  std::size_t n = 0;
  for (const auto& c : codes_) n += c.size();
  return n;
}

void CodeCounts::add(std::size_t t, const HashCode& code, std::uint64_t n) {
  if (by_size.size() < t) by_size.resize(t);
  by_size[t - 1][code] += n;
}

std::uint64_t CodeCounts::total(std::size_t t) const {
  if (t == 0 || t > by_size.size()) return 0;
  std::uint64_t n = 0;
  for (const auto& [code, count] : by_size[t - 1]) n += count;
  return n;
}

std::uint64_t Histogram::total(std::size_t t) const {
  if (t == 0 || t > counts.size()) return 0;
  std::uint64_t n = 0;
  for (auto c : counts[t - 1]) n += c;
  return n;
}

std::uint64_t Histogram::overflow(std::size_t t) const {
  if (t == 0 || t > counts.size()) return 0;
  return counts[t - 1].back();
}

CodeCounts count_codes(const AttributedGraph& g, const SamplerParams& params, bool labeled) {
  CodeCounts counts;
  counts.by_size.resize(params.max_edges);
  for_each_graphlet(g, params, [&](const GraphletView& view) {
    counts.by_size[view.size() - 1][graphlet_code(view, labeled)] += 1;
  });
  return counts;
}

Histogram bin_counts(const CodeCounts& counts, const GraphletVocabulary& vocab, std::size_t max_size) {
  Histogram h;
  h.counts.resize(max_size);
  for (std::size_t t = 1; t <= max_size; ++t) {
    auto& block = h.counts[t - 1];
    block.assign(vocab.bin_count(t) + 1, 0);
    if (t > counts.by_size.size()) continue;
    for (const auto& [code, n] : counts.by_size[t - 1]) {
      const auto bin = vocab.bin(t, code);
      block[bin ? *bin : block.size() - 1] += n;
    }
  }
  return h;
}

Histogram accumulate_histogram(std::span<const Graphlet> graphlets, GraphletVocabulary& vocab,
                               bool labeled) {
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> hits;
  hits.reserve(graphlets.size());
  std::size_t max_size = vocab.max_size();
  for (const auto& g : graphlets) {
    const auto code = graphlet_code(g, labeled);
    const auto t = g.size();
    max_size = std::max(max_size, t);
    hits.emplace_back(t, vocab.finalized() ? vocab.bin(t, code) : vocab.insert(t, code));
  }
  Histogram h;
  h.counts.resize(max_size);
  for (std::size_t t = 1; t <= max_size; ++t) h.counts[t - 1].assign(vocab.bin_count(t) + 1, 0);
  for (const auto& [t, bin] : hits) {
    auto& block = h.counts[t - 1];
    ++block[bin ? *bin : block.size() - 1];
  }
  return h;
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] - (i < b.size() ? b[i] : 0.0);
    d += x * x;
  }
  return d;
}

std::size_t nearest(std::span<const double> p, const std::vector<std::vector<double>>& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

KMeansResult kmeans(std::span<const std::vector<double>> points, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw ParameterError("k-means needs k >= 1");
  if (points.size() < k) throw ParameterError("k-means needs at least k points");
  Rng rng(seed);
  KMeansResult r;

  // k-means++ seeding.
  r.centroids.push_back(points[rng.below(points.size())]);
  std::vector<double> d2(points.size());
  while (r.centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      d2[i] = squared_distance(points[i], r.centroids[nearest(points[i], r.centroids)]);
      total += d2[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (pick = 0; pick + 1 < points.size(); ++pick) {
        target -= d2[pick];
        if (target < 0.0 && d2[pick] > 0.0) break;
      }
    }
    r.centroids.push_back(points[pick]);
  }

  const std::size_t dim = points.empty() ? 0 : points[0].size();
  r.assignment.assign(points.size(), 0);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = iter == 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto c = nearest(points[i], r.centroids);
      if (c != r.assignment[i]) changed = true;
      r.assignment[i] = c;
    }
    if (!changed) break;
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto& s = sums[r.assignment[i]];
      for (std::size_t j = 0; j < dim && j < points[i].size(); ++j) s[j] += points[i][j];
      ++sizes[r.assignment[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;  // empty cluster keeps its centroid
      for (auto& x : sums[c]) x /= static_cast<double>(sizes[c]);
      r.centroids[c] = std::move(sums[c]);
    }
  }
  return r;
}

namespace {

// Token index per vector, in input order.
std::vector<std::size_t> cluster_vectors(std::vector<std::vector<double>> points, std::size_t& k,
                                         std::uint64_t seed, const char* what,
                                         std::vector<std::string>& warnings) {
  const std::set<std::vector<double>> distinct(points.begin(), points.end());
  if (distinct.size() < k) {
    warnings.push_back(std::string("reduced ") + what + " clusters from " + std::to_string(k) + " to " +
                       std::to_string(distinct.size()) + " (too few distinct attribute vectors)");
    k = distinct.size();
  }
  return kmeans(points, k, seed).assignment;
}

}  // namespace

DiscretizationResult discretize_attributes(std::span<const AttributedGraph> dataset, std::size_t k,
                                           std::uint64_t seed) {
  if (k == 0) throw ParameterError("discretization needs k >= 1");
  DiscretizationResult out;

  std::vector<std::vector<double>> node_points, edge_points;
  for (const auto& g : dataset) {
    for (const auto& l : g.node_labels())
      if (l.has_attributes()) node_points.push_back(l.attributes);
    for (const auto& l : g.edge_labels())
      if (l.has_attributes()) edge_points.push_back(l.attributes);
  }
  if (node_points.empty() && edge_points.empty()) {
    out.graphs.assign(dataset.begin(), dataset.end());
    return out;
  }

  std::vector<std::size_t> node_tokens, edge_tokens;
  if (!node_points.empty()) {
    out.node_clusters = k;
    node_tokens = cluster_vectors(std::move(node_points), out.node_clusters, seed, "node", out.warnings);
  }
  if (!edge_points.empty()) {
    out.edge_clusters = k;
    edge_tokens = cluster_vectors(std::move(edge_points), out.edge_clusters, derive_seed(seed, "edges"),
                                  "edge", out.warnings);
  }

  std::size_t next_node = 0, next_edge = 0;
  out.graphs.reserve(dataset.size());
  for (const auto& g : dataset) {
    std::vector<Label> nodes(g.node_labels().begin(), g.node_labels().end());
    std::vector<Label> edge_labels(g.edge_labels().begin(), g.edge_labels().end());
    for (auto& l : nodes) {
      if (!l.has_attributes()) continue;
      l.symbols.push_back("n" + std::to_string(node_tokens[next_node++]));
      l.attributes.clear();
    }
    for (auto& l : edge_labels) {
      if (!l.has_attributes()) continue;
      l.symbols.push_back("e" + std::to_string(edge_tokens[next_edge++]));
      l.attributes.clear();
    }
    out.graphs.emplace_back(std::move(nodes), std::vector<Edge>(g.edges().begin(), g.edges().end()),
                            std::move(edge_labels));
  }
  return out;
}

}  // namespace hsge
