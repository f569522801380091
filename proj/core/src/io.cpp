#include "lpcocycle/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace lpcocycle {
namespace {

using json = nlohmann::json;

constexpr const char* kGraphFormat = "lpcocycle.graph";
constexpr const char* kMetricFormat = "lpcocycle.metric";

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("malformed JSON: ") + e.what());
  }
}

void expect_format(const json& doc, const char* format) {
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != format) {
    throw Error(ErrorCode::invalid_input, std::string("expected a document with format \"") + format + "\"");
  }
  if (doc.value("version", 0) != 1) throw Error(ErrorCode::invalid_input, "unsupported document version");
}

template <typename T>
T get(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::invalid_input, std::string("bad value for ") + what);
  }
}

char first_non_blank(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos == std::string::npos ? '\0' : text[pos];
}

}  // namespace

FiniteGraph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (!(ls >> u)) {
      ls.clear();
      std::string rest;
      if (ls >> rest) throw Error(ErrorCode::invalid_input, "line " + std::to_string(lineno) + ": expected \"u v\"");
      continue;
    }
    std::string extra;
    if (!(ls >> v) || (ls >> extra)) {
      throw Error(ErrorCode::invalid_input, "line " + std::to_string(lineno) + ": expected \"u v\"");
    }
    edges.emplace_back(u, v);
  }
  return build_graph(edges);
}

std::string format_edge_list(const FiniteGraph& g) {
  const auto ids = g.original_ids();
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(ids[u]) + ' ' + std::to_string(ids[v]) + '\n';
  }
  return out;
}

Space parse_graph_document(const std::string& text, std::string name) {
  const json doc = parse_json(text);
  expect_format(doc, kGraphFormat);

  const auto vertices = get<std::vector<std::int64_t>>(doc.value("vertices", json::array()), "vertices");
  const auto raw_edges = get<std::vector<std::pair<std::int64_t, std::int64_t>>>(doc.value("edges", json::array()), "edges");
  std::vector<Edge> edges(raw_edges.begin(), raw_edges.end());
  Space s = make_space(name.empty() ? doc.value("name", std::string("graph")) : std::move(name),
                       vertices.empty() ? build_graph(edges) : build_graph(vertices, edges));

  const auto ids = s.graph->original_ids();
  std::unordered_map<std::int64_t, Vertex> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<Vertex>(i));
  auto lookup = [&](std::int64_t id) {
    const auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::invalid_input, "unknown vertex id " + std::to_string(id));
    return it->second;
  };
  // Per-vertex arrays follow the listed order, which may differ from ascending.
  std::vector<Vertex> listed;
  for (std::int64_t id : vertices) listed.push_back(lookup(id));
  if (listed.empty()) {
    for (std::size_t i = 0; i < ids.size(); ++i) listed.push_back(static_cast<Vertex>(i));
  }
  if (listed.size() != s.size()) throw Error(ErrorCode::invalid_input, "duplicate vertex ids");

  if (doc.contains("labels")) {
    const auto labels = get<std::vector<std::string>>(doc["labels"], "labels");
    if (labels.size() != listed.size()) throw Error(ErrorCode::invalid_input, "labels must align with vertices");
    s.labels.resize(s.size());
    for (std::size_t i = 0; i < listed.size(); ++i) s.labels[listed[i]] = labels[i];
  }
  for (const auto& a : doc.value("automorphisms", json::array())) {
    const json& image = a.at("image");
    if (!image.is_array() || image.size() != listed.size()) {
      throw Error(ErrorCode::invalid_input, "automorphism image must align with vertices");
    }
    std::vector<Vertex> perm(s.size(), Isometry::kNone);
    for (std::size_t i = 0; i < listed.size(); ++i) {
      if (!image[i].is_null()) perm[listed[i]] = lookup(get<std::int64_t>(image[i], "automorphism image"));
    }
    s.automorphisms.emplace_back(std::move(perm), a.value("name", std::string()));
  }
  if (doc.contains("center")) s.center = lookup(get<std::int64_t>(doc["center"], "center"));
  s.radius = doc.value("radius", -1);
  s.inner_radius = doc.value("inner_radius", -1);
  for (const auto& id : doc.value("boundary", json::array())) s.boundary.push_back(lookup(get<std::int64_t>(id, "boundary")));
  std::sort(s.boundary.begin(), s.boundary.end());
  return s;
}

std::string format_graph_document(const Space& space) {
  const auto ids = space.graph->original_ids();
  json doc;
  doc["format"] = kGraphFormat;
  doc["version"] = 1;
  doc["name"] = space.name;
  doc["vertices"] = std::vector<std::int64_t>(ids.begin(), ids.end());
  json edges = json::array();
  for (const auto& [u, v] : space.graph->edges()) edges.push_back({ids[u], ids[v]});
  doc["edges"] = std::move(edges);
  if (!space.labels.empty()) doc["labels"] = space.labels;
  if (!space.automorphisms.empty()) {
    json autos = json::array();
    for (const auto& g : space.automorphisms) {
      json image = json::array();
      for (Vertex v : g.image()) image.push_back(v == Isometry::kNone ? json(nullptr) : json(ids[v]));
      autos.push_back({{"name", g.label()}, {"image", std::move(image)}});
    }
    doc["automorphisms"] = std::move(autos);
  }
  if (space.center) doc["center"] = ids[*space.center];
  if (space.radius >= 0) doc["radius"] = space.radius;
  if (space.inner_radius >= 0) doc["inner_radius"] = space.inner_radius;
  if (!space.boundary.empty()) {
    json b = json::array();
    for (Vertex v : space.boundary) b.push_back(ids[v]);
    doc["boundary"] = std::move(b);
  }
  return doc.dump() + "\n";
}

MetricTable parse_metric_document(const std::string& text) {
  const json doc = parse_json(text);
  expect_format(doc, kMetricFormat);
  const auto n = get<std::size_t>(doc.at("n"), "n");
  if (n == 0) throw Error(ErrorCode::empty_input, "metric document has no points");
  const auto tri = get<std::vector<int>>(doc.at("distances"), "distances");
  if (tri.size() != n * (n - 1) / 2) {
    throw Error(ErrorCode::invalid_input, "expected " + std::to_string(n * (n - 1) / 2) + " distances");
  }
  std::vector<int> full(n * n, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) full[i * n + j] = full[j * n + i] = tri[k];
  }
  return MetricTable::from_values(n, full);
}

std::string format_metric_document(const MetricTable& m) {
  const std::size_t n = m.size();
  std::vector<int> tri;
  tri.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = m.row(static_cast<Vertex>(i));
    for (std::size_t j = i + 1; j < n; ++j) tri.push_back(r[j]);
  }
  json doc;
  doc["format"] = kMetricFormat;
  doc["version"] = 1;
  doc["n"] = n;
  doc["distances"] = std::move(tri);
  return doc.dump() + "\n";
}

Space load_space(const std::string& path) {
  const std::string text = read_file(path);
  if (first_non_blank(text) == '{') return parse_graph_document(text, path);
  std::istringstream in(text);
  return make_space(path, parse_edge_list(in));
}

MetricTable load_metric(const std::string& path) {
  const std::string text = read_file(path);
  if (first_non_blank(text) == '{') {
    const json doc = parse_json(text);
    if (doc.is_object() && doc.value("format", std::string()) == kMetricFormat) return parse_metric_document(text);
    return parse_graph_document(text, path).metric;
  }
  std::istringstream in(text);
  return MetricTable::of_graph(std::make_shared<const FiniteGraph>(parse_edge_list(in)));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << contents)) throw Error(ErrorCode::invalid_input, "cannot write " + path);
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

}  // namespace lpcocycle
