#include "gshift/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace gshift {

namespace {

Vertex vertex_from(const Json& j, std::size_t order, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + ": vertex must be an integer");
  auto v = j.get<long long>();
  if (v < 1 || static_cast<unsigned long long>(v) > order)
    throw FormatError(std::string(what) + ": vertex " + std::to_string(v) + " outside 1.." +
                      std::to_string(order));
  return static_cast<Vertex>(v - 1);
}

Json vertex_list(std::span<const Vertex> vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(v + 1);
  return out;
}

std::vector<Vertex> vertices_from(const Json& j, std::size_t order, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<Vertex> out;
  for (const auto& x : j) out.push_back(vertex_from(x, order, what));
  return out;
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.order();
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u + 1, e.v + 1});
  j["edges"] = std::move(edges);
  if (g.coords())
    j["coords"] = *g.coords();
  else
    j["coords"] = nullptr;
  return j;
}

Graph graph_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
      throw FormatError("graph: expected an object with \"n\" and \"edges\"");
    if (!j["n"].is_number_unsigned()) throw FormatError("graph: \"n\" must be a non-negative integer");
    const auto n = j["n"].get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw FormatError("graph: each edge must be a pair");
      Vertex a = vertex_from(e[0], n, "edge");
      Vertex b = vertex_from(e[1], n, "edge");
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::optional<Graph::Coords> coords;
    if (j.contains("coords") && !j["coords"].is_null())
      coords = j["coords"].get<Graph::Coords>();
    return Graph(n, std::move(edges), std::move(coords));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("graph: ") + e.what());
  }
}

Json mapping_to_json(const Mapping& m) {
  Json j;
  j["domain"] = vertex_list(m.domain());
  j["codomain"] = vertex_list(m.codomain());
  Json image = Json::array();
  for (std::size_t i = 0; i < m.domain().size(); ++i) {
    const auto& img = m.images()[i];
    image.push_back({m.domain()[i] + 1, img ? Json(*img + 1) : Json(nullptr)});
  }
  j["image"] = std::move(image);
  return j;
}

Mapping mapping_from_json(const Json& j, std::size_t universe) {
  try {
    if (!j.is_object() || !j.contains("image"))
      throw FormatError("mapping: expected an object with \"image\"");
    std::vector<Vertex> domain;
    std::vector<Image> images;
    for (const auto& pair : j["image"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw FormatError("mapping: each image entry must be [v, w|null]");
      domain.push_back(vertex_from(pair[0], universe, "mapping source"));
      images.push_back(pair[1].is_null() ? Image{}
                                         : Image{vertex_from(pair[1], universe, "mapping image")});
    }
    std::vector<Vertex> dom_set = j.contains("domain")
                                      ? vertices_from(j["domain"], universe, "mapping domain")
                                      : domain;
    std::vector<Vertex> codomain;
    if (j.contains("codomain")) {
      codomain = vertices_from(j["codomain"], universe, "mapping codomain");
    } else {
      codomain.resize(universe);
      for (Vertex v = 0; v < universe; ++v) codomain[v] = v;
    }
    // Domain vertices without an explicit entry go to bottom.
    std::vector<std::uint8_t> listed(universe, 0);
    for (Vertex v : domain) listed[v] = 1;
    for (Vertex v : dom_set) {
      if (!listed[v]) {
        domain.push_back(v);
        images.push_back(bottom);
        listed[v] = 1;
      }
    }
    if (domain.size() != dom_set.size())
      throw FormatError("mapping: image entries name vertices outside the domain");
    return Mapping(universe, std::move(domain), std::move(codomain), std::move(images));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("mapping: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw FormatError(std::string("mapping: ") + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("mapping: ") + e.what());
  }
}

Signal signal_from_json(const Json& j, std::size_t order) {
  const Json& values = j.is_object() && j.contains("values") ? j["values"] : j;
  if (!values.is_array() || values.size() != order)
    throw FormatError("signal: expected " + std::to_string(order) + " numbers");
  Signal x;
  for (const auto& v : values) {
    if (!v.is_number()) throw FormatError("signal: entries must be numbers");
    x.push_back(v.get<double>());
  }
  return x;
}

Json score_to_json(const ScoreBreakdown& s) {
  Json j;
  j["loss"] = s.loss_term;
  j["ec"] = s.ec_term;
  j["def"] = s.def_term;
  j["total"] = s.total;
  return j;
}

Json trace_to_json(const TranslationTrace& t, const Json& graph_ref, std::uint64_t seed) {
  Json j;
  j["graph"] = graph_ref;
  j["params"] = {{"alpha", t.params.alpha},
                 {"beta", t.params.beta},
                 {"gamma", t.params.gamma},
                 {"k", t.params.k_block},
                 {"seed", seed}};
  j["source"] = t.source + 1;
  j["target"] = t.target + 1;
  j["initial_support"] = vertex_list(t.initial_support);
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json step;
    step["from"] = s.from + 1;
    step["to"] = s.to + 1;
    step["mapping"] = mapping_to_json(s.mapping);
    step["score"] = score_to_json(s.score);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["cumulative_score"] = t.cumulative_score;
  j["pair"] = {{"loss_ratio", t.pair.loss_ratio}, {"snp_ratio", t.pair.snp_ratio}};
  j["composed"] = mapping_to_json(t.composed);
  return j;
}

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string mapping_to_dot(const Graph& g, const Mapping& m) {
  std::ostringstream out;
  out << "digraph mapping {\n";
  out << "  node [shape=circle];\n";
  for (Vertex v = 0; v < g.order(); ++v) {
    out << "  " << v + 1 << " [label=\"" << v + 1 << "\"";
    if (m.in_domain(v) && !m(v)) out << ", style=filled, fillcolor=gray";
    if (g.coords() && (*g.coords())[v].size() >= 2) {
      const auto& c = (*g.coords())[v];
      out << ", pos=\"" << format_number(c[0]) << "," << format_number(c[1]) << "!\"";
    }
    out << "];\n";
  }
  for (const auto& e : g.edges())
    out << "  " << e.u + 1 << " -> " << e.v + 1 << " [dir=none, style=dotted];\n";
  for (std::size_t i = 0; i < m.domain().size(); ++i) {
    const auto& img = m.images()[i];
    if (img) out << "  " << m.domain()[i] + 1 << " -> " << *img + 1 << " [style=solid];\n";
  }
  out << "}\n";
  return out.str();
}

std::string sweep_to_csv(const SweepReport& report) {
  std::string out = "alpha,beta,gamma,K,loss_ratio,snp_ratio,score,steps,pareto\n";
  for (const auto& r : report.records) {
    out += format_number(r.params.alpha) + ',' + format_number(r.params.beta) + ',' +
           format_number(r.params.gamma) + ',' + std::to_string(r.params.k_block) + ',' +
           format_number(r.trace.pair.loss_ratio) + ',' + format_number(r.trace.pair.snp_ratio) +
           ',' + format_number(r.trace.cumulative_score) + ',' +
           std::to_string(r.trace.steps.size()) + ',' + (r.pareto ? "1" : "0") + '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buf.str();
}

Json read_json_file(const std::filesystem::path& path) {
  auto text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

}  // namespace gshift
