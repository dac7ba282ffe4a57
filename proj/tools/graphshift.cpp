// graphshift: command-line front end for the gshift library.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "gshift/enumerate.hpp"
#include "gshift/euclid.hpp"
#include "gshift/graph.hpp"
#include "gshift/io.hpp"
#include "gshift/mapping.hpp"
#include "gshift/relax.hpp"
#include "gshift/search.hpp"

namespace {

using namespace gshift;

enum Exit : int { kOk = 0, kInvalid = 2, kNoResult = 3, kIo = 4 };

struct Options {
  // gen
  std::string kind;
  std::size_t n = 0;
  double r = 0;
  std::string dims;
  std::uint64_t seed = 0;
  // scoring / search
  std::optional<double> alpha, beta, gamma;
  std::optional<std::size_t> k;
  std::uint32_t hops = 1;
  std::optional<std::size_t> src, tgt;
  // enumerate
  bool lossless = false;
  bool minimal = false;
  std::optional<std::size_t> max_loss;
  std::string image_set;
  std::string domain_set;
  // files
  std::string graph_path;
  std::string second_path;  // mapping or signal
  std::string out;
  std::string format = "json";
};

class CliError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::size_t> parse_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw CliError(std::string(flag) + ": not a list of non-negative integers: " + text);
    }
  }
  if (out.empty()) throw CliError(std::string(flag) + ": empty list");
  return out;
}

std::vector<Vertex> parse_vertices(const std::string& text, const char* flag, std::size_t order) {
  std::vector<Vertex> out;
  for (auto v : parse_list(text, flag)) {
    if (v < 1 || v > order)
      throw CliError(std::string(flag) + ": vertex " + std::to_string(v) + " outside 1.." +
                     std::to_string(order));
    out.push_back(static_cast<Vertex>(v - 1));
  }
  return out;
}

Vertex require_vertex(const std::optional<std::size_t>& v, const char* flag, std::size_t order) {
  if (!v) throw CliError(std::string(flag) + " is required");
  if (*v < 1 || *v > order)
    throw CliError(std::string(flag) + ": vertex outside 1.." + std::to_string(order));
  return static_cast<Vertex>(*v - 1);
}

void emit(const Options& o, const std::string& content) {
  if (o.out.empty() || o.out == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file_atomic(o.out, content);
  }
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw CliError("--format " + o.format + " is not supported by this command");
}

Graph load_graph(const Options& o) { return graph_from_json(read_json_file(o.graph_path)); }

ScoreParams params_from(const Options& o) {
  ScoreParams p;
  if (o.alpha) p.alpha = *o.alpha;
  if (o.beta) p.beta = *o.beta;
  if (o.gamma) p.gamma = *o.gamma;
  if (o.k) p.k_block = *o.k;
  p.validate();
  return p;
}

Mapping empty_mapping(const Graph& g) { return Mapping(g.order(), {}, {}, {}); }

// ---------------------------------------------------------------------------

int cmd_gen(const Options& o) {
  require_format(o, {"json", "dot"});
  auto need_n = [&] {
    if (o.n == 0) throw CliError("--n is required and must be positive");
    return o.n;
  };
  auto need_dims = [&] {
    if (o.dims.empty()) throw CliError("--dims is required");
    return Dims(parse_list(o.dims, "--dims"));
  };
  std::optional<Graph> g;
  if (o.kind == "complete") g = make_complete(need_n());
  else if (o.kind == "grid") g = make_grid(need_dims());
  else if (o.kind == "torus") g = make_torus(need_dims());
  else if (o.kind == "ring") g = make_ring(need_n());
  else if (o.kind == "path") g = make_path(need_n());
  else if (o.kind == "star") g = make_star(need_n());
  else if (o.kind == "petersen") g = make_petersen();
  else if (o.kind == "geometric") g = make_random_geometric(need_n(), o.r, o.seed);
  else throw CliError("unknown graph kind: " + o.kind);

  if (o.format == "dot")
    emit(o, mapping_to_dot(*g, empty_mapping(*g)));
  else
    emit(o, graph_to_json(*g).dump() + "\n");
  return kOk;
}

bool passes(const EnumerationFilter& f, const Mapping& m) {
  const std::size_t l = loss(m);
  if (f.lossless_only && l != 0) return false;
  if (f.max_loss && l > *f.max_loss) return false;
  if (f.require_image_set && m.image_set() != *f.require_image_set) return false;
  if (f.restrict_domain) {
    for (Vertex v : m.mapped_sources())
      if (!std::binary_search(f.restrict_domain->begin(), f.restrict_domain->end(), v))
        return false;
  }
  return true;
}

int cmd_enumerate(const Options& o) {
  require_format(o, {"json"});
  Graph g = load_graph(o);
  EnumerationFilter f;
  f.lossless_only = o.lossless;
  f.max_loss = o.max_loss;
  if (!o.image_set.empty()) {
    auto s = parse_vertices(o.image_set, "--image-set", g.order());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    f.require_image_set = s;
  }
  if (!o.domain_set.empty()) {
    auto s = parse_vertices(o.domain_set, "--domain-set", g.order());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    f.restrict_domain = s;
  }

  std::vector<Mapping> found;
  if (o.minimal) {
    for (auto& m : minimal_translations(g))
      if (passes(f, m)) found.push_back(std::move(m));
  } else {
    found = enumerate_translations(g, f);
  }
  std::string text;
  for (const auto& m : found) {
    Json line = mapping_to_json(m);
    line["loss"] = loss(m);
    text += line.dump() + "\n";
  }
  emit(o, text);
  std::cerr << "count " << found.size() << "\n";
  return kOk;
}

Signal load_signal(const Options& o, const Graph& g, Vertex src) {
  if (!o.second_path.empty()) return signal_from_json(read_json_file(o.second_path), g.order());
  return ball_signal(g, src, o.hops);
}

SearchOptions search_options(const Options& o, const Graph& g, std::span<const Vertex> support) {
  SearchOptions s;
  s.hops = o.hops;
  s.rule = support.size() == g.order() ? SubsetRule::Full : SubsetRule::Localized;
  return s;
}

Json graph_ref(const Options& o) { return o.graph_path; }

int cmd_compose(const Options& o) {
  require_format(o, {"json", "dot"});
  Graph g = load_graph(o);
  Vertex src = require_vertex(o.src, "--src", g.order());
  Vertex tgt = require_vertex(o.tgt, "--tgt", g.order());
  ScoreParams p = params_from(o);
  Signal x = load_signal(o, g, src);
  auto sets = localized_sets(g, x);
  if (!sets.connected) std::cerr << "warning: signal support is not connected\n";
  if (!std::binary_search(sets.support.begin(), sets.support.end(), src))
    throw CliError("--src must lie in the signal support");

  auto trace = best_composition(g, sets.support, src, tgt, p, search_options(o, g, sets.support));
  if (!trace) throw NoCompositionFound("no composition found");

  if (o.format == "dot") {
    if (o.out.empty() || o.out == "-") throw CliError("--format dot needs --out as a file prefix");
    for (std::size_t i = 0; i < trace->steps.size(); ++i)
      write_file_atomic(o.out + ".step" + std::to_string(i + 1) + ".dot",
                        mapping_to_dot(g, trace->steps[i].mapping));
    write_file_atomic(o.out + ".composed.dot", mapping_to_dot(g, trace->composed));
    return kOk;
  }
  emit(o, trace_to_json(*trace, graph_ref(o), o.seed).dump(2) + "\n");
  return kOk;
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GRAPH_SHIFT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v < 1) throw std::invalid_argument(env);
      n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw CliError(std::string("GRAPH_SHIFT_THREADS must be a positive integer: ") + env);
    }
  }
  return n;
}

int cmd_sweep(const Options& o) {
  require_format(o, {"csv", "json"});
  Graph g = load_graph(o);
  Vertex src = require_vertex(o.src, "--src", g.order());
  Vertex tgt = require_vertex(o.tgt, "--tgt", g.order());
  SweepGrid grid;
  if (o.alpha) grid.alphas = {*o.alpha};
  if (o.beta) grid.betas = {*o.beta};
  if (o.gamma) grid.gammas = {*o.gamma};
  if (o.k) grid.ks = {*o.k};
  Signal x = load_signal(o, g, src);
  auto sets = localized_sets(g, x);
  if (!sets.connected) std::cerr << "warning: signal support is not connected\n";
  if (!std::binary_search(sets.support.begin(), sets.support.end(), src))
    throw CliError("--src must lie in the signal support");

  auto report = parameter_sweep(g, x, src, tgt, grid, search_options(o, g, sets.support),
                                worker_count());
  if (o.format == "csv") {
    emit(o, sweep_to_csv(report));
    return kOk;
  }
  Json out;
  out["graph"] = graph_ref(o);
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec = trace_to_json(r.trace, graph_ref(o), o.seed);
    rec.erase("graph");
    rec["pareto"] = r.pareto;
    records.push_back(std::move(rec));
  }
  out["records"] = std::move(records);
  Json front = Json::array();
  for (auto i : report.front) front.push_back(i);
  out["front"] = std::move(front);
  emit(o, out.dump(2) + "\n");
  return kOk;
}

int cmd_check(const Options& o) {
  require_format(o, {"json", "dot"});
  Graph g = load_graph(o);
  if (o.second_path.empty()) throw CliError("check needs a mapping file");
  Mapping m = mapping_from_json(read_json_file(o.second_path), g.order());
  if (o.format == "dot") {
    emit(o, mapping_to_dot(g, m));
    return kOk;
  }
  auto r = property_report(g, m);
  Json j;
  j["loss"] = r.loss;
  j["is_ec"] = r.is_ec;
  j["is_wnp"] = r.is_wnp;
  j["is_snp"] = r.is_snp;
  j["is_translation"] = r.is_translation;
  j["is_isometry"] = r.is_isometry;
  j["ec_violations"] = r.ec_violations;
  j["snp_violations"] = r.snp_violations;
  j["deformation"] = r.deformation;
  emit(o, j.dump(2) + "\n");
  return kOk;
}

int cmd_contaminate(const Options& o) {
  require_format(o, {"json", "dot"});
  if (o.dims.empty()) throw CliError("--dims is required");
  Dims dims(parse_list(o.dims, "--dims"));
  Graph g = make_torus(dims);
  Vertex src = require_vertex(o.src, "--src", g.order());
  Vertex tgt = require_vertex(o.tgt, "--tgt", g.order());
  auto c = contaminate_torus(g, dims, src, tgt);
  if (o.format == "dot") {
    emit(o, mapping_to_dot(g, c.mapping));
    return kOk;
  }
  Json j;
  j["mapping"] = mapping_to_json(c.mapping);
  j["offset"] = c.step;
  j["unique"] = c.unique;
  emit(o, j.dump() + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Translations and approximate translations on graphs"};
  app.require_subcommand(1);

  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Output file (stdout when omitted)");
    c->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "dot", "csv"}));
  };
  auto add_search = [&](CLI::App* c) {
    c->add_option("graph", o.graph_path, "Graph JSON file")->required();
    c->add_option("signal", o.second_path, "Signal JSON file (default: ball around --src)");
    c->add_option("--src", o.src, "Source vertex (1-based)");
    c->add_option("--tgt", o.tgt, "Target vertex (1-based)");
    c->add_option("--alpha", o.alpha, "Loss weight");
    c->add_option("--beta", o.beta, "Edge-constraint weight");
    c->add_option("--gamma", o.gamma, "Deformation weight");
    c->add_option("--k", o.k, "Greedy block size");
    c->add_option("--hops", o.hops, "Neighborhood radius for supports and V2");
    c->add_option("--seed", o.seed, "Seed recorded in the output");
    add_out(c);
  };

  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("kind", o.kind, "complete|grid|torus|ring|path|star|petersen|geometric")
      ->required();
  gen->add_option("--n", o.n, "Number of vertices (leaves for star)");
  gen->add_option("--r", o.r, "Connection radius of geometric graphs");
  gen->add_option("--dims", o.dims, "Lattice sizes, comma separated");
  gen->add_option("--seed", o.seed, "Random seed");
  add_out(gen);

  auto* en = app.add_subcommand("enumerate", "List translations as JSON lines");
  en->add_option("graph", o.graph_path, "Graph JSON file")->required();
  en->add_flag("--lossless", o.lossless, "Only lossless translations");
  en->add_flag("--minimal", o.minimal, "Only minimal translations");
  en->add_option("--max-loss", o.max_loss, "Largest loss to report");
  en->add_option("--image-set", o.image_set, "Required image set (1-based, comma separated)");
  en->add_option("--domain-set", o.domain_set, "Sources allowed a non-bottom image");
  add_out(en);

  auto* compose = app.add_subcommand("compose", "Best composition of approximate translations");
  add_search(compose);

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over weights and K");
  add_search(sweep);

  auto* check = app.add_subcommand("check", "Property report of a mapping");
  check->add_option("graph", o.graph_path, "Graph JSON file")->required();
  check->add_option("mapping", o.second_path, "Mapping JSON file")->required();
  add_out(check);

  auto* cont = app.add_subcommand("contaminate", "Translation of a torus grown from one edge");
  cont->add_option("--dims", o.dims, "Torus sizes, comma separated")->required();
  cont->add_option("--src", o.src, "Seed vertex (1-based)");
  cont->add_option("--tgt", o.tgt, "Its image, a neighbor (1-based)");
  add_out(cont);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  if (sweep->parsed() && sweep->count("--format") == 0) o.format = "csv";

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (en->parsed()) return cmd_enumerate(o);
    if (compose->parsed()) return cmd_compose(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (check->parsed()) return cmd_check(o);
    if (cont->parsed()) return cmd_contaminate(o);
  } catch (const NoCompositionFound& e) {
    std::cerr << "no composition found\n";
    return kNoResult;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range, length_error and FormatError
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
