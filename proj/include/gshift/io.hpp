#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gshift/graph.hpp"
#include "gshift/mapping.hpp"
#include "gshift/search.hpp"

namespace gshift {

using Json = nlohmann::ordered_json;

/// Malformed file content (bad JSON, out-of-range vertex, wrong shape).
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File system failure while reading or writing.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All vertex numbers in files are 1-based.

/// {"n": N, "edges": [[u, v], ...], "coords": [[x, y], ...] | null}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// {"domain": [...], "codomain": [...], "image": [[v, w | null], ...]}
Json mapping_to_json(const Mapping& m);
Mapping mapping_from_json(const Json& j, std::size_t universe);

/// Either an array of N numbers or {"values": [...]}.
Signal signal_from_json(const Json& j, std::size_t order);

Json score_to_json(const ScoreBreakdown& s);
Json trace_to_json(const TranslationTrace& t, const Json& graph_ref, std::uint64_t seed);

/// Base edges dotted, mapping arrows solid, vertices sent to bottom filled.
/// Node positions come from the first two coordinates when present.
std::string mapping_to_dot(const Graph& g, const Mapping& m);

/// Header alpha,beta,gamma,K,loss_ratio,snp_ratio,score,steps,pareto.
std::string sweep_to_csv(const SweepReport& report);

/// Shortest round-trip decimal form, independent of the locale.
std::string format_number(double x);

std::string read_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temp file then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace gshift
