#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gshift/graph.hpp"
#include "gshift/mapping.hpp"
#include "gshift/relax.hpp"

namespace gshift {

/// How the target set V2 is chosen at every expansion of the composition search.
enum class SubsetRule {
  Localized,  // current support plus its H-hop surroundings
  Full,       // every vertex of the graph
};

struct SearchOptions {
  SubsetRule rule = SubsetRule::Localized;
  std::uint32_t hops = 1;
};

struct GreedyResult {
  Mapping mapping;
  ScoreBreakdown score;
  /// Number of candidate (partial) assignments scored.
  std::size_t evaluations = 0;
};

/// Greedy block search for an approximate translation V1 -> V2 ∪ {bottom}
/// with v1 -> v2 fixed. Each round takes the next K unassigned sources in
/// ascending vertex order and tries every arrangement of still-free targets
/// and bottom (lexicographic, bottom last), keeping the first arrangement of
/// minimum score over the vertices assigned so far. v2 is added to V2 when
/// missing. With K >= |V1| - 1 the search is exhaustive.
GreedyResult minimize_s(const Graph& g, Vertex v1, Vertex v2, std::span<const Vertex> sources,
                        std::span<const Vertex> targets, const ScoreParams& p);

struct TraceStep {
  Vertex from;
  Vertex to;
  Mapping mapping;
  ScoreBreakdown score;
};

struct TranslationTrace {
  Vertex source;
  Vertex target;
  std::vector<Vertex> initial_support;
  ScoreParams params;
  std::vector<TraceStep> steps;
  double cumulative_score = 0;
  /// Composition of all steps over the initial support.
  Mapping composed;
  EvaluationPair pair;
  /// Total greedy evaluations spent by the search.
  std::size_t evaluations = 0;
};

/// Dijkstra-like search over anchor vertices keyed by accumulated score.
/// Settling a vertex expands every unvisited vertex of V2 (chosen by
/// `options`) through minimize_s on the support carried by that vertex. The
/// carried support is the image set of the step that reached it. Ties are
/// broken by (score, vertex, insertion order). Empty result when `target` is
/// never settled.
std::optional<TranslationTrace> best_composition(const Graph& g,
                                                 std::span<const Vertex> initial_support,
                                                 Vertex source, Vertex target,
                                                 const ScoreParams& p,
                                                 const SearchOptions& options = {});

struct LocalizedSets {
  std::vector<Vertex> support;
  /// The support induces a connected subgraph.
  bool connected = true;
};

/// Support of a signal. Throws std::invalid_argument when it is empty.
LocalizedSets localized_sets(const Graph& g, std::span<const double> x);
/// V1 plus every vertex within `hops` of it.
std::vector<Vertex> expand_support(const Graph& g, std::span<const Vertex> support,
                                   std::uint32_t hops = 1);
/// Indicator signal of `center` and its `hops`-ball.
Signal ball_signal(const Graph& g, Vertex center, std::uint32_t hops = 1);

class NoCompositionFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepGrid {
  std::vector<double> alphas{0.1, 0.5, 1.0};
  std::vector<double> betas{0.1, 0.5, 1.0};
  std::vector<double> gammas{0.1, 0.5, 1.0};
  std::vector<std::size_t> ks{1, 2, 3};

  /// Cells in alpha-major, then beta, gamma, K order.
  std::vector<ScoreParams> cells() const;
};

struct SweepRecord {
  ScoreParams params;
  TranslationTrace trace;
  bool pareto = false;
};

struct SweepReport {
  std::vector<SweepRecord> records;
  std::vector<std::size_t> front;
};

/// Runs best_composition for every grid cell (in parallel on up to `threads`
/// workers) and flags the Pareto-optimal evaluation pairs. Throws
/// NoCompositionFound when some cell cannot reach the target.
SweepReport parameter_sweep(const Graph& g, std::span<const double> x, Vertex source,
                            Vertex target, const SweepGrid& grid,
                            const SearchOptions& options = {}, std::size_t threads = 1);

}  // namespace gshift
