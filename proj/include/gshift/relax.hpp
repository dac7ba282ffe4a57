#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gshift/graph.hpp"
#include "gshift/mapping.hpp"

namespace gshift {

/// Weights of the approximate-translation score plus the greedy block size.
struct ScoreParams {
  double alpha = 1.0;  // loss
  double beta = 0.1;   // EC violations
  double gamma = 0.5;  // deformation
  std::size_t k_block = 1;

  /// Throws std::invalid_argument on negative weights, all-zero weights or K = 0.
  void validate() const;
};

struct ScoreBreakdown {
  double loss_term = 0;
  double ec_term = 0;
  double def_term = 0;
  double total = 0;
  std::size_t raw_loss = 0;
  std::size_t raw_ec = 0;
  double raw_def = 0;
};

/// Raw counts of an approximate translation over its domain.
struct RawScore {
  std::size_t domain_size = 0;
  std::size_t mapped = 0;
  std::size_t loss = 0;
  std::size_t ec = 0;
  std::uint64_t def = 0;
};

/// Normalized, weighted terms from raw counts. The EC term vanishes when
/// nothing is mapped and the deformation term when at most one vertex is.
ScoreBreakdown breakdown_from_raw(const RawScore& raw, const ScoreParams& p);

RawScore raw_score(const Graph& g, const Mapping& m);
/// Throws std::invalid_argument for an empty domain.
ScoreBreakdown score(const Graph& g, const Mapping& m, const ScoreParams& p);

/// Sum of the step totals, accumulated in order.
double composition_score(std::span<const ScoreBreakdown> steps);

struct EvaluationPair {
  double loss_ratio = 0;
  double snp_ratio = 0;
  friend bool operator==(const EvaluationPair&, const EvaluationPair&) = default;
};

/// (loss / |V1|, 2 SNP-violations / (m (m - 1))) with m the mapped count;
/// the second entry is 0 when m <= 1.
EvaluationPair evaluation_pair(const Graph& g, const Mapping& composed);

/// True when a is at least as good as b on both coordinates and strictly
/// better on one (both minimized).
bool dominates(const EvaluationPair& a, const EvaluationPair& b);

/// Indices of the non-dominated points, in input order. Equal points are all kept.
std::vector<std::size_t> pareto_front(std::span<const EvaluationPair> points);

}  // namespace gshift
