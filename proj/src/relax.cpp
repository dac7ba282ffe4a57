#include "gshift/relax.hpp"

#include <stdexcept>

namespace gshift {

void ScoreParams::validate() const {
  if (alpha < 0 || beta < 0 || gamma < 0)
    throw std::invalid_argument("score weights must be non-negative");
  if (alpha == 0 && beta == 0 && gamma == 0)
    throw std::invalid_argument("at least one score weight must be positive");
  if (k_block == 0) throw std::invalid_argument("greedy block size K must be >= 1");
}

ScoreBreakdown breakdown_from_raw(const RawScore& raw, const ScoreParams& p) {
  ScoreBreakdown b;
  b.raw_loss = raw.loss;
  b.raw_ec = raw.ec;
  b.raw_def = static_cast<double>(raw.def);
  if (raw.domain_size > 0)
    b.loss_term = p.alpha * static_cast<double>(raw.loss) / static_cast<double>(raw.domain_size);
  if (raw.mapped > 0)
    b.ec_term = p.beta * static_cast<double>(raw.ec) / static_cast<double>(raw.mapped);
  if (raw.mapped > 1) {
    double pairs = static_cast<double>(raw.mapped) * static_cast<double>(raw.mapped - 1);
    b.def_term = p.gamma * 2.0 * b.raw_def / pairs;
  }
  b.total = b.loss_term + b.ec_term + b.def_term;
  return b;
}

RawScore raw_score(const Graph& g, const Mapping& m) {
  RawScore r;
  r.domain_size = m.domain().size();
  r.loss = loss(m);
  r.mapped = r.domain_size - r.loss;
  r.ec = check_ec(g, m).violations;
  r.def = deformation(g, m);
  return r;
}

ScoreBreakdown score(const Graph& g, const Mapping& m, const ScoreParams& p) {
  if (m.domain().empty()) throw std::invalid_argument("score: mapping has an empty domain");
  return breakdown_from_raw(raw_score(g, m), p);
}

double composition_score(std::span<const ScoreBreakdown> steps) {
  double total = 0;
  for (const auto& s : steps) total += s.total;
  return total;
}

EvaluationPair evaluation_pair(const Graph& g, const Mapping& composed) {
  if (composed.domain().empty())
    throw std::invalid_argument("evaluation_pair: mapping has an empty domain");
  EvaluationPair pair;
  const std::size_t lost = loss(composed);
  const std::size_t mapped = composed.domain().size() - lost;
  pair.loss_ratio = static_cast<double>(lost) / static_cast<double>(composed.domain().size());
  if (mapped > 1) {
    double pairs = static_cast<double>(mapped) * static_cast<double>(mapped - 1);
    pair.snp_ratio = 2.0 * static_cast<double>(snp_violations(g, composed)) / pairs;
  }
  return pair;
}

bool dominates(const EvaluationPair& a, const EvaluationPair& b) {
  return a.loss_ratio <= b.loss_ratio && a.snp_ratio <= b.snp_ratio &&
         (a.loss_ratio < b.loss_ratio || a.snp_ratio < b.snp_ratio);
}

std::vector<std::size_t> pareto_front(std::span<const EvaluationPair> points) {
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = j != i && dominates(points[j], points[i]);
    if (!dominated) front.push_back(i);
  }
  return front;
}

}  // namespace gshift
