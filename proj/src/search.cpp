#include "gshift/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <thread>

namespace gshift {

namespace {

std::uint64_t distance_gap(std::int32_t d1, std::int32_t d2, std::size_t order) {
  if (d1 < 0 && d2 < 0) return 0;
  if (d1 < 0 || d2 < 0) return order;
  return static_cast<std::uint64_t>(d1 > d2 ? d1 - d2 : d2 - d1);
}

std::vector<Vertex> sorted_set(std::span<const Vertex> s) {
  std::vector<Vertex> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Partial assignment built round by round, with its raw score counts.
struct PartialAssignment {
  std::vector<std::pair<Vertex, Image>> entries;
  RawScore raw;
};

class GreedyRound {
 public:
  GreedyRound(const Graph& g, const PartialAssignment& base, std::span<const Vertex> block,
              std::span<const Vertex> free_targets, const ScoreParams& p)
      : g_(g), base_(base), block_(block), targets_(free_targets), p_(p) {
    // Deformation of each (block source, target) against the settled part.
    const std::size_t width = targets_.size();
    against_base_.assign(block_.size() * width, 0);
    for (std::size_t i = 0; i < block_.size(); ++i) {
      for (std::size_t t = 0; t < width; ++t) {
        std::uint64_t sum = 0;
        for (const auto& [a, img] : base_.entries)
          if (img)
            sum += distance_gap(g_.raw_distance(block_[i], a),
                                g_.raw_distance(targets_[t], *img), g_.order());
        against_base_[i * width + t] = sum;
      }
    }
    chosen_.assign(block_.size(), kBottom);
    taken_.assign(width, 0);
  }

  void run() { place(0, base_.raw); }

  std::size_t evaluations() const { return evaluations_; }
  double best_total() const { return best_total_; }
  const RawScore& best_raw() const { return best_raw_; }
  /// Target index per block slot, kBottom for bottom.
  const std::vector<std::size_t>& best_choice() const { return best_choice_; }

  static constexpr std::size_t kBottom = std::numeric_limits<std::size_t>::max();

 private:
  void place(std::size_t slot, const RawScore& raw) {
    if (slot == block_.size()) {
      ++evaluations_;
      double total = breakdown_from_raw(raw, p_).total;
      if (total < best_total_) {
        best_total_ = total;
        best_raw_ = raw;
        best_choice_ = chosen_;
      }
      return;
    }
    const Vertex src = block_[slot];
    const std::size_t width = targets_.size();
    for (std::size_t t = 0; t < width; ++t) {
      if (taken_[t]) continue;
      RawScore next = raw;
      ++next.domain_size;
      ++next.mapped;
      if (!g_.adjacent(src, targets_[t])) ++next.ec;
      next.def += against_base_[slot * width + t];
      for (std::size_t j = 0; j < slot; ++j)
        if (chosen_[j] != kBottom)
          next.def += distance_gap(g_.raw_distance(src, block_[j]),
                                   g_.raw_distance(targets_[t], targets_[chosen_[j]]),
                                   g_.order());
      taken_[t] = 1;
      chosen_[slot] = t;
      place(slot + 1, next);
      taken_[t] = 0;
    }
    RawScore next = raw;
    ++next.domain_size;
    ++next.loss;
    chosen_[slot] = kBottom;
    place(slot + 1, next);
  }

  const Graph& g_;
  const PartialAssignment& base_;
  std::span<const Vertex> block_;
  std::span<const Vertex> targets_;
  const ScoreParams& p_;
  std::vector<std::uint64_t> against_base_;
  std::vector<std::size_t> chosen_;
  std::vector<std::uint8_t> taken_;
  std::size_t evaluations_ = 0;
  double best_total_ = std::numeric_limits<double>::infinity();
  RawScore best_raw_;
  std::vector<std::size_t> best_choice_;
};

}  // namespace

GreedyResult minimize_s(const Graph& g, Vertex v1, Vertex v2, std::span<const Vertex> sources,
                        std::span<const Vertex> targets, const ScoreParams& p) {
  p.validate();
  auto domain = sorted_set(sources);
  if (!std::binary_search(domain.begin(), domain.end(), v1))
    throw std::invalid_argument("minimize_s: anchor vertex is not in V1");
  if (v2 >= g.order()) throw std::out_of_range("minimize_s: target vertex out of range");
  std::vector<Vertex> codomain(targets.begin(), targets.end());
  codomain.push_back(v2);
  codomain = sorted_set(codomain);

  PartialAssignment state;
  state.entries.push_back({v1, v2});
  state.raw.domain_size = 1;
  state.raw.mapped = 1;
  state.raw.ec = g.adjacent(v1, v2) ? 0 : 1;

  std::vector<std::uint8_t> used(g.order(), 0);
  used[v2] = 1;
  std::vector<Vertex> pending;
  for (Vertex v : domain)
    if (v != v1) pending.push_back(v);

  std::size_t evaluations = 0;
  std::size_t next = 0;
  while (next < pending.size()) {
    const std::size_t b = std::min(p.k_block, pending.size() - next);
    std::span<const Vertex> block(pending.data() + next, b);
    std::vector<Vertex> free_targets;
    for (Vertex t : codomain)
      if (!used[t]) free_targets.push_back(t);

    GreedyRound round(g, state, block, free_targets, p);
    round.run();
    evaluations += round.evaluations();
    state.raw = round.best_raw();
    for (std::size_t i = 0; i < b; ++i) {
      auto choice = round.best_choice()[i];
      if (choice == GreedyRound::kBottom) {
        state.entries.push_back({block[i], bottom});
      } else {
        state.entries.push_back({block[i], free_targets[choice]});
        used[free_targets[choice]] = 1;
      }
    }
    next += b;
  }

  std::vector<Vertex> dom;
  std::vector<Image> images;
  for (const auto& [v, img] : state.entries) {
    dom.push_back(v);
    images.push_back(img);
  }
  Mapping mapping(g.order(), std::move(dom), std::move(codomain), std::move(images));
  return {std::move(mapping), breakdown_from_raw(state.raw, p), evaluations};
}

// ---------------------------------------------------------------------------

namespace {

struct SearchRecord {
  std::optional<std::size_t> parent;
  Vertex vertex;
  std::optional<Mapping> step;
  ScoreBreakdown score;
  double total;
};

struct QueueKey {
  double total;
  Vertex vertex;
  std::size_t seq;
  bool operator>(const QueueKey& o) const {
    if (total != o.total) return total > o.total;
    if (vertex != o.vertex) return vertex > o.vertex;
    return seq > o.seq;
  }
};

std::vector<Vertex> choose_subset(const Graph& g, std::span<const Vertex> support,
                                  const SearchOptions& options) {
  if (options.rule == SubsetRule::Full) {
    std::vector<Vertex> all(g.order());
    for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
    return all;
  }
  return expand_support(g, support, options.hops);
}

}  // namespace

std::optional<TranslationTrace> best_composition(const Graph& g,
                                                 std::span<const Vertex> initial_support,
                                                 Vertex source, Vertex target,
                                                 const ScoreParams& p,
                                                 const SearchOptions& options) {
  p.validate();
  auto support = sorted_set(initial_support);
  if (!std::binary_search(support.begin(), support.end(), source))
    throw std::invalid_argument("best_composition: source is not in the initial support");
  if (target >= g.order()) throw std::out_of_range("best_composition: target out of range");

  std::vector<SearchRecord> records;
  std::priority_queue<QueueKey, std::vector<QueueKey>, std::greater<>> queue;
  std::vector<std::uint8_t> visited(g.order(), 0);
  std::vector<std::size_t> settled(g.order(), 0);
  std::size_t evaluations = 0;

  records.push_back({std::nullopt, source, std::nullopt, {}, 0.0});
  queue.push({0.0, source, 0});
  bool reached = false;

  while (!queue.empty()) {
    QueueKey key = queue.top();
    queue.pop();
    const std::size_t rec_index = key.seq;
    const Vertex v1 = key.vertex;
    if (visited[v1]) continue;
    visited[v1] = 1;
    settled[v1] = rec_index;
    if (v1 == target) {
      reached = true;
      break;
    }
    std::vector<Vertex> current = records[rec_index].step
                                      ? records[rec_index].step->image_set()
                                      : support;
    auto candidates = choose_subset(g, current, options);
    const double base_total = records[rec_index].total;
    for (Vertex v2 : candidates) {
      if (v2 == v1 || visited[v2]) continue;
      auto result = minimize_s(g, v1, v2, current, candidates, p);
      evaluations += result.evaluations;
      const double total = base_total + result.score.total;
      records.push_back({rec_index, v2, std::move(result.mapping), result.score, total});
      queue.push({total, v2, records.size() - 1});
    }
  }
  if (!reached) return std::nullopt;

  std::vector<std::size_t> chain;
  for (std::optional<std::size_t> r = settled[target]; r; r = records[*r].parent)
    chain.push_back(*r);
  std::reverse(chain.begin(), chain.end());

  std::vector<Image> identity(support.begin(), support.end());
  Mapping composed(g.order(), support, support, std::move(identity));
  std::vector<TraceStep> steps;
  std::vector<ScoreBreakdown> scores;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& rec = records[chain[i]];
    steps.push_back({records[chain[i - 1]].vertex, rec.vertex, *rec.step, rec.score});
    scores.push_back(rec.score);
    composed = compose(*rec.step, composed);
  }
  TranslationTrace trace{source,  target, support, p, std::move(steps), composition_score(scores),
                         composed, evaluation_pair(g, composed), evaluations};
  return trace;
}

// ---------------------------------------------------------------------------

LocalizedSets localized_sets(const Graph& g, std::span<const double> x) {
  if (x.size() != g.order()) throw std::invalid_argument("signal length differs from graph order");
  LocalizedSets out;
  out.support = support(x);
  if (out.support.empty()) throw std::invalid_argument("signal support is empty");
  out.connected = is_connected_subset(g, out.support);
  return out;
}

std::vector<Vertex> expand_support(const Graph& g, std::span<const Vertex> support,
                                   std::uint32_t hops) {
  return ball(g, support, hops);
}

Signal ball_signal(const Graph& g, Vertex center, std::uint32_t hops) {
  Signal x(g.order(), 0.0);
  std::vector<Vertex> seed{center};
  for (Vertex v : ball(g, seed, hops)) x[v] = 1.0;
  return x;
}

std::vector<ScoreParams> SweepGrid::cells() const {
  std::vector<ScoreParams> out;
  for (double a : alphas)
    for (double b : betas)
      for (double c : gammas)
        for (std::size_t k : ks) out.push_back({a, b, c, k});
  return out;
}

SweepReport parameter_sweep(const Graph& g, std::span<const double> x, Vertex source,
                            Vertex target, const SweepGrid& grid, const SearchOptions& options,
                            std::size_t threads) {
  auto sets = localized_sets(g, x);
  auto cells = grid.cells();
  for (const auto& c : cells) c.validate();
  g.distance_table();  // populate the shared cache before fanning out

  std::vector<std::optional<TranslationTrace>> traces(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      traces[i] = best_composition(g, sets.support, source, target, cells[i], options);
  };
  threads = std::max<std::size_t>(1, std::min(threads, cells.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  SweepReport report;
  std::vector<EvaluationPair> pairs;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!traces[i])
      throw NoCompositionFound("no composition reaches vertex " + std::to_string(target + 1));
    pairs.push_back(traces[i]->pair);
    report.records.push_back({cells[i], std::move(*traces[i]), false});
  }
  report.front = pareto_front(pairs);
  for (auto i : report.front) report.records[i].pareto = true;
  return report;
}

}  // namespace gshift
