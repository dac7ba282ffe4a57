#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "gshift/euclid.hpp"
#include "gshift/search.hpp"
#include "helpers.hpp"

using namespace gshift;

namespace {

// Smallest score over every injective assignment V1 -> V2 + bottom with
// v1 -> v2 fixed.
double brute_min(const Graph& g, Vertex v1, Vertex v2, const std::vector<Vertex>& sources,
                 std::vector<Vertex> targets, const ScoreParams& p) {
  if (std::find(targets.begin(), targets.end(), v2) == targets.end()) targets.push_back(v2);
  oracle::Adjacency a(g);
  std::vector<int> dom(sources.begin(), sources.end());
  oracle::Tuple t(g.order(), oracle::kBottom);
  t[v1] = static_cast<int>(v2);
  std::vector<Vertex> rest;
  for (Vertex s : sources)
    if (s != v1) rest.push_back(s);
  std::vector<bool> used(g.order(), false);
  used[v2] = true;
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == rest.size()) {
      best = std::min(best, oracle::score(a, dom, t, p.alpha, p.beta, p.gamma));
      return;
    }
    for (Vertex w : targets) {
      if (used[w]) continue;
      used[w] = true;
      t[rest[i]] = static_cast<int>(w);
      self(self, i + 1);
      used[w] = false;
    }
    t[rest[i]] = oracle::kBottom;
    self(self, i + 1);
  };
  rec(rec, 0);
  return best;
}

std::vector<Vertex> vertex_ball(const Graph& g, Vertex c, std::uint32_t h) {
  std::vector<Vertex> seed{c};
  return ball(g, seed, h);
}

void check_trace(const Graph& g, const TranslationTrace& t) {
  double sum = 0;
  double prev = 0;
  for (const auto& s : t.steps) {
    sum += s.score.total;
    CHECK(sum >= prev);
    prev = sum;
    CHECK(s.mapping(s.from) == Image{s.to});
  }
  CHECK(std::abs(t.cumulative_score - sum) <= 1e-9);
  // replay
  Image at = t.source;
  for (const auto& s : t.steps) at = at ? s.mapping(*at) : bottom;
  CHECK(at == Image{t.target});
  CHECK(t.composed(t.source) == Image{t.target});
  CHECK(t.pair == evaluation_pair(g, t.composed));
}

}  // namespace

TEST_CASE("single-source greedy") {
  auto ring = make_ring(6);
  std::vector<Vertex> v1{2}, v2{1, 2, 3};
  ScoreParams p;
  auto r = minimize_s(ring, 2, 3, v1, v2, p);
  CHECK(r.mapping(2) == Image{3});
  CHECK(r.mapping.domain().size() == 1);
  CHECK(r.score.total == score(ring, r.mapping, p).total);
  CHECK(r.score.total == 0);
  CHECK(r.evaluations == 0);
  CHECK_THROWS(minimize_s(ring, 4, 3, v1, v2, p));
}

TEST_CASE("greedy recovers the Dirac shift on a torus ball") {
  Dims d({5, 5});
  auto t = make_torus(d);
  const Vertex c = 12;
  auto v1 = vertex_ball(t, c, 1);
  auto v2 = expand_support(t, v1);
  CHECK(v2.size() == 13);
  auto shift = euclidean_on_torus(d, dirac(2, 1, 1));
  const Vertex target = *shift(c);
  ScoreParams p{1, 0.1, 0.5, 1};
  CHECK(brute_min(t, c, target, v1, v2, p) == 0);
  auto exhaustive = minimize_s(t, c, target, v1, v2, ScoreParams{1, 0.1, 0.5, 5});
  CHECK(exhaustive.score.total == 0);
  auto greedy = minimize_s(t, c, target, v1, v2, p);
  CHECK(greedy.score.total == 0);
  for (Vertex v : v1) CHECK(greedy.mapping(v) == shift(v));
  CHECK(greedy.evaluations <= v1.size() * (v2.size() + 1));
}

TEST_CASE("full-block greedy is exhaustive") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = oracle::random_graph(7, 0.4, rng);
    Vertex c = static_cast<Vertex>(rng() % 7);
    std::vector<Vertex> v1{c};
    for (Vertex w : g.neighbors(c))
      if (v1.size() < 4) v1.push_back(w);
    std::sort(v1.begin(), v1.end());
    auto v2 = expand_support(g, v1);
    if (v2.size() > 7) v2.resize(7);
    Vertex tgt = v2[rng() % v2.size()];
    ScoreParams p{0.6, 0.3, 0.4, v1.size()};
    auto r = minimize_s(g, c, tgt, v1, v2, p);
    CHECK(r.score.total == doctest::Approx(brute_min(g, c, tgt, v1, v2, p)).epsilon(1e-12));
    CHECK(r.score.total == score(g, r.mapping, p).total);
  }
}

TEST_CASE("greedy score is bit-identical to a fresh evaluation") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = make_random_geometric(40, 0.3, trial);
    Vertex c = static_cast<Vertex>(rng() % 40);
    auto v1 = vertex_ball(g, c, 1);
    auto v2 = expand_support(g, v1);
    Vertex tgt = v2[rng() % v2.size()];
    ScoreParams p{0.1 + trial % 3 * 0.4, 0.5, 1.0, 1 + static_cast<std::size_t>(trial % 3)};
    auto r = minimize_s(g, c, tgt, v1, v2, p);
    CHECK(r.score.total == score(g, r.mapping, p).total);
    CHECK(r.mapping(c) == Image{tgt});
    if (p.k_block == 1) CHECK(r.evaluations <= 2 * v1.size() * (v2.size() + 1));
  }
}

TEST_CASE("greedy zero implies exhaustive zero") {
  for (auto dims : {std::vector<std::size_t>{5, 5}, std::vector<std::size_t>{4, 6}}) {
    Dims d(dims);
    for (auto g : {make_torus(d), make_grid(d)}) {
      for (Vertex c = 0; c < g.order(); c += 3) {
        auto v1 = vertex_ball(g, c, 1);
        auto v2 = expand_support(g, v1);
        for (Vertex w : g.neighbors(c)) {
          auto greedy = minimize_s(g, c, w, v1, v2, {});
          if (greedy.score.total != 0) continue;
          ScoreParams full;
          full.k_block = v1.size();
          CHECK(minimize_s(g, c, w, v1, v2, full).score.total == 0);
        }
      }
    }
  }
}

TEST_CASE("localized sets") {
  auto ring = make_ring(5);
  auto x = ball_signal(ring, 0, 0);
  auto sets = localized_sets(ring, x);
  CHECK(sets.support == std::vector<Vertex>{0});
  CHECK(expand_support(ring, sets.support).size() == 3);
  std::vector<double> full(5, 1.0);
  CHECK(expand_support(ring, localized_sets(ring, full).support).size() == 5);
  auto t = make_torus(Dims({5, 5}));
  auto s5 = localized_sets(t, ball_signal(t, 7, 1)).support;
  CHECK(s5.size() == 5);
  CHECK(expand_support(t, s5).size() == 13);
  std::vector<double> zero(5, 0.0);
  CHECK_THROWS(localized_sets(ring, zero));
  std::vector<double> split{1, 0, 1, 0, 0};
  CHECK_FALSE(localized_sets(ring, split).connected);
  CHECK_THROWS(localized_sets(ring, std::vector<double>(4, 1.0)));
}

TEST_CASE("composition search on small graphs") {
  auto path = make_path(3);
  std::vector<Vertex> start{0};
  auto trace = best_composition(path, start, 0, 2, {});
  REQUIRE(trace);
  CHECK(trace->steps.size() == 2);
  CHECK(trace->cumulative_score == 0);
  for (const auto& s : trace->steps) {
    CHECK(s.score.ec_term == 0);
    CHECK(s.score.def_term == 0);
    CHECK(s.score.loss_term == 0);
  }
  check_trace(path, *trace);

  auto same = best_composition(path, start, 0, 0, {});
  REQUIRE(same);
  CHECK(same->steps.empty());
  CHECK(same->cumulative_score == 0);
  CHECK(same->composed(0) == Image{0});

  Graph split(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(best_composition(split, start, 0, 3, {}).has_value());
  CHECK_THROWS(best_composition(path, start, 1, 2, {}));
}

TEST_CASE("composition search on a random geometric graph") {
  auto g = make_random_geometric(100, 0.15, 7);
  std::vector<Vertex> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  Vertex src = 0, tgt = 0;
  std::int32_t far = -1;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.raw_distance(0, v) > far) far = g.raw_distance(0, v), tgt = v;
  auto x = ball_signal(g, src, 1);
  auto support = localized_sets(g, x).support;
  for (std::size_t k = 1; k <= 3; ++k) {
    ScoreParams p{1, 0.1, 0.5, k};
    auto trace = best_composition(g, support, src, tgt, p);
    REQUIRE(trace);
    check_trace(g, *trace);
    CHECK(!trace->steps.empty());
    CHECK(trace->steps.size() <= static_cast<std::size_t>(far));
  }
}

TEST_CASE("full rule uses every vertex") {
  auto ring = make_ring(6);
  std::vector<Vertex> all{0, 1, 2, 3, 4, 5};
  SearchOptions opt;
  opt.rule = SubsetRule::Full;
  ScoreParams p;
  p.k_block = 6;
  auto trace = best_composition(ring, all, 0, 3, p, opt);
  REQUIRE(trace);
  check_trace(ring, *trace);
  CHECK(trace->cumulative_score == 0);
  CHECK(trace->pair == EvaluationPair{0, 0});
}

TEST_CASE("parameter sweep") {
  auto g = make_random_geometric(60, 0.2, 3);
  Vertex tgt = 0;
  std::int32_t far = -1;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.raw_distance(5, v) > far) far = g.raw_distance(5, v), tgt = v;
  auto x = ball_signal(g, 5, 1);
  SweepGrid grid;
  CHECK(grid.cells().size() == 81);
  grid.ks = {1, 2};
  grid.alphas = {0.5, 1.0};
  auto serial = parameter_sweep(g, x, 5, tgt, grid, {}, 1);
  auto parallel = parameter_sweep(g, x, 5, tgt, grid, {}, 4);
  REQUIRE(serial.records.size() == 2 * 3 * 3 * 2);
  REQUIRE(parallel.records.size() == serial.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].trace.pair == parallel.records[i].trace.pair);
    CHECK(serial.records[i].trace.cumulative_score == parallel.records[i].trace.cumulative_score);
    CHECK(serial.records[i].pareto == parallel.records[i].pareto);
  }
  CHECK(serial.front == parallel.front);
  CHECK_FALSE(serial.front.empty());
  for (auto i : serial.front)
    for (const auto& r : serial.records)
      CHECK_FALSE(dominates(r.trace.pair, serial.records[i].trace.pair));

  SweepGrid one;
  one.alphas = {1};
  one.betas = {0.1};
  one.gammas = {0.5};
  one.ks = {1};
  auto single = parameter_sweep(g, x, 5, tgt, one, {}, 2);
  CHECK(single.records.size() == 1);
  CHECK(single.front == std::vector<std::size_t>{0});

  SweepGrid zero = one;
  zero.alphas = {0};
  zero.betas = {0};
  zero.gammas = {0};
  CHECK_THROWS_AS(parameter_sweep(g, x, 5, tgt, zero, {}, 1), std::invalid_argument);

  Graph split(4, {{0, 1}, {2, 3}});
  std::vector<double> xs{1, 0, 0, 0};
  CHECK_THROWS_AS(parameter_sweep(split, xs, 0, 3, one, {}, 1), NoCompositionFound);
}
