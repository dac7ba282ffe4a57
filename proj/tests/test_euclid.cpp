#include <doctest.h>

#include <chrono>

#include "gshift/enumerate.hpp"
#include "gshift/euclid.hpp"

using namespace gshift;

TEST_CASE("Dirac vectors") {
  CHECK(dirac(2, 1, 1) == Offset{1, 0});
  CHECK(dirac(2, 2, -1) == Offset{0, -1});
  CHECK(dirac(3, 3, 1) == Offset{0, 0, 1});
  CHECK_THROWS(dirac(2, 3, 1));
  CHECK_THROWS(dirac(2, 1, 2));
}

TEST_CASE("Euclidean maps on the torus") {
  Dims d({5, 5});
  auto t = make_torus(d);
  auto e1 = euclidean_on_torus(d, dirac(2, 1, 1));
  CHECK(loss(e1) == 0);
  CHECK(is_translation(t, e1));
  auto zero = euclidean_on_torus(d, Offset{0, 0});
  CHECK(zero == identity_map(t));
  CHECK_FALSE(is_translation(t, zero));
  auto diag = euclidean_on_torus(d, Offset{1, 1});
  CHECK(loss(diag) == 0);
  CHECK_FALSE(check_ec(t, diag).ok);
  CHECK_THROWS(euclidean_on_torus(d, Offset{1}));
}

TEST_CASE("Euclidean maps on the grid") {
  Dims d({6, 5});
  CHECK(loss(euclidean_on_grid(d, dirac(2, 1, 1))) == 5);
  CHECK(loss(euclidean_on_grid(d, dirac(2, 2, 1))) == 6);
  CHECK(loss(euclidean_on_grid(d, Offset{0, 0})) == 0);
  auto g = make_grid(d);
  CHECK(is_translation(g, euclidean_on_grid(d, dirac(2, 2, -1))));
}

TEST_CASE("grid loss is the product of the other dimensions") {
  for (std::size_t a = 1; a <= 100; ++a)
    for (std::size_t b = 1; a * b <= 100; ++b)
      for (std::size_t c = 1; a * b * c <= 100; ++c) {
        std::vector<std::vector<std::size_t>> shapes{{a}, {a, b}, {a, b, c}};
        for (const auto& s : shapes) {
          Dims d(s);
          for (std::size_t i = 1; i <= d.rank(); ++i)
            for (int sign : {1, -1}) {
              std::size_t expected = d.volume() / d[i - 1];
              CHECK(loss(euclidean_on_grid(d, dirac(d.rank(), i, sign))) == expected);
            }
        }
      }
}

TEST_CASE("contamination on the torus") {
  Dims d({5, 5});
  auto t = make_torus(d);
  auto c = contaminate_torus(t, d, 0, 5);  // (1,1) -> (2,1)
  CHECK(c.mapping == euclidean_on_torus(d, dirac(2, 1, 1)));
  CHECK(c.step == Offset{1, 0});
  CHECK(c.unique);
  CHECK(is_translation(t, c.mapping));
  std::vector<Mapping> results;
  for (Vertex w : t.neighbors(0)) {
    auto r = contaminate_torus(t, d, 0, w);
    CHECK(std::find(results.begin(), results.end(), r.mapping) == results.end());
    results.push_back(r.mapping);
  }
  CHECK(results.size() == 4);
  CHECK_THROWS(contaminate_torus(t, d, 0, 6));
  Dims small({4, 4});
  CHECK_FALSE(contaminate_torus(make_torus(small), small, 0, 1).unique);
}

TEST_CASE("lossless translations of the 5x5 torus are the Dirac shifts") {
  Dims d({5, 5});
  auto t = make_torus(d);
  EnumerationFilter f;
  f.lossless_only = true;
  auto all = enumerate_translations(t, f);
  CHECK(all.size() == 4);
  for (const auto& m : all) CHECK(torus_dirac_offset(d, m).has_value());
}

TEST_CASE("the 4x4 torus has a lossless translation that is not a Dirac shift") {
  Dims d({4, 4});
  auto t = make_torus(d);
  EnumerationFilter f;
  f.lossless_only = true;
  bool witness = false;
  for_each_translation(t, f, [&](const Mapping& m) {
    if (!torus_dirac_offset(d, m)) {
      witness = is_translation(t, m) && loss(m) == 0;
      return false;
    }
    return true;
  });
  CHECK(witness);
}

TEST_CASE("composing Dirac shifts gives the Euclidean map of the net offset") {
  Dims d({5, 6});
  auto e1 = euclidean_on_torus(d, dirac(2, 1, 1));
  auto e2m = euclidean_on_torus(d, dirac(2, 2, -1));
  auto m = compose(e1, compose(e1, e2m));
  CHECK(m == euclidean_on_torus(d, Offset{2, -1}));
}

TEST_CASE("large grid assumption") {
  CHECK(satisfies_large_grid_assumption(Dims({8, 3})));
  CHECK_FALSE(satisfies_large_grid_assumption(Dims({6, 5})));
  CHECK(satisfies_large_grid_assumption(Dims({3})));
}

TEST_CASE("grid slices") {
  Dims d({6, 5});
  CHECK(grid_slice(d, 1, 2).size() == 5);
  CHECK(grid_slice(d, 2, 5).size() == 6);
  std::vector<int> hits(30, 0);
  for (std::size_t j = 1; j <= 6; ++j)
    for (Vertex v : grid_slice(d, 1, j)) ++hits[v];
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(grid_slice(d, 3, 1));
  CHECK_THROWS(grid_slice(d, 1, 7));
}

TEST_CASE("minimality of the first Dirac shift on the 8x3 grid") {
  Dims d({8, 3});
  auto g = make_grid(d);
  EnumerationFilter f;
  f.max_loss = 2;
  CHECK_FALSE(find_translation(g, f).has_value());
  auto e1 = euclidean_on_grid(d, dirac(2, 1, 1));
  CHECK(loss(e1) == 3);
  CHECK(is_minimal(g, e1));
}

TEST_CASE("small grids have non-Dirac minimal translations") {
  // smallest loss of a minimal translation other than a Dirac shift
  const std::size_t expected[] = {1, 3, 5};
  for (std::size_t side = 3; side <= 5; ++side) {
    Dims d({side, side});
    auto g = make_grid(d);
    std::optional<Mapping> best;
    for (std::size_t l = 1; l <= side * side && !best; ++l) {
      EnumerationFilter f;
      f.min_loss = l;
      f.max_loss = l;
      for_each_translation(g, f, [&](const Mapping& m) {
        bool dirac_shift = false;
        for (std::size_t i = 1; i <= 2; ++i)
          for (int sign : {1, -1}) dirac_shift = dirac_shift || m == euclidean_on_grid(d, dirac(2, i, sign));
        if (!dirac_shift && is_minimal(g, m)) {
          best = m;
          return false;
        }
        return true;
      });
    }
    REQUIRE(best);
    CHECK(loss(*best) == expected[side - 3]);
  }
}

TEST_CASE("low-loss translation counts on square grids") {
  // frozen from an independent depth-first count
  struct Row {
    std::size_t side, loss, count;
  };
  for (auto r : {Row{3, 1, 2}, Row{3, 2, 16}, Row{3, 3, 96}, Row{4, 2, 0}, Row{4, 3, 8},
                 Row{4, 4, 254}, Row{5, 4, 0}, Row{5, 5, 28}}) {
    EnumerationFilter f;
    f.min_loss = r.loss;
    f.max_loss = r.loss;
    CHECK(count_translations(make_grid(Dims({r.side, r.side})), f) == r.count);
  }
}

TEST_CASE("Dirac shifts of the 8x3 grid are pseudo-minimal") {
  Dims d({8, 3});
  auto g = make_grid(d);
  for (std::size_t i = 1; i <= 2; ++i)
    for (int sign : {1, -1}) CHECK(is_pseudo_minimal(g, euclidean_on_grid(d, dirac(2, i, sign))));
  CHECK(loss(euclidean_on_grid(d, dirac(2, 2, 1))) == 8);
}
