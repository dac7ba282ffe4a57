#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the library except to read a graph's edge list.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gshift/graph.hpp"

namespace oracle {

constexpr int kBottom = -1;

using Tuple = std::vector<int>;  // image per vertex, kBottom for bottom

struct Adjacency {
  int n = 0;
  std::vector<std::vector<bool>> edge;

  explicit Adjacency(const gshift::Graph& g)
      : n(static_cast<int>(g.order())), edge(n, std::vector<bool>(n, false)) {
    for (const auto& e : g.edges()) edge[e.u][e.v] = edge[e.v][e.u] = true;
  }
};

/// Floyd-Warshall, -1 for unreachable.
inline std::vector<std::vector<int>> distances(const Adjacency& a) {
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(a.n, std::vector<int>(a.n, inf));
  for (int i = 0; i < a.n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < a.n; ++j)
      if (a.edge[i][j]) d[i][j] = 1;
  }
  for (int k = 0; k < a.n; ++k)
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return d;
}

inline bool injective(const Tuple& t, int n) {
  std::vector<bool> seen(n, false);
  for (int w : t) {
    if (w == kBottom) continue;
    if (seen[w]) return false;
    seen[w] = true;
  }
  return true;
}

inline bool edge_constrained(const Adjacency& a, const Tuple& t) {
  for (int v = 0; v < a.n; ++v)
    if (t[v] != kBottom && !a.edge[v][t[v]]) return false;
  return true;
}

inline bool strongly_preserving(const Adjacency& a, const Tuple& t) {
  for (int u = 0; u < a.n; ++u)
    for (int v = u + 1; v < a.n; ++v)
      if (t[u] != kBottom && t[v] != kBottom && a.edge[u][v] != a.edge[t[u]][t[v]]) return false;
  return true;
}

inline bool distance_preserving(const Adjacency& a, const Tuple& t) {
  auto d = distances(a);
  for (int u = 0; u < a.n; ++u)
    for (int v = u + 1; v < a.n; ++v)
      if (t[u] != kBottom && t[v] != kBottom && d[u][v] != d[t[u]][t[v]]) return false;
  return true;
}

inline int loss(const Tuple& t) {
  int l = 0;
  for (int w : t) l += w == kBottom;
  return l;
}

/// Every image tuple in (V + bottom)^V, in lexicographic order with bottom
/// counted after every vertex, filtered by injectivity, EC and SNP.
inline std::vector<Tuple> all_translations(const Adjacency& a) {
  std::vector<Tuple> out;
  const int base = a.n + 1;
  std::vector<int> digit(a.n, 0);
  while (true) {
    Tuple t(a.n);
    for (int v = 0; v < a.n; ++v) t[v] = digit[v] == a.n ? kBottom : digit[v];
    if (injective(t, a.n) && edge_constrained(a, t) && strongly_preserving(a, t))
      out.push_back(t);
    int pos = a.n - 1;
    while (pos >= 0 && ++digit[pos] == base) digit[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

/// a precedes b: strictly larger loss and at least one shared non-bottom
/// assignment.
inline bool precedes(const Tuple& a, const Tuple& b) {
  if (loss(a) <= loss(b)) return false;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] != kBottom && a[v] == b[v]) return true;
  return false;
}

inline std::vector<Tuple> minimal(const std::vector<Tuple>& all) {
  std::vector<Tuple> out;
  for (const auto& a : all) {
    bool has_successor = false;
    for (const auto& b : all) has_successor = has_successor || precedes(a, b);
    if (!has_successor) out.push_back(a);
  }
  return out;
}

/// Score straight from the definition, V1 = `domain` (0-based vertices,
/// images given in `t` indexed by vertex).
inline double score(const Adjacency& a, const std::vector<int>& domain, const Tuple& t,
                    double alpha, double beta, double gamma) {
  auto d = distances(a);
  std::vector<int> mapped;
  int lost = 0;
  for (int v : domain) {
    if (t[v] == kBottom)
      ++lost;
    else
      mapped.push_back(v);
  }
  int ec = 0;
  for (int v : mapped) ec += !a.edge[v][t[v]];
  double def = 0;
  for (std::size_t i = 0; i < mapped.size(); ++i)
    for (std::size_t j = i + 1; j < mapped.size(); ++j) {
      int d1 = d[mapped[i]][mapped[j]];
      int d2 = d[t[mapped[i]]][t[mapped[j]]];
      if (d1 < 0 && d2 < 0) continue;
      if (d1 < 0 || d2 < 0)
        def += a.n;
      else
        def += std::abs(d1 - d2);
    }
  const double m = static_cast<double>(mapped.size());
  double s = alpha * lost / static_cast<double>(domain.size());
  if (m > 0) s += beta * ec / m;
  if (m > 1) s += gamma * 2.0 * def / (m * (m - 1));
  return s;
}

/// Erdos-Renyi style graph with edge probability p, for property tests.
inline gshift::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<gshift::Edge> edges;
  for (gshift::Vertex u = 0; u < n; ++u)
    for (gshift::Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return gshift::Graph(n, std::move(edges));
}

/// Graph whose edges are the set bits of `mask` over the pairs (u < v) in
/// row order.
inline gshift::Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<gshift::Edge> edges;
  int bit = 0;
  for (gshift::Vertex u = 0; u < n; ++u)
    for (gshift::Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) edges.push_back({u, v});
  return gshift::Graph(n, std::move(edges));
}

inline std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// Derangements by inclusion-exclusion with integers.
inline std::int64_t derangements(int n) {
  std::int64_t sum = 0;
  for (int j = 0; j <= n; ++j) {
    std::int64_t term = static_cast<std::int64_t>(factorial(n) / factorial(j));
    sum += j % 2 ? -term : term;
  }
  return sum;
}

}  // namespace oracle
