#include "gshift/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>

namespace gshift {

// ---------------------------------------------------------------------------
// Dims

Dims::Dims(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("dimensions vector is empty");
  for (auto d : sizes_)
    if (d == 0) throw std::invalid_argument("dimension sizes must be >= 1");
}

std::size_t Dims::volume() const {
  std::size_t p = 1;
  for (auto d : sizes_) p *= d;
  return p;
}

Vertex Dims::index_of(std::span<const long> coords) const {
  if (coords.size() != sizes_.size())
    throw std::invalid_argument("coordinate rank mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (coords[i] < 0 || static_cast<std::size_t>(coords[i]) >= sizes_[i])
      throw std::out_of_range("coordinate outside lattice");
    idx = idx * sizes_[i] + static_cast<std::size_t>(coords[i]);
  }
  return static_cast<Vertex>(idx);
}

std::vector<long> Dims::coords_of(Vertex v) const {
  std::vector<long> c(sizes_.size());
  std::size_t rest = v;
  for (std::size_t i = sizes_.size(); i-- > 0;) {
    c[i] = static_cast<long>(rest % sizes_[i]);
    rest /= sizes_[i];
  }
  return c;
}

// ---------------------------------------------------------------------------
// Graph

struct Graph::DistanceCache {
  std::once_flag once;
  std::vector<std::int32_t> table;
};

Graph::Graph(std::size_t order, std::vector<Edge> edges, std::optional<Coords> coords)
    : order_(order),
      adjacency_(order),
      dense_(order * order, 0),
      coords_(std::move(coords)),
      cache_(std::make_shared<DistanceCache>()) {
  for (auto& e : edges) {
    if (e.u >= order_ || e.v >= order_) throw std::out_of_range("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  edges_ = std::move(edges);
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
    dense_[static_cast<std::size_t>(e.u) * order_ + e.v] = 1;
    dense_[static_cast<std::size_t>(e.v) * order_ + e.u] = 1;
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
  if (coords_ && coords_->size() != order_)
    throw std::invalid_argument("coordinate count differs from vertex count");
}

std::span<const std::int32_t> Graph::distance_table() const {
  std::call_once(cache_->once, [this] {
    auto& t = cache_->table;
    t.assign(order_ * order_, -1);
    std::vector<Vertex> queue(order_);
    for (Vertex s = 0; s < order_; ++s) {
      auto* row = t.data() + static_cast<std::size_t>(s) * order_;
      std::size_t head = 0, tail = 0;
      row[s] = 0;
      queue[tail++] = s;
      while (head < tail) {
        Vertex u = queue[head++];
        for (Vertex w : adjacency_[u]) {
          if (row[w] < 0) {
            row[w] = row[u] + 1;
            queue[tail++] = w;
          }
        }
      }
    }
  });
  return cache_->table;
}

// ---------------------------------------------------------------------------
// Generators

Graph make_complete(std::size_t n) {
  if (n == 0) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

namespace {

Graph::Coords lattice_coords(const Dims& dims) {
  Graph::Coords coords(dims.volume());
  for (Vertex v = 0; v < coords.size(); ++v) {
    auto c = dims.coords_of(v);
    coords[v].assign(c.begin(), c.end());
    for (auto& x : coords[v]) x += 1.0;  // lattice points are 1..d[i]
  }
  return coords;
}

Graph make_lattice(const Dims& dims, bool wrap) {
  std::vector<Edge> edges;
  const std::size_t n = dims.volume();
  for (Vertex v = 0; v < n; ++v) {
    auto c = dims.coords_of(v);
    for (std::size_t i = 0; i < dims.rank(); ++i) {
      auto step = c;
      if (static_cast<std::size_t>(c[i]) + 1 < dims[i]) {
        step[i] = c[i] + 1;
      } else if (wrap) {
        step[i] = 0;
      } else {
        continue;
      }
      Vertex w = dims.index_of(step);
      if (w != v) edges.push_back({std::min(v, w), std::max(v, w)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, std::move(edges), lattice_coords(dims));
}

}  // namespace

Graph make_grid(const Dims& dims) { return make_lattice(dims, false); }

Graph make_torus(const Dims& dims) {
  for (std::size_t i = 0; i < dims.rank(); ++i)
    if (dims[i] < 3)
      throw std::invalid_argument("torus dimensions must all be >= 3 (got " +
                                  std::to_string(dims[i]) + ")");
  return make_lattice(dims, true);
}

Graph make_ring(std::size_t n) {
  if (n < 3) throw std::invalid_argument("ring needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = static_cast<Vertex>((v + 1) % n);
    edges.push_back({std::min(v, w), std::max(v, w)});
  }
  return Graph(n, std::move(edges));
}

Graph make_path(std::size_t n) {
  if (n == 0) throw std::invalid_argument("path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, std::move(edges));
}

Graph make_star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, std::move(edges));
}

Graph make_petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({i + 5, (i + 2) % 5 + 5});
  }
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  return Graph(10, std::move(edges));
}

Graph make_random_geometric(std::size_t n, double radius, std::uint64_t seed) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Graph::Coords coords(n);
  for (auto& p : coords) {
    double x = unit();
    double y = unit();
    p = {x, y};
  }
  std::vector<Edge> edges;
  const double r2 = radius * radius;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      double dx = coords[u][0] - coords[v][0];
      double dy = coords[u][1] - coords[v][1];
      if (dx * dx + dy * dy < r2) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges), std::move(coords));
}

// ---------------------------------------------------------------------------
// Distances

namespace {
void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.order()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}
}  // namespace

Distance geodesic(const Graph& g, Vertex u, Vertex v) {
  check_vertex(g, u);
  check_vertex(g, v);
  auto d = g.raw_distance(u, v);
  return d < 0 ? Distance::infinite() : Distance::finite(static_cast<std::uint32_t>(d));
}

std::vector<Vertex> neighborhood(const Graph& g, Vertex v, std::uint32_t hops) {
  check_vertex(g, v);
  std::vector<Vertex> out;
  for (Vertex w = 0; w < g.order(); ++w)
    if (g.raw_distance(v, w) == static_cast<std::int32_t>(hops)) out.push_back(w);
  return out;
}

std::vector<Vertex> ball(const Graph& g, std::span<const Vertex> seeds, std::uint32_t hops) {
  std::vector<Vertex> out;
  for (Vertex w = 0; w < g.order(); ++w) {
    for (Vertex s : seeds) {
      check_vertex(g, s);
      auto d = g.raw_distance(s, w);
      if (d >= 0 && d <= static_cast<std::int32_t>(hops)) {
        out.push_back(w);
        break;
      }
    }
  }
  return out;
}

bool is_connected_subset(const Graph& g, std::span<const Vertex> subset) {
  if (subset.empty()) return true;
  std::vector<std::uint8_t> in(g.order(), 0), seen(g.order(), 0);
  for (Vertex v : subset) in[v] = 1;
  std::deque<Vertex> queue{subset.front()};
  seen[subset.front()] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == subset.size();
}

}  // namespace gshift
