#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gshift {

/// Vertices are 0-based internally. Every file format and the CLI use 1-based
/// indices; conversion happens at the I/O boundary only.
using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Hop count between two vertices, or infinite when they lie in different
/// connected components.
class Distance {
 public:
  static Distance infinite() { return Distance{}; }
  static Distance finite(std::uint32_t hops) { return Distance{hops}; }

  bool is_finite() const { return hops_.has_value(); }
  std::uint32_t hops() const { return hops_.value(); }

  friend bool operator==(const Distance&, const Distance&) = default;

 private:
  Distance() = default;
  explicit Distance(std::uint32_t h) : hops_(h) {}
  std::optional<std::uint32_t> hops_;
};

/// Sizes of a grid or torus lattice, one entry per dimension, all >= 1.
class Dims {
 public:
  explicit Dims(std::vector<std::size_t> sizes);

  std::size_t rank() const { return sizes_.size(); }
  std::size_t operator[](std::size_t i) const { return sizes_[i]; }
  std::span<const std::size_t> sizes() const { return sizes_; }
  std::size_t volume() const;

  /// Row-major: index = sum_i c[i] * prod_{j>i} d[j], with 0-based c.
  Vertex index_of(std::span<const long> coords) const;
  std::vector<long> coords_of(Vertex v) const;

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  std::vector<std::size_t> sizes_;
};

/// Immutable simple undirected graph. Adjacency is kept both as sorted
/// neighbor lists and as a dense bit table; the all-pairs geodesic table is
/// computed on first use and shared between copies.
class Graph {
 public:
  using Coords = std::vector<std::vector<double>>;

  Graph(std::size_t order, std::vector<Edge> edges,
        std::optional<Coords> coords = std::nullopt);

  std::size_t order() const { return order_; }
  std::size_t size() const { return edges_.size(); }
  /// Edges sorted, each with u < v.
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const {
    return dense_[static_cast<std::size_t>(u) * order_ + v] != 0;
  }
  const std::optional<Coords>& coords() const { return coords_; }

  /// Raw geodesic table, row-major, -1 for unreachable pairs.
  std::span<const std::int32_t> distance_table() const;
  std::int32_t raw_distance(Vertex u, Vertex v) const {
    return distance_table()[static_cast<std::size_t>(u) * order_ + v];
  }

 private:
  struct DistanceCache;

  std::size_t order_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint8_t> dense_;
  std::optional<Coords> coords_;
  std::shared_ptr<DistanceCache> cache_;
};

Graph make_complete(std::size_t n);
Graph make_grid(const Dims& dims);
Graph make_torus(const Dims& dims);
Graph make_ring(std::size_t n);
Graph make_path(std::size_t n);
Graph make_star(std::size_t leaves);
Graph make_petersen();
/// n points uniform in the unit square, edge iff Euclidean distance < radius.
/// Deterministic for a given seed (mt19937_64, 53-bit mantissas).
Graph make_random_geometric(std::size_t n, double radius, std::uint64_t seed);

Distance geodesic(const Graph& g, Vertex u, Vertex v);
/// Vertices at exactly `hops` from v.
std::vector<Vertex> neighborhood(const Graph& g, Vertex v, std::uint32_t hops);
/// Vertices at distance <= hops from some vertex of `seeds`, sorted.
std::vector<Vertex> ball(const Graph& g, std::span<const Vertex> seeds,
                         std::uint32_t hops);
bool is_connected_subset(const Graph& g, std::span<const Vertex> subset);

}  // namespace gshift
