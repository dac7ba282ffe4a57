#include "gshift/euclid.hpp"

#include <stdexcept>

namespace gshift {

namespace {

void check_rank(const Dims& dims, const Offset& delta) {
  if (delta.size() != dims.rank())
    throw std::invalid_argument("offset rank differs from lattice rank");
}

long wrap(long x, std::size_t d) {
  long m = static_cast<long>(d);
  return ((x % m) + m) % m;
}

}  // namespace

Offset dirac(std::size_t rank, std::size_t i, int sign) {
  if (i < 1 || i > rank) throw std::out_of_range("Dirac index outside 1..rank");
  if (sign != 1 && sign != -1) throw std::invalid_argument("Dirac sign must be +1 or -1");
  Offset e(rank, 0);
  e[i - 1] = sign;
  return e;
}

Mapping euclidean_on_torus(const Dims& dims, const Offset& delta) {
  check_rank(dims, delta);
  const std::size_t n = dims.volume();
  std::vector<Image> images(n);
  for (Vertex v = 0; v < n; ++v) {
    auto c = dims.coords_of(v);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = wrap(c[i] + delta[i], dims[i]);
    images[v] = dims.index_of(c);
  }
  return Mapping::full(n, std::move(images));
}

Mapping euclidean_on_grid(const Dims& dims, const Offset& delta) {
  check_rank(dims, delta);
  const std::size_t n = dims.volume();
  std::vector<Image> images(n, bottom);
  for (Vertex v = 0; v < n; ++v) {
    auto c = dims.coords_of(v);
    bool inside = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] += delta[i];
      inside = inside && c[i] >= 0 && static_cast<std::size_t>(c[i]) < dims[i];
    }
    if (inside) images[v] = dims.index_of(c);
  }
  return Mapping::full(n, std::move(images));
}

Contamination contaminate_torus(const Graph& torus, const Dims& dims, Vertex seed, Vertex image) {
  if (torus.order() != dims.volume())
    throw std::invalid_argument("torus order differs from lattice volume");
  if (seed >= torus.order() || image >= torus.order() || !torus.adjacent(seed, image))
    throw std::invalid_argument("contamination seed must be an edge of the torus");
  auto a = dims.coords_of(seed);
  auto b = dims.coords_of(image);
  Offset step(dims.rank(), 0);
  for (std::size_t i = 0; i < step.size(); ++i) {
    long diff = wrap(b[i] - a[i], dims[i]);
    if (diff == 0) continue;
    step[i] = diff == 1 ? 1 : -1;
  }
  bool unique = true;
  for (auto d : dims.sizes()) unique = unique && d >= 5;
  return {euclidean_on_torus(dims, step), step, unique};
}

std::optional<Offset> torus_dirac_offset(const Dims& dims, const Mapping& m) {
  if (m.universe() != dims.volume() || !m.is_full()) return std::nullopt;
  for (std::size_t i = 1; i <= dims.rank(); ++i) {
    for (int sign : {1, -1}) {
      auto e = dirac(dims.rank(), i, sign);
      if (euclidean_on_torus(dims, e) == m) return e;
    }
  }
  return std::nullopt;
}

bool satisfies_large_grid_assumption(const Dims& dims) {
  const std::size_t rank = dims.rank();
  if (dims[rank - 1] < 3) return false;
  for (std::size_t i = 0; i + 1 < rank; ++i) {
    std::size_t tail = 1;
    for (std::size_t j = i + 1; j < rank; ++j) tail *= dims[j];
    if (dims[i] < 2 + 2 * tail) return false;
  }
  return true;
}

std::vector<Vertex> grid_slice(const Dims& dims, std::size_t i, std::size_t j) {
  if (i < 1 || i > dims.rank()) throw std::out_of_range("slice dimension outside 1..rank");
  if (j < 1 || j > dims[i - 1]) throw std::out_of_range("slice coordinate outside 1..d[i]");
  std::vector<Vertex> out;
  for (Vertex v = 0; v < dims.volume(); ++v)
    if (dims.coords_of(v)[i - 1] == static_cast<long>(j - 1)) out.push_back(v);
  return out;
}

}  // namespace gshift
