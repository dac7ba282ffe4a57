#include "gshift/mapping.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gshift {

namespace {

void sort_unique(std::vector<Vertex>& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  for (Vertex i = 0; i < n; ++i) v[i] = i;
  return v;
}

// |d1 - d2| with the infinite-distance convention.
std::uint64_t distance_gap(std::int32_t d1, std::int32_t d2, std::size_t order) {
  if (d1 < 0 && d2 < 0) return 0;
  if (d1 < 0 || d2 < 0) return order;
  return static_cast<std::uint64_t>(d1 > d2 ? d1 - d2 : d2 - d1);
}

}  // namespace

Mapping::Mapping(std::size_t universe, std::vector<Vertex> domain, std::vector<Vertex> codomain,
                 std::vector<Image> images)
    : universe_(universe), slot_(universe, -1) {
  if (domain.size() != images.size())
    throw std::invalid_argument("mapping: one image per domain vertex required");
  // Sort domain and images together.
  std::vector<std::size_t> order(domain.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
  domain_.reserve(domain.size());
  images_.reserve(domain.size());
  for (auto i : order) {
    domain_.push_back(domain[i]);
    images_.push_back(images[i]);
  }
  codomain_ = std::move(codomain);
  sort_unique(codomain_);

  std::vector<std::uint8_t> in_codomain(universe_, 0), used(universe_, 0);
  for (Vertex c : codomain_) {
    if (c >= universe_) throw std::invalid_argument("mapping: codomain vertex out of range");
    in_codomain[c] = 1;
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    Vertex v = domain_[i];
    if (v >= universe_) throw std::invalid_argument("mapping: domain vertex out of range");
    if (slot_[v] >= 0) throw std::invalid_argument("mapping: duplicate domain vertex");
    slot_[v] = static_cast<std::int32_t>(i);
    if (!images_[i]) continue;
    Vertex w = *images_[i];
    if (w >= universe_ || !in_codomain[w])
      throw std::invalid_argument("mapping: image " + std::to_string(w + 1) +
                                  " outside codomain");
    if (used[w])
      throw std::invalid_argument("mapping: not injective, image " + std::to_string(w + 1) +
                                  " repeated");
    used[w] = 1;
  }
}

Mapping Mapping::full(std::size_t universe, std::vector<Image> images) {
  auto all = all_vertices(universe);
  return Mapping(universe, all, all, std::move(images));
}

std::vector<Vertex> Mapping::mapped_sources() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (images_[i]) out.push_back(domain_[i]);
  return out;
}

std::vector<Vertex> Mapping::image_set() const {
  std::vector<Vertex> out;
  for (const auto& img : images_)
    if (img) out.push_back(*img);
  std::sort(out.begin(), out.end());
  return out;
}

Mapping bottom_map(const Graph& g) {
  return Mapping::full(g.order(), std::vector<Image>(g.order(), bottom));
}

Mapping identity_map(const Graph& g) {
  std::vector<Image> images(g.order());
  for (Vertex v = 0; v < g.order(); ++v) images[v] = v;
  return Mapping::full(g.order(), std::move(images));
}

std::size_t loss(const Mapping& m) {
  return static_cast<std::size_t>(
      std::count(m.images().begin(), m.images().end(), bottom));
}

std::size_t loss_from_orientation(const Mapping& m) {
  // A_phi[v][w] = 1 iff w = phi(v); count rows holding a one.
  const std::size_t n = m.universe();
  std::vector<std::uint8_t> matrix(n * n, 0);
  for (auto v : m.domain())
    if (auto w = m(v)) matrix[static_cast<std::size_t>(v) * n + *w] = 1;
  std::size_t unit_rows = 0;
  for (std::size_t r = 0; r < n; ++r)
    if (std::any_of(matrix.begin() + r * n, matrix.begin() + (r + 1) * n,
                    [](std::uint8_t x) { return x != 0; }))
      ++unit_rows;
  return n - unit_rows;
}

EcCheck check_ec(const Graph& g, const Mapping& m) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < m.domain().size(); ++i) {
    const auto& img = m.images()[i];
    if (img && !g.adjacent(m.domain()[i], *img)) ++bad;
  }
  return {bad == 0, bad};
}

bool check_wnp(const Graph& g, const Mapping& m) {
  auto src = m.mapped_sources();
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = i + 1; j < src.size(); ++j)
      if (g.adjacent(src[i], src[j]) && !g.adjacent(*m(src[i]), *m(src[j]))) return false;
  return true;
}

std::size_t snp_violations(const Graph& g, const Mapping& m) {
  auto src = m.mapped_sources();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = i + 1; j < src.size(); ++j)
      if (g.adjacent(src[i], src[j]) != g.adjacent(*m(src[i]), *m(src[j]))) ++bad;
  return bad;
}

bool check_snp(const Graph& g, const Mapping& m) { return snp_violations(g, m) == 0; }

bool check_isometry(const Graph& g, const Mapping& m) {
  auto src = m.mapped_sources();
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = i + 1; j < src.size(); ++j)
      if (g.raw_distance(src[i], src[j]) != g.raw_distance(*m(src[i]), *m(src[j])))
        return false;
  return true;
}

bool is_translation(const Graph& g, const Mapping& m) {
  return check_ec(g, m).ok && check_snp(g, m);
}

std::uint64_t deformation(const Graph& g, const Mapping& m) {
  auto src = m.mapped_sources();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = i + 1; j < src.size(); ++j)
      total += distance_gap(g.raw_distance(src[i], src[j]),
                            g.raw_distance(*m(src[i]), *m(src[j])), g.order());
  return total;
}

PropertyReport property_report(const Graph& g, const Mapping& m) {
  PropertyReport r{};
  auto ec = check_ec(g, m);
  r.loss = loss(m);
  r.is_ec = ec.ok;
  r.ec_violations = ec.violations;
  r.is_wnp = check_wnp(g, m);
  r.snp_violations = snp_violations(g, m);
  r.is_snp = r.snp_violations == 0;
  r.is_translation = r.is_ec && r.is_snp;
  r.is_isometry = check_isometry(g, m);
  r.deformation = static_cast<double>(deformation(g, m));
  return r;
}

std::vector<Arc> to_digraph(const Mapping& m) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < m.domain().size(); ++i)
    if (m.images()[i]) arcs.push_back({m.domain()[i], *m.images()[i]});
  return arcs;
}

Decomposition decompose(const Mapping& m) {
  const std::size_t n = m.universe();
  std::vector<std::uint8_t> has_preimage(n, 0), done(n, 0);
  for (const auto& img : m.images())
    if (img && m.in_domain(*img)) has_preimage[*img] = 1;

  Decomposition out;
  // Paths start at domain vertices that nothing in the domain maps onto.
  for (Vertex v : m.domain()) {
    if (has_preimage[v]) continue;
    std::vector<Vertex> path{v};
    done[v] = 1;
    Vertex cur = v;
    while (auto next = m(cur)) {
      if (!m.in_domain(*next)) break;  // leaves the domain: chain ends there
      cur = *next;
      path.push_back(cur);
      done[cur] = 1;
    }
    out.paths.push_back(std::move(path));
  }
  // What remains lies on cycles.
  for (Vertex v : m.domain()) {
    if (done[v]) continue;
    std::vector<Vertex> cycle;
    Vertex cur = v;
    while (!done[cur]) {
      done[cur] = 1;
      cycle.push_back(cur);
      cur = *m(cur);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

Mapping inverse(const Mapping& m) {
  std::vector<Vertex> dom(m.codomain().begin(), m.codomain().end());
  std::vector<Image> images(dom.size(), bottom);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    for (std::size_t k = 0; k < m.domain().size(); ++k) {
      if (m.images()[k] == dom[i]) {
        images[i] = m.domain()[k];
        break;
      }
    }
  }
  return Mapping(m.universe(), std::move(dom),
                 std::vector<Vertex>(m.domain().begin(), m.domain().end()), std::move(images));
}

Mapping compose(const Mapping& outer, const Mapping& inner) {
  if (outer.universe() != inner.universe())
    throw std::invalid_argument("compose: mappings live on different graphs");
  std::vector<Image> images;
  images.reserve(inner.domain().size());
  for (Vertex v : inner.domain()) {
    auto mid = inner(v);
    images.push_back(mid ? outer(*mid) : bottom);
  }
  return Mapping(inner.universe(), std::vector<Vertex>(inner.domain().begin(), inner.domain().end()),
                 std::vector<Vertex>(outer.codomain().begin(), outer.codomain().end()),
                 std::move(images));
}

Signal apply_to_signal(const Mapping& m, std::span<const double> x) {
  if (x.size() != m.universe())
    throw std::invalid_argument("signal length differs from graph order");
  Signal y(x.size(), 0.0);
  for (std::size_t i = 0; i < m.domain().size(); ++i)
    if (m.images()[i]) y[*m.images()[i]] = x[m.domain()[i]];
  return y;
}

bool precedes(const Mapping& a, const Mapping& b) {
  if (a.universe() != b.universe() || !std::equal(a.domain().begin(), a.domain().end(),
                                                  b.domain().begin(), b.domain().end()))
    throw std::invalid_argument("precedes: mappings must share a domain");
  if (loss(a) <= loss(b)) return false;
  for (std::size_t i = 0; i < a.images().size(); ++i)
    if (a.images()[i] && a.images()[i] == b.images()[i]) return true;
  return false;
}

std::vector<Vertex> support(std::span<const double> x) {
  std::vector<Vertex> s;
  for (Vertex v = 0; v < x.size(); ++v)
    if (x[v] != 0.0) s.push_back(v);
  return s;
}

}  // namespace gshift
