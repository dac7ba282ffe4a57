#include "gshift/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace gshift {

namespace {

using Mask = std::uint64_t;
constexpr std::int32_t kUnassigned = -2;
constexpr std::int32_t kBottom = -1;

Mask bit(Vertex v) { return Mask{1} << v; }

Mask mask_of(const std::vector<Vertex>& vs, std::size_t n) {
  Mask m = 0;
  for (Vertex v : vs) {
    if (v >= n) throw std::out_of_range("vertex set entry out of range");
    m |= bit(v);
  }
  return m;
}

using RawVisitor = std::function<bool(std::span<const std::int32_t>)>;

// Depth-first search over full-domain EC+SNP mappings. Candidate image sets
// are kept as bit masks and narrowed after every non-bottom assignment: for an
// unassigned u and a new arc v -> w, u's image must avoid w, and must be a
// neighbor of w exactly when u is a neighbor of v.
class TranslationSearch {
 public:
  TranslationSearch(const Graph& g, const EnumerationFilter& f) : g_(g), n_(g.order()) {
    if (n_ > max_exact_order)
      throw std::invalid_argument("exact translation search supports at most " +
                                  std::to_string(max_exact_order) + " vertices");
    nbr_.assign(n_, 0);
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex w : g.neighbors(v)) nbr_[v] |= bit(w);

    Mask allowed_targets = n_ == 64 ? ~Mask{0} : (bit(static_cast<Vertex>(n_)) - 1);
    if (f.require_image_set) {
      targets_ = mask_of(*f.require_image_set, n_);
      cover_targets_ = true;
      allowed_targets = targets_;
    }
    Mask sources = ~Mask{0};
    if (f.restrict_domain) sources = mask_of(*f.restrict_domain, n_);

    max_loss_ = f.max_loss.value_or(n_);
    if (f.lossless_only) max_loss_ = 0;
    min_loss_ = f.min_loss.value_or(0);

    cand_.assign(n_ * (n_ + 2), 0);
    allow_bottom_.assign(n_, 1);
    image_.assign(n_, kUnassigned);
    Mask* top = level(0);
    for (Vertex v = 0; v < n_; ++v)
      top[v] = (sources & bit(v)) ? (nbr_[v] & allowed_targets) : 0;
    if (f.lossless_only)
      std::fill(allow_bottom_.begin(), allow_bottom_.end(), std::uint8_t{0});

    // Fixed assignments seed the root level.
    for (const auto& [v, img] : f.fixed) {
      if (v >= n_) throw std::out_of_range("fixed vertex out of range");
      if (image_[v] != kUnassigned) {
        feasible_root_ = false;
        break;
      }
      if (!img) {
        if (!allow_bottom_[v]) {
          feasible_root_ = false;
          break;
        }
        image_[v] = kBottom;
        ++bottoms_;
      } else {
        if (!(top[v] & bit(*img)) || (used_ & bit(*img))) {
          feasible_root_ = false;
          break;
        }
        image_[v] = static_cast<std::int32_t>(*img);
        narrow(top, top, v, *img);
        used_ |= bit(*img);
      }
      ++assigned_;
    }
  }

  std::size_t run(const RawVisitor& visit) {
    visit_ = &visit;
    stop_ = false;
    found_ = 0;
    if (feasible_root_ && consistent(level(0))) descend(0);
    return found_;
  }

 private:
  Mask* level(std::size_t depth) { return cand_.data() + depth * n_; }

  void narrow(const Mask* from, Mask* to, Vertex v, Vertex w) {
    const Mask not_w = ~bit(w);
    for (Vertex u = 0; u < n_; ++u) {
      if (image_[u] != kUnassigned) {
        to[u] = 0;
        continue;
      }
      Mask c = from[u] & not_w;
      c &= g_.adjacent(u, v) ? nbr_[w] : ~nbr_[w];
      to[u] = c;
    }
  }

  bool consistent(const Mask* cand) const {
    std::size_t forced = 0;
    std::size_t open = 0;
    Mask reachable = 0;
    for (Vertex u = 0; u < n_; ++u) {
      if (image_[u] != kUnassigned) continue;
      ++open;
      if (cand[u] == 0) {
        if (!allow_bottom_[u]) return false;
        ++forced;
      }
      reachable |= cand[u];
    }
    if (bottoms_ + forced > max_loss_) return false;
    if (bottoms_ + open < min_loss_) return false;
    if (cover_targets_) {
      Mask missing = targets_ & ~used_;
      if ((missing & ~reachable) != 0) return false;
      if (static_cast<std::size_t>(std::popcount(missing)) > open) return false;
    }
    return true;
  }

  void descend(std::size_t depth) {
    if (stop_) return;
    if (assigned_ == n_) {
      ++found_;
      if (!(*visit_)(image_)) stop_ = true;
      return;
    }
    Mask* cand = level(depth);
    // Most constrained open vertex; ties by degree then index.
    Vertex pick = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (Vertex u = 0; u < n_; ++u) {
      if (image_[u] != kUnassigned) continue;
      std::size_t options = static_cast<std::size_t>(std::popcount(cand[u])) + allow_bottom_[u];
      if (options < best || (options == best && g_.degree(u) < g_.degree(pick))) {
        best = options;
        pick = u;
      }
    }
    Mask* next = level(depth + 1);
    Mask options = cand[pick];
    ++assigned_;
    while (options != 0 && !stop_) {
      Vertex w = static_cast<Vertex>(std::countr_zero(options));
      options &= options - 1;
      image_[pick] = static_cast<std::int32_t>(w);
      used_ |= bit(w);
      narrow(cand, next, pick, w);
      if (consistent(next)) descend(depth + 1);
      used_ &= ~bit(w);
    }
    if (allow_bottom_[pick] && !stop_) {
      image_[pick] = kBottom;
      ++bottoms_;
      for (Vertex u = 0; u < n_; ++u) next[u] = image_[u] == kUnassigned ? cand[u] : 0;
      if (consistent(next)) descend(depth + 1);
      --bottoms_;
    }
    image_[pick] = kUnassigned;
    --assigned_;
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Mask> nbr_;
  std::vector<Mask> cand_;
  std::vector<std::uint8_t> allow_bottom_;
  std::vector<std::int32_t> image_;
  Mask used_ = 0;
  Mask targets_ = 0;
  bool cover_targets_ = false;
  bool feasible_root_ = true;
  std::size_t max_loss_ = 0;
  std::size_t min_loss_ = 0;
  std::size_t bottoms_ = 0;
  std::size_t assigned_ = 0;
  const RawVisitor* visit_ = nullptr;
  bool stop_ = false;
  std::size_t found_ = 0;
};

Mapping to_mapping(std::span<const std::int32_t> raw) {
  std::vector<Image> images(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v)
    images[v] = raw[v] >= 0 ? Image{static_cast<Vertex>(raw[v])} : bottom;
  return Mapping::full(raw.size(), std::move(images));
}

std::size_t raw_search(const Graph& g, const EnumerationFilter& f, const RawVisitor& visit) {
  TranslationSearch search(g, f);
  return search.run(visit);
}

// Column in an (n+1)-wide table: vertex images first, bottom last.
std::size_t image_column(const Image& img, std::size_t n) { return img ? *img : n; }

void require_full(const Mapping& m) {
  if (!m.is_full()) throw std::invalid_argument("expected a full-domain translation");
}

}  // namespace

std::size_t for_each_translation(const Graph& g, const EnumerationFilter& f,
                                 const TranslationVisitor& visit) {
  return raw_search(g, f, [&](std::span<const std::int32_t> raw) { return visit(to_mapping(raw)); });
}

bool image_order_less(const Mapping& a, const Mapping& b) {
  const std::size_t n = a.universe();
  auto ia = a.images();
  auto ib = b.images();
  return std::lexicographical_compare(
      ia.begin(), ia.end(), ib.begin(), ib.end(), [n](const Image& x, const Image& y) {
        return image_column(x, n) < image_column(y, n);
      });
}

std::vector<Mapping> enumerate_translations(const Graph& g, const EnumerationFilter& f) {
  std::vector<Mapping> out;
  raw_search(g, f, [&](std::span<const std::int32_t> raw) {
    out.push_back(to_mapping(raw));
    return true;
  });
  std::sort(out.begin(), out.end(), image_order_less);
  return out;
}

std::size_t count_translations(const Graph& g, const EnumerationFilter& f) {
  return raw_search(g, f, [](std::span<const std::int32_t>) { return true; });
}

std::optional<Mapping> find_translation(const Graph& g, const EnumerationFilter& f) {
  std::optional<Mapping> hit;
  raw_search(g, f, [&](std::span<const std::int32_t> raw) {
    hit = to_mapping(raw);
    return false;
  });
  return hit;
}

std::optional<Mapping> exists_translation_between(const Graph& g, std::vector<Vertex> sources,
                                                  std::vector<Vertex> targets) {
  EnumerationFilter f;
  f.restrict_domain = std::move(sources);
  f.require_image_set = std::move(targets);
  return find_translation(g, f);
}

std::vector<Mapping> minimal_among(const std::vector<Mapping>& all) {
  if (all.empty()) return {};
  const std::size_t n = all.front().universe();
  const std::size_t width = n;
  std::vector<std::size_t> min_loss(n * width, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> losses(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    require_full(all[i]);
    losses[i] = loss(all[i]);
    for (Vertex v = 0; v < n; ++v) {
      if (!all[i](v)) continue;
      auto& slot = min_loss[v * width + *all[i](v)];
      slot = std::min(slot, losses[i]);
    }
  }
  std::vector<Mapping> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool has_successor = false;
    for (Vertex v = 0; v < n && !has_successor; ++v)
      has_successor = all[i](v) && min_loss[v * width + *all[i](v)] < losses[i];
    if (!has_successor) out.push_back(all[i]);
  }
  return out;
}

std::vector<Mapping> pseudo_minimal_among(const std::vector<Mapping>& all) {
  if (all.empty()) return {};
  const std::size_t n = all.front().universe();
  const std::size_t width = n;
  std::vector<std::size_t> order(all.size());
  std::vector<std::size_t> losses(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    require_full(all[i]);
    order[i] = i;
    losses[i] = loss(all[i]);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return losses[a] < losses[b]; });

  // has_pm[v][w]: some pseudo-minimal translation of strictly lower loss maps v to w.
  std::vector<std::uint8_t> has_pm(n * width, 0);
  std::vector<std::uint8_t> is_pm(all.size(), 0);
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin;
    while (end < order.size() && losses[order[end]] == losses[order[begin]]) ++end;
    for (std::size_t k = begin; k < end; ++k) {
      const auto& m = all[order[k]];
      bool pm = true;
      for (Vertex v = 0; v < n && pm; ++v) pm = !(m(v) && has_pm[v * width + *m(v)]);
      is_pm[order[k]] = pm;
    }
    for (std::size_t k = begin; k < end; ++k) {
      if (!is_pm[order[k]]) continue;
      const auto& m = all[order[k]];
      for (Vertex v = 0; v < n; ++v)
        if (m(v)) has_pm[v * width + *m(v)] = 1;
    }
    begin = end;
  }
  std::vector<Mapping> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (is_pm[i]) out.push_back(all[i]);
  return out;
}

namespace {
std::vector<Mapping> enumerate_with_budget(const Graph& g, std::size_t budget) {
  std::vector<Mapping> all;
  bool overflow = false;
  raw_search(g, {}, [&](std::span<const std::int32_t> raw) {
    if (all.size() >= budget) {
      overflow = true;
      return false;
    }
    all.push_back(to_mapping(raw));
    return true;
  });
  if (overflow)
    throw std::length_error("translation set exceeds budget of " + std::to_string(budget));
  std::sort(all.begin(), all.end(), image_order_less);
  return all;
}
}  // namespace

std::vector<Mapping> minimal_translations(const Graph& g, std::size_t budget) {
  return minimal_among(enumerate_with_budget(g, budget));
}

std::vector<Mapping> pseudo_minimal_translations(const Graph& g, std::size_t budget) {
  return pseudo_minimal_among(enumerate_with_budget(g, budget));
}

bool is_minimal(const Graph& g, const Mapping& m) {
  require_full(m);
  const std::size_t l = loss(m);
  if (l == 0) return true;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!m(v)) continue;
    EnumerationFilter f;
    f.max_loss = l - 1;
    f.fixed = {{v, m(v)}};
    if (find_translation(g, f)) return false;
  }
  return true;
}

bool is_pseudo_minimal(const Graph& g, const Mapping& m, std::size_t budget) {
  require_full(m);
  const std::size_t n = g.order();
  const std::size_t width = n;
  const std::size_t target = loss(m);
  std::vector<std::uint8_t> has_pm(n * width, 0);
  std::size_t seen = 0;
  for (std::size_t level = 0; level < target; ++level) {
    std::vector<std::uint8_t> pending(n * width, 0);
    EnumerationFilter f;
    f.min_loss = level;
    f.max_loss = level;
    bool overflow = false;
    raw_search(g, f, [&](std::span<const std::int32_t> raw) {
      if (++seen > budget) {
        overflow = true;
        return false;
      }
      for (Vertex v = 0; v < n; ++v)
        if (raw[v] >= 0 && has_pm[v * width + static_cast<std::size_t>(raw[v])]) return true;
      for (Vertex v = 0; v < n; ++v)
        if (raw[v] >= 0) pending[v * width + static_cast<std::size_t>(raw[v])] = 1;
      return true;
    });
    if (overflow)
      throw std::length_error("pseudo-minimality check exceeds budget of " +
                              std::to_string(budget) + " translations");
    for (std::size_t i = 0; i < pending.size(); ++i) has_pm[i] |= pending[i];
  }
  for (Vertex v = 0; v < n; ++v)
    if (m(v) && has_pm[v * width + *m(v)]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Counting

namespace {
BigInt factorial(std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= k; ++i) r *= i;
  return r;
}
BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}
}  // namespace

std::vector<BigInt> count_upper_bound_terms(std::size_t n) {
  if (n == 0) throw std::invalid_argument("count bound needs n >= 1");
  std::vector<BigInt> terms;
  for (std::size_t k = 0; k <= n; ++k) {
    BigInt sum = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      // (N-j)!/(N-k)! is an integer since j <= k.
      BigInt t = binomial(k, j) * (factorial(n - j) / factorial(n - k));
      if (j % 2) sum -= t;
      else sum += t;
    }
    terms.push_back(sum);
  }
  return terms;
}

BigInt count_upper_bound(std::size_t n) {
  BigInt total = 0;
  for (const auto& t : count_upper_bound_terms(n)) total += t;
  return total;
}

BigInt count_minimal_upper_bound(std::size_t n) {
  if (n == 0) throw std::invalid_argument("count bound needs n >= 1");
  // N! sum (-1)^j / j! = sum (-1)^j N!/j!, exact.
  BigInt total = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    BigInt t = factorial(n) / factorial(j);
    if (j % 2) total -= t;
    else total += t;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Matching and Hamiltonian cycle

namespace {

bool match_from(const Graph& g, std::vector<std::int32_t>& mate, std::vector<Edge>& out) {
  Vertex u = 0;
  while (u < g.order() && mate[u] >= 0) ++u;
  if (u == g.order()) return true;
  for (Vertex w : g.neighbors(u)) {
    if (mate[w] >= 0) continue;
    mate[u] = static_cast<std::int32_t>(w);
    mate[w] = static_cast<std::int32_t>(u);
    out.push_back({u, w});
    if (match_from(g, mate, out)) return true;
    out.pop_back();
    mate[u] = mate[w] = -1;
  }
  return false;
}

bool extend_cycle(const Graph& g, std::vector<Vertex>& path, std::vector<std::uint8_t>& on_path) {
  const Vertex last = path.back();
  if (path.size() == g.order()) return g.adjacent(last, path.front());
  for (Vertex w : g.neighbors(last)) {
    if (on_path[w]) continue;
    on_path[w] = 1;
    path.push_back(w);
    if (extend_cycle(g, path, on_path)) return true;
    path.pop_back();
    on_path[w] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<Edge>> find_perfect_matching(const Graph& g) {
  if (g.order() % 2) return std::nullopt;
  std::vector<std::int32_t> mate(g.order(), -1);
  std::vector<Edge> out;
  if (match_from(g, mate, out)) return out;
  return std::nullopt;
}

std::optional<std::vector<Vertex>> find_hamiltonian_cycle(const Graph& g) {
  if (g.order() < 3) return std::nullopt;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) < 2) return std::nullopt;
  std::vector<Vertex> path{0};
  std::vector<std::uint8_t> on_path(g.order(), 0);
  on_path[0] = 1;
  if (extend_cycle(g, path, on_path)) return path;
  return std::nullopt;
}

bool has_perfect_matching(const Graph& g) { return find_perfect_matching(g).has_value(); }
bool has_hamiltonian_cycle(const Graph& g) { return find_hamiltonian_cycle(g).has_value(); }

}  // namespace gshift
