#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gshift/graph.hpp"

namespace gshift {

/// Image of a vertex under a mapping: a vertex, or bottom (no image).
using Image = std::optional<Vertex>;
inline constexpr std::nullopt_t bottom = std::nullopt;

/// Partial injective vertex map from a domain subset to a codomain subset.
///
/// Every domain vertex carries an Image; bottom entries are absent images.
/// Non-bottom images are pairwise distinct and lie in the codomain. The same
/// type represents exact transformations (domain = codomain = V) and
/// approximate translations restricted to V1 -> V2.
class Mapping {
 public:
  /// Throws std::invalid_argument when injectivity or codomain membership
  /// fails, or when any vertex is >= universe.
  Mapping(std::size_t universe, std::vector<Vertex> domain, std::vector<Vertex> codomain,
          std::vector<Image> images);

  /// Mapping over the whole vertex set: images[v] is the image of v.
  static Mapping full(std::size_t universe, std::vector<Image> images);

  std::size_t universe() const { return universe_; }
  std::span<const Vertex> domain() const { return domain_; }
  std::span<const Vertex> codomain() const { return codomain_; }
  /// Images aligned with domain().
  std::span<const Image> images() const { return images_; }

  bool in_domain(Vertex v) const { return v < universe_ && slot_[v] >= 0; }
  bool is_full() const { return domain_.size() == universe_ && codomain_.size() == universe_; }
  /// Image of v; bottom for vertices outside the domain.
  Image operator()(Vertex v) const {
    return in_domain(v) ? images_[static_cast<std::size_t>(slot_[v])] : bottom;
  }

  /// Domain vertices with a non-bottom image (V_{1≠⊥}).
  std::vector<Vertex> mapped_sources() const;
  /// Sorted set of non-bottom images.
  std::vector<Vertex> image_set() const;

  friend bool operator==(const Mapping& a, const Mapping& b) {
    return a.universe_ == b.universe_ && a.domain_ == b.domain_ &&
           a.codomain_ == b.codomain_ && a.images_ == b.images_;
  }

 private:
  std::size_t universe_;
  std::vector<Vertex> domain_;
  std::vector<Vertex> codomain_;
  std::vector<Image> images_;
  std::vector<std::int32_t> slot_;
};

struct Arc {
  Vertex from;
  Vertex to;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Directed cycles and bottom-terminated paths of a mapping's digraph. A path
/// lists its vertices from the one without preimage to the one mapped to
/// bottom; a cycle starts at its smallest vertex.
struct Decomposition {
  std::vector<std::vector<Vertex>> cycles;
  std::vector<std::vector<Vertex>> paths;
};

struct EcCheck {
  bool ok;
  std::size_t violations;
};

struct PropertyReport {
  std::size_t loss;
  bool is_ec;
  bool is_wnp;
  bool is_snp;
  bool is_translation;
  bool is_isometry;
  std::size_t ec_violations;
  std::size_t snp_violations;
  double deformation;
};

using Signal = std::vector<double>;

Mapping bottom_map(const Graph& g);
Mapping identity_map(const Graph& g);

std::size_t loss(const Mapping& m);
/// Loss through the orientation-matrix route: N minus the number of rows of
/// A_phi holding a one. Only meaningful for full-domain mappings.
std::size_t loss_from_orientation(const Mapping& m);

EcCheck check_ec(const Graph& g, const Mapping& m);
bool check_wnp(const Graph& g, const Mapping& m);
bool check_snp(const Graph& g, const Mapping& m);
bool check_isometry(const Graph& g, const Mapping& m);
bool is_translation(const Graph& g, const Mapping& m);

/// Number of unordered mapped pairs whose adjacency status flips.
std::size_t snp_violations(const Graph& g, const Mapping& m);
/// Sum over mapped pairs of |d(u,v) - d(m(u),m(v))|. Two infinite distances
/// differ by 0; a finite and an infinite one differ by the graph order.
std::uint64_t deformation(const Graph& g, const Mapping& m);

PropertyReport property_report(const Graph& g, const Mapping& m);

std::vector<Arc> to_digraph(const Mapping& m);
Decomposition decompose(const Mapping& m);
Mapping inverse(const Mapping& m);
/// (outer ∘ inner)(v) = outer(inner(v)); images of inner outside outer's
/// domain become bottom. Domain of inner, codomain of outer.
Mapping compose(const Mapping& outer, const Mapping& inner);
/// y[m(v)] = x[v] for mapped v, zero elsewhere. Values are moved, never scaled.
Signal apply_to_signal(const Mapping& m, std::span<const double> x);
/// The ≺ relation: loss(a) > loss(b) and a, b send some vertex to the same
/// vertex (a shared bottom is not an agreement). Both must share the same domain.
bool precedes(const Mapping& a, const Mapping& b);

std::vector<Vertex> support(std::span<const double> x);

}  // namespace gshift
