#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gshift/graph.hpp"
#include "gshift/mapping.hpp"

namespace gshift {

using BigInt = boost::multiprecision::cpp_int;

/// Restrictions on the translations produced by the exact search. All
/// translations are full-domain (every vertex of V gets an image or bottom).
struct EnumerationFilter {
  bool lossless_only = false;
  std::optional<std::size_t> max_loss;
  std::optional<std::size_t> min_loss;
  /// Image set must be exactly this set.
  std::optional<std::vector<Vertex>> require_image_set;
  /// Vertices outside this set are forced to bottom.
  std::optional<std::vector<Vertex>> restrict_domain;
  /// Pre-assigned images; bottom entries force loss at that vertex.
  std::vector<std::pair<Vertex, Image>> fixed;
};

/// Return false from the visitor to stop the search early.
using TranslationVisitor = std::function<bool(const Mapping&)>;

/// Largest graph order the exact search accepts.
inline constexpr std::size_t max_exact_order = 64;

/// Streams every EC and SNP full-domain mapping satisfying `f`, in search
/// order. Returns the number of translations visited.
std::size_t for_each_translation(const Graph& g, const EnumerationFilter& f,
                                 const TranslationVisitor& visit);

/// All translations satisfying `f`, sorted lexicographically by image tuple
/// (bottom sorts after every vertex).
std::vector<Mapping> enumerate_translations(const Graph& g, const EnumerationFilter& f = {});
std::size_t count_translations(const Graph& g, const EnumerationFilter& f = {});
std::optional<Mapping> find_translation(const Graph& g, const EnumerationFilter& f);

/// A translation whose non-bottom sources lie in `sources` and whose image
/// set is exactly `targets`, if one exists.
std::optional<Mapping> exists_translation_between(const Graph& g, std::vector<Vertex> sources,
                                                  std::vector<Vertex> targets);

/// Lexicographic image-tuple order used for all sorted outputs.
bool image_order_less(const Mapping& a, const Mapping& b);

/// Translations with no ≺-successor among `all` (all translations of one graph).
std::vector<Mapping> minimal_among(const std::vector<Mapping>& all);
std::vector<Mapping> pseudo_minimal_among(const std::vector<Mapping>& all);

/// Full enumeration then classification. Throws std::length_error when the
/// translation set exceeds `budget`.
std::vector<Mapping> minimal_translations(const Graph& g, std::size_t budget = 5'000'000);
std::vector<Mapping> pseudo_minimal_translations(const Graph& g,
                                                 std::size_t budget = 5'000'000);

/// Minimality of one translation: searches for a lower-loss translation
/// sharing one of its assignments. The bottom map is always minimal.
bool is_minimal(const Graph& g, const Mapping& m);
/// Pseudo-minimality of one translation. Streams all translations of lower
/// loss level by level; throws std::length_error past `budget` of them.
bool is_pseudo_minimal(const Graph& g, const Mapping& m, std::size_t budget = 50'000'000);

/// The printed bound: sum_k 1/(N-k)! sum_j (-1)^j C(k,j) (N-j)!.
BigInt count_upper_bound(std::size_t n);
/// Per-k terms of that sum, k = 0..n (k = number of non-bottom vertices).
std::vector<BigInt> count_upper_bound_terms(std::size_t n);
/// N! sum_j (-1)^j / j!, the number of derangements of N elements.
BigInt count_minimal_upper_bound(std::size_t n);

std::optional<std::vector<Edge>> find_perfect_matching(const Graph& g);
/// Vertex order of a Hamiltonian cycle starting at vertex 0.
std::optional<std::vector<Vertex>> find_hamiltonian_cycle(const Graph& g);
bool has_perfect_matching(const Graph& g);
bool has_hamiltonian_cycle(const Graph& g);

}  // namespace gshift
