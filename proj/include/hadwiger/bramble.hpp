#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hadwiger/graph.hpp"
#include "hadwiger/rational.hpp"
#include "hadwiger/vertex_set.hpp"

namespace hadwiger {

/// Weak: the sets share a vertex or an edge joins them. Strong: an edge
/// joins them, also when A = B (so every member must contain an edge).
enum class TouchingKind { kWeak, kStrong };

std::string to_string(TouchingKind k);
TouchingKind parse_touching_kind(const std::string& s);

/// Enumeration caps. Hitting one raises CapacityError; results are never
/// silently truncated.
struct Limits {
  std::size_t max_connected_sets = std::size_t{1} << 20;
  /// Sets in a touching graph; the relation is stored as a bit matrix.
  std::size_t max_touching_sets = std::size_t{1} << 14;
  std::size_t max_cliques = 1'000'000;
};

struct BrambleFamily {
  std::size_t host_n = 0;
  std::vector<Mask> sets;  // canonical order
  TouchingKind kind = TouchingKind::kWeak;
};

/// Bramble with exact non-negative weights, one per set.
struct WeightedBramble {
  BrambleFamily family;
  std::vector<Rational> weights;

  Rational value() const;
};

/// Nonempty connected vertex sets of size <= max_size (default: all), in
/// canonical order (size, then lexicographic).
std::vector<Mask> enumerate_connected_sets(const Graph& g, std::optional<std::size_t> max_size = std::nullopt,
                                           const Limits& limits = {});

bool touches(const Graph& g, Mask a, Mask b, TouchingKind kind);

struct BrambleCheck {
  bool ok = true;
  std::string message;
  explicit operator bool() const noexcept { return ok; }
};

/// Connectivity of every set plus pairwise touching (self-pairs too for the
/// strong kind); the message names the first failing set or pair.
BrambleCheck validate_bramble(const Graph& g, const std::vector<Mask>& sets, TouchingKind kind);

/// All maximal families of pairwise touching connected sets (maximal
/// cliques of the touching relation), each in canonical order. Families are
/// produced by Bron-Kerbosch with pivoting under a degeneracy ordering; the
/// top-level branches run in parallel and are merged in order.
std::vector<BrambleFamily> maximal_brambles(const Graph& g, TouchingKind kind,
                                            std::optional<std::size_t> max_size = std::nullopt,
                                            const Limits& limits = {});
/// Single-threaded reference for maximal_brambles; same output.
std::vector<BrambleFamily> maximal_brambles_serial(const Graph& g, TouchingKind kind,
                                                   std::optional<std::size_t> max_size = std::nullopt,
                                                   const Limits& limits = {});

/// Inclusion-minimal members of a family (same relative order).
std::vector<Mask> minimal_members(const std::vector<Mask>& sets);

/// Size of a smallest vertex set meeting every member, and one such set
/// (first in increasing-mask order among the smallest).
std::pair<std::size_t, Mask> min_hitting_set(std::size_t n, const std::vector<Mask>& sets);

struct BrambleNumberResult {
  std::size_t value = 0;
  BrambleFamily family;
  Mask hitting_set = 0;
};

/// Maximum over (weak) brambles of the minimum hitting-set size.
BrambleNumberResult bramble_number(const Graph& g, const Limits& limits = {});

/// Crosses C_i = (row i) + (column i) of the k x k grid, each of weight 1/2.
WeightedBramble grid_cross_certificate(std::size_t k);

/// "bramble <n> <weak|strong>" then one sorted set per line.
std::string serialize_bramble(const BrambleFamily& f);
/// "weighted-bramble <n> <weak|strong>" then "p/q v1 v2 ..." per line.
std::string serialize_weighted_bramble(const WeightedBramble& w);
WeightedBramble parse_weighted_bramble(const std::string& text);
BrambleFamily parse_bramble(const std::string& text);

}  // namespace hadwiger
