#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "hadwiger/graph.hpp"
#include "hadwiger/rational.hpp"

namespace hadwiger {

// -- isomorphism classes --------------------------------------------------------

/// Upper-triangle adjacency bits in graph6 pair order, (0,1) most
/// significant. Defined for n <= 11.
using AdjacencyKey = std::uint64_t;
inline constexpr std::size_t kCanonicalCap = 11;

AdjacencyKey adjacency_key(const Graph& g);
Graph graph_from_key(std::size_t n, AdjacencyKey key);

struct CanonicalForm {
  AdjacencyKey key = 0;
  std::vector<Vertex> labeling;  // vertex v of the input becomes labeling[v]
  Graph graph;
};

/// Minimum adjacency key over the leaves of the individualization and
/// colour-refinement tree (twins are individualized once). Isomorphic graphs
/// get equal keys; the key is not the minimum over all relabellings.
CanonicalForm canonical_form(const Graph& g);

/// One canonical representative per isomorphism class of n-vertex graphs,
/// ascending by key. Built by vertex extension from n-1.
std::vector<Graph> enumerate_classes(std::size_t n);

// -- bounded-breadth upper bound ------------------------------------------------

/// n/d + d*s, s = max_clique_minor_bounded(g, d).
Rational hf_upper_from_bounded(const Graph& g, std::size_t d);
/// Same with a known s.
Rational hf_upper_from_bounded(std::size_t n, std::size_t d, std::size_t s);

// -- witness search ---------------------------------------------------------------

struct MaderMode {
  Rational p;
};
struct ThomasonMode {};
struct ExhaustiveSearch {};
struct SampledSearch {
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

struct WitnessSpec {
  std::size_t n0 = 0;
  std::variant<MaderMode, ThomasonMode> mode = ThomasonMode{};
  /// When set, only breadths d with no K_s minor of breadth <= d count.
  std::optional<std::size_t> s;
  /// When set, the breadth is fixed instead of swept over 1..n0.
  std::optional<std::size_t> d;
  std::variant<ExhaustiveSearch, SampledSearch> search = ExhaustiveSearch{};
};

struct BoundedEvidence {
  std::size_t d = 0;
  std::size_t s = 0;  // max_clique_minor_bounded at breadth d
  Rational bound;     // n/d + d*s
};

struct Witness {
  Graph graph;
  BoundedEvidence evidence;
  std::optional<BoundedEvidence> complement_evidence;  // thomason mode
  Rational hf_upper;  // the objective's bound (max over both sides in thomason mode)
  Rational epsilon;   // hf_upper / n0
  std::size_t examined = 0;  // classes (exhaustive) or samples (sampled)
  std::size_t qualifying = 0;
};

/// Minimum edge count meeting density p: ceil(p * C(n0, 2)).
std::size_t density_threshold(std::size_t n0, const Rational& p);

/// Best bounded-breadth evidence for one graph under the s/d constraints of
/// spec; none when no allowed breadth exists.
std::optional<BoundedEvidence> best_bounded_evidence(const Graph& g, const WitnessSpec& spec);

/// Throws InfeasibleError when no graph qualifies.
Witness search_witness(const WitnessSpec& spec);

// -- emission -------------------------------------------------------------------

/// The complete blow-up G[t] of a witness, answered through the adjacency
/// oracle without materializing it.
class ConstructionHandle {
 public:
  ConstructionHandle(Graph base, std::uint64_t t, Rational hf_upper);

  std::uint64_t order() const noexcept { return n_; }
  std::uint64_t t() const noexcept { return t_; }
  const Graph& base() const noexcept { return base_; }
  /// t * hf_upper, an upper bound on h(G[t]).
  Rational hadwiger_bound() const;
  /// hf_upper / n0; h(G[t]) <= epsilon * order().
  Rational epsilon() const;
  bool adjacent(std::uint64_t u, std::uint64_t v) const;
  /// Edges (u, v), u < v, in lexicographic order; requires order() <= cap.
  void stream_edges(const std::function<void(std::uint64_t, std::uint64_t)>& sink,
                    std::size_t cap = kDefaultVertexCap) const;
  Graph materialize(std::size_t cap = kDefaultVertexCap) const;

 private:
  Graph base_;
  std::uint64_t t_;
  std::uint64_t n_;
  Rational hf_upper_;
};

ConstructionHandle emit_construction(const Witness& w, std::uint64_t t);

}  // namespace hadwiger
