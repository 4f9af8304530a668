#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hadwiger/bits.hpp"
#include "hadwiger/rational.hpp"

namespace hadwiger {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Default cap on vertex count for any materialized graph. The blow-up
/// adjacency oracle is not subject to it.
inline constexpr std::size_t kDefaultVertexCap = 4096;

/// Simple undirected graph on vertices 0..n-1, stored as a symmetric
/// adjacency bit-matrix. Immutable once built; n >= 1.
class Graph {
 public:
  /// Edgeless graph on n vertices. Throws GraphError when n == 0.
  explicit Graph(std::size_t n);

  /// Throws GraphError naming the pair on an out-of-range endpoint or a
  /// self-loop. Duplicate pairs collapse to a single edge.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return m_; }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  std::size_t degree(Vertex v) const noexcept;

  /// Neighbourhood as a bitmask; only for graphs with at most 64 vertices.
  Mask neighbors(Vertex v) const;
  std::vector<Vertex> neighbor_list(Vertex v) const;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool fits_mask() const noexcept { return n_ <= kMaskBits; }

  bool operator==(const Graph& o) const noexcept {
    return n_ == o.n_ && rows_ == o.rows_;
  }

 private:
  friend class GraphBuilder;
  Graph() = default;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<Mask> rows_;
};

/// Mutable staging area for building a Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n);

  /// Adds {u, v}; throws GraphError on self-loops or bad endpoints.
  GraphBuilder& add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const noexcept { return g_.adjacent(u, v); }
  std::size_t order() const noexcept { return g_.n_; }

  Graph build() &&;
  Graph build() const&;

 private:
  Graph g_;
};

// -- generators ---------------------------------------------------------

Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Cycle C_n; n >= 3.
Graph cycle_graph(std::size_t n);
/// k x k grid, cell (r, c) encoded r*k + c.
Graph grid_graph(std::size_t k);
Graph complete_bipartite(std::size_t a, std::size_t b);

/// G(n, p) with a SplitMix64 counter stream. The k-th pair in the order
/// (0,1), (0,2), ..., (n-2,n-1) uses x_k = mix(seed + (k+1) * 0x9E3779B97F4A7C15);
/// the pair is an edge iff (x_k >> 11) < floor(p * 2^53).
Graph random_gnp(std::size_t n, const Rational& p, std::uint64_t seed);

/// One draw of the documented stream (exposed for tests and samplers).
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) noexcept;

// -- transforms ---------------------------------------------------------

Graph complement(const Graph& g);

/// G . H with vertex (u, v) encoded u*|H| + v.
Graph lexicographic_product(const Graph& g, const Graph& h,
                            std::size_t vertex_cap = kDefaultVertexCap);
/// G(t) = G . I_t
Graph blowup_empty(const Graph& g, std::size_t t, std::size_t vertex_cap = kDefaultVertexCap);
/// G[t] = G . K_t
Graph blowup_complete(const Graph& g, std::size_t t, std::size_t vertex_cap = kDefaultVertexCap);

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);
Graph without_vertex(const Graph& g, Vertex v);
Graph without_edge(const Graph& g, Vertex u, Vertex v);
/// Applies a vertex relabelling: vertex v of g becomes perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

// -- blow-up oracle -----------------------------------------------------

struct BlowupVertex {
  std::uint64_t base = 0;
  std::uint64_t copy = 0;
  bool operator==(const BlowupVertex&) const = default;
};

/// Vertex id base*t + copy of the blow-up, matching the product encoding.
BlowupVertex blowup_vertex(const Graph& g, std::uint64_t t, std::uint64_t id);

/// Adjacency in G[t] (complete) or G(t) without materializing either.
/// Throws RangeError for coordinates outside (G, t).
bool blowup_adjacency_oracle(const Graph& g, std::uint64_t t, BlowupVertex a, BlowupVertex b,
                             bool complete);

// -- connectivity helpers (graphs with <= 64 vertices) -------------------

/// Vertices reachable from `start` inside `within` (start must be in within).
Mask reach_within(const Graph& g, Mask start, Mask within);
bool is_connected_set(const Graph& g, Mask set);
/// Closed neighbourhood of a set.
Mask closed_neighborhood(const Graph& g, Mask set);
Mask open_neighborhood_union(const Graph& g, Mask set);

// -- text formats -------------------------------------------------------

std::string graph6_encode(const Graph& g);
/// Accepts an optional ">>graph6<<" header and trailing newline.
/// Throws ParseError with the byte offset of the first bad byte.
Graph graph6_decode(std::string_view text);

/// "n m\nu v\n..." with edges in lexicographic order.
std::string edge_list_encode(const Graph& g);
Graph edge_list_decode(std::string_view text);

}  // namespace hadwiger
