#include "hadwiger/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "hadwiger/error.hpp"

namespace hadwiger {

namespace {

std::string pair_text(std::uint64_t u, std::uint64_t v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph::Graph(std::size_t n) {
  if (n == 0) throw GraphError("graph must have at least one vertex");
  n_ = n;
  words_ = (n + 63) / 64;
  rows_.assign(n * words_, 0);
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (const auto& [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

std::size_t Graph::degree(Vertex v) const noexcept {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(rows_[v * words_ + w]));
  return d;
}

Mask Graph::neighbors(Vertex v) const {
  if (!fits_mask()) throw CapacityError("bitmask neighbourhoods need at most 64 vertices");
  return rows_[v];
}

std::vector<Vertex> Graph::neighbor_list(Vertex v) const {
  std::vector<Vertex> out;
  for (std::size_t w = 0; w < words_; ++w) {
    for_each_bit(rows_[v * words_ + w], [&](std::size_t b) { out.push_back(static_cast<Vertex>(w * 64 + b)); });
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbor_list(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

GraphBuilder::GraphBuilder(std::size_t n) : g_(n) {}

GraphBuilder& GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u >= g_.n_ || v >= g_.n_) {
    throw GraphError("edge " + pair_text(u, v) + " has an endpoint outside 0.." + std::to_string(g_.n_ - 1));
  }
  if (u == v) throw GraphError("edge " + pair_text(u, v) + " is a self-loop");
  if (!g_.adjacent(u, v)) {
    g_.rows_[u * g_.words_ + (v >> 6)] |= bit(v & 63);
    g_.rows_[v * g_.words_ + (u >> 6)] |= bit(u & 63);
    ++g_.m_;
  }
  return *this;
}

Graph GraphBuilder::build() && { return std::move(g_); }
Graph GraphBuilder::build() const& { return g_; }

// -- generators ---------------------------------------------------------

Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  return std::move(b).build();
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return std::move(b).build();
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices, got " + std::to_string(n));
  GraphBuilder b(n);
  for (Vertex v = 0; v < n; ++v) b.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return std::move(b).build();
}

Graph grid_graph(std::size_t k) {
  if (k == 0) throw GraphError("grid side must be at least 1");
  GraphBuilder b(k * k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      const auto v = static_cast<Vertex>(r * k + c);
      if (c + 1 < k) b.add_edge(v, v + 1);
      if (r + 1 < k) b.add_edge(v, static_cast<Vertex>(v + k));
    }
  }
  return std::move(b).build();
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  GraphBuilder gb(a + b);
  for (Vertex u = 0; u < a; ++u) {
    for (std::size_t v = a; v < a + b; ++v) gb.add_edge(u, static_cast<Vertex>(v));
  }
  return std::move(gb).build();
}

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) noexcept {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Graph random_gnp(std::size_t n, const Rational& p, std::uint64_t seed) {
  if (p < Rational(0) || p > Rational(1)) throw GraphError("edge probability must lie in [0, 1]");
  // threshold = floor(p * 2^53) <= 2^53
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 53);
  const Rational scaled = p * Rational(mpq_class(scale));
  const std::uint64_t threshold = scaled.floor().get_ui();
  GraphBuilder b(n);
  std::uint64_t k = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++k) {
      if ((splitmix64_at(seed, k) >> 11) < threshold) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

// -- transforms ---------------------------------------------------------

Graph complement(const Graph& g) {
  GraphBuilder b(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

Graph lexicographic_product(const Graph& g, const Graph& h, std::size_t vertex_cap) {
  const std::size_t hn = h.order();
  if (g.order() > vertex_cap / hn || g.order() * hn > vertex_cap) {
    throw CapacityError("product has " + std::to_string(g.order()) + "*" + std::to_string(hn) +
                        " vertices, above the cap of " + std::to_string(vertex_cap));
  }
  GraphBuilder b(g.order() * hn);
  const auto id = [hn](std::size_t u, std::size_t v) { return static_cast<Vertex>(u * hn + v); };
  for (Vertex u1 = 0; u1 < g.order(); ++u1) {
    for (Vertex v1 = 0; v1 < hn; ++v1) {
      for (Vertex v2 = v1 + 1; v2 < hn; ++v2) {
        if (h.adjacent(v1, v2)) b.add_edge(id(u1, v1), id(u1, v2));
      }
    }
    for (Vertex u2 : g.neighbor_list(u1)) {
      if (u2 < u1) continue;
      for (Vertex v1 = 0; v1 < hn; ++v1) {
        for (Vertex v2 = 0; v2 < hn; ++v2) b.add_edge(id(u1, v1), id(u2, v2));
      }
    }
  }
  return std::move(b).build();
}

namespace {

// before building the factor graph, which is itself large for big t
void check_blowup_size(const Graph& g, std::size_t t, std::size_t vertex_cap) {
  if (t == 0) throw GraphError("blow-up factor must be at least 1");
  if (t > vertex_cap / g.order()) {
    throw CapacityError("blow-up has " + std::to_string(g.order()) + "*" + std::to_string(t) +
                        " vertices, above the cap of " + std::to_string(vertex_cap));
  }
}

}  // namespace

Graph blowup_empty(const Graph& g, std::size_t t, std::size_t vertex_cap) {
  check_blowup_size(g, t, vertex_cap);
  return lexicographic_product(g, empty_graph(t), vertex_cap);
}

Graph blowup_complete(const Graph& g, std::size_t t, std::size_t vertex_cap) {
  check_blowup_size(g, t, vertex_cap);
  return lexicographic_product(g, complete_graph(t), vertex_cap);
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  GraphBuilder b(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (g.adjacent(keep[i], keep[j])) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return std::move(b).build();
}

Graph without_vertex(const Graph& g, Vertex v) {
  std::vector<Vertex> keep;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (u != v) keep.push_back(u);
  }
  return induced_subgraph(g, keep);
}

Graph without_edge(const Graph& g, Vertex u, Vertex v) {
  GraphBuilder b(g.order());
  for (const auto& [a, c] : g.edges()) {
    if (!((a == u && c == v) || (a == v && c == u))) b.add_edge(a, c);
  }
  return std::move(b).build();
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  GraphBuilder b(g.order());
  for (const auto& [u, v] : g.edges()) b.add_edge(perm[u], perm[v]);
  return std::move(b).build();
}

// -- blow-up oracle -----------------------------------------------------

BlowupVertex blowup_vertex(const Graph& g, std::uint64_t t, std::uint64_t id) {
  if (t == 0 || id / t >= g.order()) {
    throw RangeError("vertex " + std::to_string(id) + " outside a blow-up with " + std::to_string(g.order()) +
                     "*" + std::to_string(t) + " vertices");
  }
  return {id / t, id % t};
}

bool blowup_adjacency_oracle(const Graph& g, std::uint64_t t, BlowupVertex a, BlowupVertex b, bool complete) {
  for (const BlowupVertex& x : {a, b}) {
    if (x.base >= g.order() || x.copy >= t) {
      throw RangeError("blow-up vertex " + pair_text(x.base, x.copy) + " outside base order " +
                       std::to_string(g.order()) + ", t = " + std::to_string(t));
    }
  }
  if (a.base != b.base) return g.adjacent(static_cast<Vertex>(a.base), static_cast<Vertex>(b.base));
  return complete && a.copy != b.copy;
}

// -- connectivity -------------------------------------------------------

Mask reach_within(const Graph& g, Mask start, Mask within) {
  Mask seen = start & within;
  Mask frontier = seen;
  while (frontier != 0) {
    Mask next = 0;
    for_each_bit(frontier, [&](std::size_t v) { next |= g.neighbors(static_cast<Vertex>(v)); });
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

bool is_connected_set(const Graph& g, Mask set) {
  if (set == 0) return false;
  return reach_within(g, set & (~set + 1), set) == set;
}

Mask open_neighborhood_union(const Graph& g, Mask set) {
  Mask out = 0;
  for_each_bit(set, [&](std::size_t v) { out |= g.neighbors(static_cast<Vertex>(v)); });
  return out;
}

Mask closed_neighborhood(const Graph& g, Mask set) { return set | open_neighborhood_union(g, set); }

// -- graph6 -------------------------------------------------------------

std::string graph6_encode(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back(static_cast<char>(126));
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(126));
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

Graph graph6_decode(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  const auto byte_at = [&](std::size_t i) -> int {
    if (i >= text.size()) throw ParseError("graph6 string truncated", i);
    const int c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("invalid graph6 byte " + std::to_string(c), i);
    return c - 63;
  };

  std::size_t n = 0;
  if (pos >= text.size()) throw ParseError("empty graph6 string", pos);
  if (byte_at(pos) < 63) {
    n = static_cast<std::size_t>(byte_at(pos));
    pos += 1;
  } else if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 126) {
    for (std::size_t i = 0; i < 6; ++i) n = (n << 6) | static_cast<std::size_t>(byte_at(pos + 2 + i));
    pos += 8;
  } else {
    for (std::size_t i = 0; i < 3; ++i) n = (n << 6) | static_cast<std::size_t>(byte_at(pos + 1 + i));
    pos += 4;
  }
  if (n == 0) throw ParseError("graph6 string encodes a graph with no vertices", pos - 1);
  if (n > kDefaultVertexCap) throw ParseError("graph6 order " + std::to_string(n) + " exceeds the vertex cap", 0);

  const std::size_t bits = n * (n - 1) / 2;
  const std::size_t need = (bits + 5) / 6;
  if (text.size() != pos + need) {
    throw ParseError("graph6 body has " + std::to_string(text.size() - std::min(text.size(), pos)) +
                         " bytes, expected " + std::to_string(need),
                     std::min(text.size(), pos + need));
  }
  GraphBuilder b(n);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int chunk = byte_at(pos + k / 6);
      if ((chunk >> (5 - k % 6)) & 1) b.add_edge(i, j);
    }
  }
  if (bits % 6 != 0) {
    const int last = byte_at(pos + need - 1);
    if ((last & ((1 << (6 - bits % 6)) - 1)) != 0) throw ParseError("nonzero graph6 padding bits", pos + need - 1);
  }
  return std::move(b).build();
}

std::string edge_list_encode(const Graph& g) {
  std::ostringstream os;
  os << g.order() << ' ' << g.size() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

Graph edge_list_decode(std::string_view text) {
  std::vector<std::uint64_t> nums;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{}) throw ParseError("expected an integer in edge list", i);
    nums.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  if (nums.size() < 2) throw ParseError("edge list needs an 'n m' header", 0);
  const std::size_t n = nums[0];
  const std::size_t m = nums[1];
  if (nums.size() != 2 + 2 * m) {
    throw ParseError("edge list header announces " + std::to_string(m) + " edges but body has " +
                         std::to_string((nums.size() - 2) / 2),
                     text.size());
  }
  if (n == 0) throw GraphError("graph must have at least one vertex");
  if (n > kDefaultVertexCap) throw CapacityError("edge list order exceeds the vertex cap");
  GraphBuilder b(n);
  for (std::size_t e = 0; e < m; ++e) {
    if (nums[2 + 2 * e] >= n || nums[3 + 2 * e] >= n) {
      throw GraphError("edge (" + std::to_string(nums[2 + 2 * e]) + "," + std::to_string(nums[3 + 2 * e]) +
                       ") has an endpoint outside 0.." + std::to_string(n - 1));
    }
    b.add_edge(static_cast<Vertex>(nums[2 + 2 * e]), static_cast<Vertex>(nums[3 + 2 * e]));
  }
  return std::move(b).build();
}

}  // namespace hadwiger
