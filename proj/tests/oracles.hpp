#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library algorithms they check.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "hadwiger/graph.hpp"
#include "hadwiger/rational.hpp"

namespace oracle {

using hadwiger::Graph;
using hadwiger::Mask;
using hadwiger::Rational;
using hadwiger::Vertex;

inline bool connected(const Graph& g, Mask s) {
  if (s == 0) return false;
  Mask seen = s & (~s + 1);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t v = 0; v < g.order(); ++v) {
      if (!((seen >> v) & 1U)) continue;
      for (std::size_t u = 0; u < g.order(); ++u) {
        if (((s >> u) & 1U) && !((seen >> u) & 1U) && g.adjacent(static_cast<Vertex>(v), static_cast<Vertex>(u))) {
          seen |= Mask{1} << u;
          grew = true;
        }
      }
    }
  }
  return seen == s;
}

inline bool joined(const Graph& g, Mask a, Mask b) {
  for (std::size_t u = 0; u < g.order(); ++u) {
    for (std::size_t v = 0; v < g.order(); ++v) {
      if (((a >> u) & 1U) && ((b >> v) & 1U) && g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v))) return true;
    }
  }
  return false;
}

/// Every labelling of vertices by 0 (unused) or a block index in restricted
/// growth order; calls f with the blocks.
inline void for_each_block_family(std::size_t n, const std::function<void(const std::vector<Mask>&)>& f) {
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t used) {
    if (v == n) {
      std::vector<Mask> blocks(used, 0);
      for (std::size_t u = 0; u < n; ++u) {
        if (label[u] > 0) blocks[label[u] - 1] |= Mask{1} << u;
      }
      f(blocks);
      return;
    }
    for (std::size_t l = 0; l <= used + 1; ++l) {
      label[v] = l;
      rec(v + 1, std::max(used, l));
    }
  };
  rec(0, 0);
}

/// Largest clique minor, optionally with every branch set of size <= d.
inline std::size_t hadwiger(const Graph& g, std::size_t d = 64) {
  std::size_t best = 0;
  for_each_block_family(g.order(), [&](const std::vector<Mask>& blocks) {
    if (blocks.size() <= best) return;
    for (Mask b : blocks) {
      if (static_cast<std::size_t>(__builtin_popcountll(b)) > d || !connected(g, b)) return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (!joined(g, blocks[i], blocks[j])) return;
      }
    }
    best = blocks.size();
  });
  return best;
}

/// H-minor by trying every map V(G) -> V(H) + {unused}.
inline bool has_minor(const Graph& g, const Graph& h) {
  const std::size_t n = g.order();
  const std::size_t k = h.order();
  std::vector<std::size_t> label(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t v) -> bool {
    if (v == n) {
      std::vector<Mask> sets(k, 0);
      for (std::size_t u = 0; u < n; ++u) {
        if (label[u] > 0) sets[label[u] - 1] |= Mask{1} << u;
      }
      for (Mask s : sets) {
        if (!connected(g, s)) return false;
      }
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          if (h.adjacent(static_cast<Vertex>(a), static_cast<Vertex>(b)) && !joined(g, sets[a], sets[b])) return false;
        }
      }
      return true;
    }
    for (std::size_t l = 0; l <= k; ++l) {
      label[v] = l;
      if (rec(v + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

/// Treewidth as the best elimination order over all n! orders.
inline std::size_t treewidth(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t best = n;
  do {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) adj[u][v] = g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::vector<bool> gone(n, false);
    std::size_t width = 0;
    for (std::size_t v : order) {
      std::vector<std::size_t> nb;
      for (std::size_t u = 0; u < n; ++u) {
        if (!gone[u] && u != v && adj[v][u]) nb.push_back(u);
      }
      width = std::max(width, nb.size());
      for (std::size_t a : nb) {
        for (std::size_t b : nb) {
          if (a != b) adj[a][b] = true;
        }
      }
      gone[v] = true;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

/// Canonical key: minimum upper-triangle bit string over all permutations,
/// pairs in graph6 order, first pair most significant.
inline std::uint64_t canonical_key(const Graph& g) {
  const std::size_t n = g.order();
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t key = 0;
    std::size_t idx = 0;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i, ++idx) {
        if (g.adjacent(static_cast<Vertex>(perm[i]), static_cast<Vertex>(perm[j]))) {
          key |= std::uint64_t{1} << (pairs - 1 - idx);
        }
      }
    }
    best = std::min(best, key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Number of isomorphism classes of n-vertex graphs, by canonicalizing all
/// labelled graphs.
inline std::size_t class_count(std::size_t n) {
  const std::size_t pairs = n * (n - 1) / 2;
  std::set<std::uint64_t> keys;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
    hadwiger::GraphBuilder b(n);
    std::size_t idx = 0;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i, ++idx) {
        if ((bits >> idx) & 1U) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
    keys.insert(canonical_key(std::move(b).build()));
  }
  return keys.size();
}

/// Connected vertex sets by testing every mask.
inline std::vector<Mask> connected_sets(const Graph& g) {
  std::vector<Mask> out;
  for (Mask s = 1; s < (Mask{1} << g.order()); ++s) {
    if (connected(g, s)) out.push_back(s);
  }
  return out;
}

inline bool weak_touch(const Graph& g, Mask a, Mask b) { return (a & b) != 0 || joined(g, a, b); }
inline bool strong_touch(const Graph& g, Mask a, Mask b) { return joined(g, a, b); }

/// Maximal brambles as sorted sets of masks, by checking every family of
/// connected sets (n <= 4).
inline std::set<std::vector<Mask>> maximal_brambles(const Graph& g, bool strong) {
  std::vector<Mask> sets;
  for (Mask s : connected_sets(g)) {
    if (!strong || strong_touch(g, s, s)) sets.push_back(s);
  }
  const std::size_t k = sets.size();
  auto touch = [&](Mask a, Mask b) { return strong ? strong_touch(g, a, b) : weak_touch(g, a, b); };
  std::vector<Mask> brambles;
  for (Mask fam = 1; fam < (Mask{1} << k); ++fam) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      for (std::size_t j = i + 1; j < k && ok; ++j) {
        if (((fam >> i) & 1U) && ((fam >> j) & 1U) && !touch(sets[i], sets[j])) ok = false;
      }
    }
    if (ok) brambles.push_back(fam);
  }
  std::set<std::vector<Mask>> out;
  for (Mask fam : brambles) {
    const bool maximal = std::none_of(brambles.begin(), brambles.end(),
                                      [fam](Mask other) { return other != fam && (other & fam) == fam; });
    if (!maximal) continue;
    std::vector<Mask> members;
    for (std::size_t i = 0; i < k; ++i) {
      if ((fam >> i) & 1U) members.push_back(sets[i]);
    }
    std::sort(members.begin(), members.end());
    out.insert(members);
  }
  return out;
}

/// Exact LP max sum(w) s.t. per-vertex load <= 1, w >= 0, by enumerating
/// basic solutions: choose k tight constraints among loads and w_j = 0,
/// solve, keep the best feasible objective.
inline Rational lp_by_vertices(std::size_t n, const std::vector<Mask>& sets) {
  const std::size_t k = sets.size();
  // constraint rows: load_v (v < n) then -w_j <= 0
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Rational> r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = ((sets[j] >> v) & 1U) ? Rational(1) : Rational(0);
    rows.push_back(r);
    rhs.emplace_back(1L);
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Rational> r(k);
    r[j] = Rational(-1);
    rows.push_back(r);
    rhs.emplace_back(0L);
  }
  const std::size_t m = rows.size();
  Rational best(0L);
  std::vector<std::size_t> pick(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      // Gauss-Jordan on the picked rows
      std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = rows[pick[i]][j];
        a[i][k] = rhs[pick[i]];
      }
      for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && a[p][c].sign() == 0) ++p;
        if (p == k) return;  // singular
        std::swap(a[p], a[c]);
        const Rational inv = Rational(1) / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t i = 0; i < k; ++i) {
          if (i == c || a[i][c].sign() == 0) continue;
          const Rational f = a[i][c];
          for (std::size_t j = 0; j <= k; ++j) a[i][j] -= f * a[c][j];
        }
      }
      std::vector<Rational> x(k);
      for (std::size_t i = 0; i < k; ++i) x[i] = a[i][k];
      for (std::size_t r = 0; r < m; ++r) {
        Rational lhs;
        for (std::size_t j = 0; j < k; ++j) lhs += rows[r][j] * x[j];
        if (lhs > rhs[r]) return;
      }
      Rational obj;
      for (const auto& xi : x) obj += xi;
      best = std::max(best, obj);
      return;
    }
    for (std::size_t r = start; r < m; ++r) {
      pick[depth] = r;
      rec(r + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

/// Separation number by trying every 3-colouring of every induced subgraph.
inline std::size_t separation_number(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = 0;
  for (Mask u = 1; u < (Mask{1} << n); ++u) {
    std::vector<std::size_t> verts;
    for (std::size_t v = 0; v < n; ++v) {
      if ((u >> v) & 1U) verts.push_back(v);
    }
    const std::size_t size = verts.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < size; ++i) total *= 3;
    std::size_t local = size;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<int> side(size);
      std::size_t c = code;
      std::size_t count[3] = {0, 0, 0};
      for (std::size_t i = 0; i < size; ++i) {
        side[i] = static_cast<int>(c % 3);
        c /= 3;
        ++count[side[i]];
      }
      if (3 * count[1] > 2 * size || 3 * count[2] > 2 * size) continue;
      bool ok = true;
      for (std::size_t i = 0; i < size && ok; ++i) {
        for (std::size_t j = 0; j < size && ok; ++j) {
          if (side[i] == 1 && side[j] == 2 &&
              g.adjacent(static_cast<Vertex>(verts[i]), static_cast<Vertex>(verts[j]))) {
            ok = false;
          }
        }
      }
      if (ok) local = std::min(local, count[0]);
    }
    best = std::max(best, local);
  }
  return best;
}

}  // namespace oracle
