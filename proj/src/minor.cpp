#include "hadwiger/minor.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "hadwiger/error.hpp"

namespace hadwiger {

std::size_t MinorModel::breadth() const noexcept {
  std::size_t b = 0;
  for (const auto& s : branch_sets) b = std::max(b, s.size());
  return b;
}

// -- verification --------------------------------------------------------

namespace {

MinorCheck fail(MinorViolation v, std::string msg) { return MinorCheck{false, v, std::move(msg)}; }

bool sets_adjacent(const Graph& g, Mask a, Mask b) { return (open_neighborhood_union(g, a) & b) != 0; }

}  // namespace

MinorCheck verify_minor_model(const Graph& g, const MinorModel& m) {
  if (m.host_n != g.order()) {
    return fail(MinorViolation::kHostMismatch, "host mismatch: model for " + std::to_string(m.host_n) +
                                                   " vertices, graph has " + std::to_string(g.order()));
  }
  if (!g.fits_mask()) return fail(MinorViolation::kHostMismatch, "host has more than 64 vertices");
  const auto* pattern = std::get_if<PatternGraph>(&m.pattern);
  const std::size_t expected = pattern != nullptr ? pattern->h.order() : std::get<CliqueOrder>(m.pattern).t;
  if (m.branch_sets.size() != expected) {
    return fail(MinorViolation::kWrongCount, "wrong branch-set count: " + std::to_string(m.branch_sets.size()) +
                                                 " sets for a pattern of order " + std::to_string(expected));
  }
  const Mask all = full_mask(g.order());
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    const Mask s = m.branch_sets[i].bits;
    if (s == 0) return fail(MinorViolation::kEmptySet, "empty branch set " + std::to_string(i));
    if ((s & ~all) != 0) return fail(MinorViolation::kOutOfRange, "branch set " + std::to_string(i) + " out of range");
  }
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < m.branch_sets.size(); ++j) {
      if ((m.branch_sets[i].bits & m.branch_sets[j].bits) != 0) {
        return fail(MinorViolation::kOverlap, "overlapping branch sets " + std::to_string(i) + " {" +
                                                  m.branch_sets[i].str() + "} and " + std::to_string(j) + " {" +
                                                  m.branch_sets[j].str() + "}");
      }
    }
  }
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    if (!is_connected_set(g, m.branch_sets[i].bits)) {
      return fail(MinorViolation::kDisconnected,
                  "disconnected branch set " + std::to_string(i) + " {" + m.branch_sets[i].str() + "}");
    }
  }
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < m.branch_sets.size(); ++j) {
      const bool required = pattern == nullptr || pattern->h.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j));
      if (required && !sets_adjacent(g, m.branch_sets[i].bits, m.branch_sets[j].bits)) {
        return fail(MinorViolation::kMissingCrossEdge,
                    "missing cross edge between branch sets " + std::to_string(i) + " {" + m.branch_sets[i].str() +
                        "} and " + std::to_string(j) + " {" + m.branch_sets[j].str() + "}");
      }
    }
  }
  return {};
}

// -- search ---------------------------------------------------------------

namespace {

/// Current minor of the host: vertices are class representatives (the
/// lowest original vertex of each class).
struct Node {
  Mask alive = 0;
  Mask fixed = 0;  // final singleton classes, used by the model
  std::array<Mask, 64> adj{};
  std::array<Mask, 64> cls{};

  int degree(std::size_t v) const noexcept { return popcount(adj[v]); }

  std::size_t edges() const noexcept {
    std::size_t twice = 0;
    for_each_bit(alive, [&](std::size_t v) { twice += static_cast<std::size_t>(popcount(adj[v])); });
    return twice / 2;
  }

  void remove(std::size_t v) noexcept {
    for_each_bit(adj[v], [&](std::size_t u) { adj[u] &= ~bit(v); });
    adj[v] = 0;
    cls[v] = 0;
    alive &= ~bit(v);
    fixed &= ~bit(v);
  }

  std::size_t contract(std::size_t a, std::size_t b) noexcept {
    const std::size_t keep = std::min(a, b);
    const std::size_t gone = std::max(a, b);
    const Mask merged_adj = (adj[a] | adj[b]) & ~bit(a) & ~bit(b);
    const Mask merged_cls = cls[a] | cls[b];
    remove(gone);
    for_each_bit(adj[keep], [&](std::size_t u) { adj[u] &= ~bit(keep); });
    adj[keep] = merged_adj;
    cls[keep] = merged_cls;
    for_each_bit(merged_adj, [&](std::size_t u) { adj[u] |= bit(keep); });
    return keep;
  }
};

Node make_node(const Graph& g) {
  Node s;
  s.alive = full_mask(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    s.adj[v] = g.neighbors(v);
    s.cls[v] = bit(v);
  }
  return s;
}

struct Key {
  Mask fixed;
  std::vector<Mask> classes;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = k.fixed * 0x9E3779B97F4A7C15ULL;
    for (Mask c : k.classes) h = (h ^ c) * 0x100000001B3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

Key key_of(const Node& s) {
  Key k{s.fixed, {}};
  k.classes.reserve(static_cast<std::size_t>(popcount(s.alive)));
  for_each_bit(s.alive, [&](std::size_t v) { k.classes.push_back(s.cls[v]); });
  return k;
}

/// Whether the vertices in `cand` contain a clique of size `k` that also
/// contains `must` (must ⊆ cand, pairwise adjacent).
bool has_clique_at_least(const Node& s, Mask must, Mask cand, int k) {
  if (popcount(must) >= k) return true;
  Mask p = cand & ~must;
  for_each_bit(must, [&](std::size_t v) { p &= s.adj[v]; });
  if (popcount(must) + popcount(p) < k) return false;
  while (p != 0) {
    if (popcount(must) + popcount(p) < k) return false;
    const std::size_t v = static_cast<std::size_t>(lowest_bit(p));
    p &= ~bit(v);
    if (has_clique_at_least(s, must | bit(v), (p & s.adj[v]) | must | bit(v), k)) return true;
  }
  return false;
}

/// Injective map pattern -> alive vertices preserving pattern edges.
bool embed_pattern(const Node& s, const Graph& h, const std::vector<Vertex>& order, std::size_t idx,
                   std::vector<int>& image, Mask used) {
  if (idx == order.size()) return true;
  const Vertex x = order[idx];
  Mask cand = s.alive & ~used;
  const std::size_t need = h.degree(x);
  for (Vertex y : h.neighbor_list(x)) {
    if (image[y] >= 0) cand &= s.adj[static_cast<std::size_t>(image[y])];
  }
  while (cand != 0) {
    const std::size_t v = static_cast<std::size_t>(lowest_bit(cand));
    cand &= cand - 1;
    if (static_cast<std::size_t>(s.degree(v)) < need) continue;
    image[x] = static_cast<int>(v);
    if (embed_pattern(s, h, order, idx + 1, image, used | bit(v))) return true;
    image[x] = -1;
  }
  return false;
}

/// Pattern vertices in BFS order from the highest-degree vertex of each
/// component, so every later vertex is constrained by mapped neighbours.
std::vector<Vertex> pattern_order(const Graph& h) {
  std::vector<Vertex> order;
  std::vector<bool> seen(h.order(), false);
  while (order.size() < h.order()) {
    Vertex start = 0;
    std::size_t best = 0;
    bool have = false;
    for (Vertex v = 0; v < h.order(); ++v) {
      if (!seen[v] && (!have || h.degree(v) > best)) {
        start = v;
        best = h.degree(v);
        have = true;
      }
    }
    std::vector<Vertex> queue{start};
    seen[start] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      order.push_back(queue[i]);
      for (Vertex y : h.neighbor_list(queue[i])) {
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
  }
  return order;
}

/// Exhaustive branch-and-bound over contractions and deletions of the
/// host. Each step takes the unfixed vertex of minimum degree (ties by
/// descending original degree, then index) and either fixes it as a final
/// singleton class, contracts it into a neighbour's class, or deletes it.
class MinorSearch {
 public:
  MinorSearch(const Graph& g, std::size_t t, std::size_t breadth, SearchStats* stats)
      : g_(g), clique_(true), target_(t), breadth_(breadth), stats_(stats) {
    init_rank();
    target_edges_ = t * (t - 1) / 2;
  }

  MinorSearch(const Graph& g, const Graph& pattern, SearchStats* stats)
      : g_(g), clique_(false), target_(pattern.order()), breadth_(0), stats_(stats), pattern_(&pattern) {
    init_rank();
    target_edges_ = pattern.size();
    pattern_order_ = pattern_order(pattern);
    for (Vertex v = 0; v < pattern.order(); ++v) {
      if (pattern.degree(v) == 0) pattern_has_isolated_ = true;
      pattern_min_degree_ = std::min(pattern_min_degree_, pattern.degree(v));
    }
  }

  std::optional<std::vector<Mask>> run() {
    if (!search(make_node(g_))) return std::nullopt;
    return found_;
  }

 private:
  void init_rank() {
    std::vector<std::size_t> by(g_.order());
    std::iota(by.begin(), by.end(), 0);
    std::stable_sort(by.begin(), by.end(), [&](std::size_t a, std::size_t b) {
      return g_.degree(static_cast<Vertex>(a)) > g_.degree(static_cast<Vertex>(b));
    });
    rank_.assign(g_.order(), 0);
    for (std::size_t i = 0; i < by.size(); ++i) rank_[by[i]] = i;
  }

  bool before(const Node& s, std::size_t a, std::size_t b) const {
    const int da = s.degree(a);
    const int db = s.degree(b);
    if (da != db) return da < db;
    return rank_[a] < rank_[b];
  }

  bool succeed(const Node& s, Mask chosen) {
    found_.clear();
    for_each_bit(chosen, [&](std::size_t v) { found_.push_back(s.cls[v]); });
    return true;
  }

  bool succeed_pattern(const Node& s, const std::vector<int>& image) {
    found_.clear();
    for (int v : image) found_.push_back(s.cls[static_cast<std::size_t>(v)]);
    return true;
  }

  /// First `count` members of `pool` in representative order.
  static Mask first_bits(Mask pool, std::size_t count) {
    Mask out = 0;
    while (pool != 0 && static_cast<std::size_t>(popcount(out)) < count) {
      const Mask low = pool & (~pool + 1);
      out |= low;
      pool &= pool - 1;
    }
    return out;
  }

  /// Safe simplifications for clique targets. Returns true when a model
  /// was found along the way.
  bool reduce(Node& s) {
    const std::size_t t = target_;
    bool changed = true;
    while (changed) {
      changed = false;
      Mask free = s.alive & ~s.fixed;
      while (free != 0 && !changed) {
        const std::size_t v = static_cast<std::size_t>(lowest_bit(free));
        free &= free - 1;
        const auto dv = static_cast<std::size_t>(s.degree(v));
        if ((dv == 0 && t >= 2) || (dv == 1 && t >= 3)) {
          s.remove(v);
          changed = true;
          continue;
        }
        bool simplicial = true;
        for_each_bit(s.adj[v], [&](std::size_t u) {
          if ((s.adj[v] & ~bit(u) & ~s.adj[u]) != 0) simplicial = false;
        });
        if (simplicial) {
          // N[v] is a clique; any model through v survives without v.
          if (dv + 1 >= t) return succeed(s, bit(v) | first_bits(s.adj[v], t - 1));
          s.remove(v);
          changed = true;
          continue;
        }
        if (dv == 2 && t >= 4 && breadth_ == 0) {
          const Mask unfixed_nb = s.adj[v] & ~s.fixed;
          if (unfixed_nb == 0) {
            s.remove(v);
          } else {
            std::size_t u = static_cast<std::size_t>(lowest_bit(unfixed_nb));
            for_each_bit(unfixed_nb, [&](std::size_t w) {
              if (rank_[w] < rank_[u]) u = w;
            });
            s.contract(v, u);
          }
          changed = true;
        }
      }
    }
    return false;
  }

  bool bounded_out(const Node& s) const {
    const auto alive = static_cast<std::size_t>(popcount(s.alive));
    if (alive < target_) return true;
    if (s.edges() < target_edges_) return true;
    if (clique_) {
      const int need_deg = static_cast<int>(target_) - 1;
      bool low_fixed = false;
      for_each_bit(s.fixed, [&](std::size_t v) {
        if (s.degree(v) < need_deg) low_fixed = true;
      });
      if (low_fixed) return true;
      // Classes made of a single current vertex need degree >= t-1 and are
      // pairwise adjacent; all other classes use two or more vertices.
      const long k0 = 2 * static_cast<long>(target_) - static_cast<long>(alive);
      if (k0 > 0) {
        Mask high = 0;
        for_each_bit(s.alive, [&](std::size_t v) {
          if (s.degree(v) >= need_deg) high |= bit(v);
        });
        if (!has_clique_at_least(s, s.fixed, high, static_cast<int>(k0))) return true;
      }
    } else {
      if (static_cast<std::size_t>(popcount(s.fixed)) > target_) return true;
    }
    return false;
  }

  bool search(Node s) {
    if (stats_ != nullptr) ++stats_->nodes;
    if (clique_) {
      if (reduce(s)) return true;
    } else if (!pattern_has_isolated_) {
      Mask free = s.alive & ~s.fixed;
      for_each_bit(free, [&](std::size_t v) {
        if (s.degree(v) == 0) s.remove(v);
      });
    }
    if (bounded_out(s)) return false;

    const auto alive = static_cast<std::size_t>(popcount(s.alive));
    if (clique_) {
      if (static_cast<std::size_t>(popcount(s.fixed)) >= target_) return succeed(s, first_bits(s.fixed, target_));
      bool complete = true;
      for_each_bit(s.alive, [&](std::size_t v) {
        if ((s.alive & ~bit(v) & ~s.adj[v]) != 0) complete = false;
      });
      if (complete) return succeed(s, first_bits(s.alive, target_));
      if (alive == target_) return false;
    } else if (alive == target_) {
      std::vector<int> image(pattern_->order(), -1);
      if (embed_pattern(s, *pattern_, pattern_order_, 0, image, 0)) return succeed_pattern(s, image);
      return false;
    }

    Key key = key_of(s);
    if (failed_.contains(key)) {
      if (stats_ != nullptr) ++stats_->memo_hits;
      return false;
    }

    Mask free = s.alive & ~s.fixed;
    if (free == 0) {
      failed_.insert(std::move(key));
      return false;
    }
    std::size_t v = static_cast<std::size_t>(lowest_bit(free));
    for_each_bit(free, [&](std::size_t w) {
      if (before(s, w, v)) v = w;
    });

    // fix v as a final singleton class
    bool can_fix = true;
    if (clique_) {
      can_fix = static_cast<std::size_t>(s.degree(v)) + 1 >= target_ && (s.fixed & ~s.adj[v]) == 0;
    } else {
      can_fix = static_cast<std::size_t>(popcount(s.fixed)) < target_ &&
                static_cast<std::size_t>(s.degree(v)) >= pattern_min_degree_;
    }
    if (can_fix) {
      Node next = s;
      next.fixed |= bit(v);
      if (search(next)) return true;
    }

    // grow v's class by one neighbouring class
    std::vector<std::size_t> nbrs = bits_of(s.adj[v] & ~s.fixed);
    std::stable_sort(nbrs.begin(), nbrs.end(), [&](std::size_t a, std::size_t b) { return rank_[a] < rank_[b]; });
    for (std::size_t u : nbrs) {
      if (breadth_ != 0 && static_cast<std::size_t>(popcount(s.cls[u] | s.cls[v])) > breadth_) continue;
      Node next = s;
      next.contract(v, u);
      if (search(next)) return true;
    }

    // v is not used by the model
    {
      Node next = s;
      next.remove(v);
      if (search(next)) return true;
    }

    failed_.insert(std::move(key));
    return false;
  }

  const Graph& g_;
  bool clique_;
  std::size_t target_;
  std::size_t target_edges_ = 0;
  std::size_t breadth_;
  SearchStats* stats_;
  const Graph* pattern_ = nullptr;
  std::vector<Vertex> pattern_order_;
  bool pattern_has_isolated_ = false;
  std::size_t pattern_min_degree_ = ~std::size_t{0};
  std::vector<std::size_t> rank_;
  std::unordered_set<Key, KeyHash> failed_;
  std::vector<Mask> found_;
};

void require_mask_host(const Graph& g) {
  if (!g.fits_mask()) throw CapacityError("minor search supports at most 64 host vertices");
}

std::vector<VertexSet> to_sets(std::size_t n, const std::vector<Mask>& masks) {
  std::vector<VertexSet> out;
  out.reserve(masks.size());
  for (Mask m : masks) out.push_back(VertexSet{n, m});
  return out;
}

/// Branch sets of a clique model, sorted canonically.
MinorModel clique_model(std::size_t n, std::vector<Mask> masks) {
  std::sort(masks.begin(), masks.end(), canonical_less);
  MinorModel m;
  m.host_n = n;
  m.pattern = CliqueOrder{masks.size()};
  m.branch_sets = to_sets(n, masks);
  return m;
}

/// Maximum clique of g restricted to vertices in `cand`.
Mask max_clique(const Graph& g, Mask cand) {
  Mask best = 0;
  auto rec = [&](auto&& self, Mask r, Mask p) -> void {
    if (p == 0) {
      if (popcount(r) > popcount(best)) best = r;
      return;
    }
    while (p != 0) {
      if (popcount(r) + popcount(p) <= popcount(best)) return;
      const std::size_t v = static_cast<std::size_t>(lowest_bit(p));
      p &= p - 1;
      self(self, r | bit(v), p & g.neighbors(static_cast<Vertex>(v)));
    }
    if (popcount(r) > popcount(best)) best = r;
  };
  rec(rec, 0, cand);
  return best;
}

}  // namespace

std::optional<MinorModel> has_clique_minor(const Graph& g, std::size_t t, std::optional<Breadth> breadth,
                                           SearchStats* stats) {
  require_mask_host(g);
  if (t == 0) return clique_model(g.order(), {});
  if (breadth && breadth->d == 0) throw std::invalid_argument("breadth must be at least 1");
  if (t > g.order()) return std::nullopt;
  if (t == 1) return clique_model(g.order(), {bit(0)});
  const std::size_t d = breadth ? breadth->d : 0;
  MinorSearch search(g, t, d >= g.order() ? 0 : d, stats);
  auto found = search.run();
  if (!found) return std::nullopt;
  return clique_model(g.order(), std::move(*found));
}

MinorModel greedy_clique_minor(const Graph& g) {
  require_mask_host(g);
  const Mask omega = max_clique(g, full_mask(g.order()));
  std::vector<Mask> best;
  for_each_bit(omega, [&](std::size_t v) { best.push_back(bit(v)); });

  // Contract a minimum-degree vertex into the neighbour it shares the
  // fewest neighbours with, until the minor is complete.
  Node s = make_node(g);
  while (popcount(s.alive) > static_cast<int>(best.size())) {
    std::size_t v = static_cast<std::size_t>(lowest_bit(s.alive));
    bool complete = true;
    for_each_bit(s.alive, [&](std::size_t w) {
      if ((s.alive & ~bit(w) & ~s.adj[w]) != 0) complete = false;
      if (s.degree(w) < s.degree(v)) v = w;
    });
    if (complete) {
      best.clear();
      for_each_bit(s.alive, [&](std::size_t w) { best.push_back(s.cls[w]); });
      break;
    }
    if (s.adj[v] == 0) {
      s.remove(v);
      continue;
    }
    std::size_t u = static_cast<std::size_t>(lowest_bit(s.adj[v]));
    for_each_bit(s.adj[v], [&](std::size_t w) {
      if (popcount(s.adj[w] & s.adj[v]) < popcount(s.adj[u] & s.adj[v])) u = w;
    });
    s.contract(v, u);
  }
  return clique_model(g.order(), std::move(best));
}

HadwigerResult hadwiger_number(const Graph& g) {
  require_mask_host(g);
  MinorModel best = greedy_clique_minor(g);
  std::size_t upper = g.order();
  while (upper * (upper - 1) / 2 > g.size()) --upper;
  for (std::size_t t = best.order() + 1; t <= upper; ++t) {
    auto found = has_clique_minor(g, t);
    if (!found) break;
    best = std::move(*found);
  }
  const std::size_t h = best.order();
  return {h, std::move(best)};
}

HadwigerResult max_clique_minor_bounded(const Graph& g, Breadth d) {
  require_mask_host(g);
  if (d.d == 0) throw std::invalid_argument("breadth must be at least 1");
  if (d.d >= g.order()) return hadwiger_number(g);
  std::vector<Mask> singletons;
  for_each_bit(max_clique(g, full_mask(g.order())), [&](std::size_t v) { singletons.push_back(bit(v)); });
  MinorModel best = clique_model(g.order(), std::move(singletons));
  std::size_t upper = g.order();
  while (upper * (upper - 1) / 2 > g.size()) --upper;
  for (std::size_t t = best.order() + 1; t <= upper; ++t) {
    auto found = has_clique_minor(g, t, d);
    if (!found) break;
    best = std::move(*found);
  }
  const std::size_t value = best.order();
  return {value, std::move(best)};
}

std::optional<MinorModel> has_minor(const Graph& g, const Graph& h, SearchStats* stats) {
  require_mask_host(g);
  if (h.order() > g.order() || h.size() > g.size()) return std::nullopt;
  MinorSearch search(g, h, stats);
  auto found = search.run();
  if (!found) return std::nullopt;
  MinorModel m;
  m.host_n = g.order();
  m.branch_sets = to_sets(g.order(), *found);
  m.pattern = PatternGraph{h};
  return m;
}

// -- text form ------------------------------------------------------------

std::string serialize_minor_model(const MinorModel& m) {
  std::ostringstream os;
  os << "minor " << m.host_n << ' ';
  if (const auto* p = std::get_if<PatternGraph>(&m.pattern)) {
    os << "pattern " << graph6_encode(p->h);
  } else {
    os << "clique " << std::get<CliqueOrder>(m.pattern).t;
  }
  os << '\n';
  for (const auto& s : m.branch_sets) os << s.str() << '\n';
  return os.str();
}

MinorModel parse_minor_model(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty minor model", 0);
  std::istringstream head(line);
  std::string tag;
  std::string kind;
  std::size_t host_n = 0;
  if (!(head >> tag >> host_n >> kind) || tag != "minor") {
    throw ParseError("expected 'minor <n> clique <t>' or 'minor <n> pattern <graph6>'", 0);
  }
  MinorModel m;
  m.host_n = host_n;
  if (kind == "clique") {
    std::size_t t = 0;
    if (!(head >> t)) throw ParseError("missing clique order", line.size());
    m.pattern = CliqueOrder{t};
  } else if (kind == "pattern") {
    std::string g6;
    if (!(head >> g6)) throw ParseError("missing pattern graph6", line.size());
    m.pattern = PatternGraph{graph6_decode(g6)};
  } else {
    throw ParseError("unknown minor kind '" + kind + "'", 0);
  }
  std::size_t offset = line.size() + 1;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') {
      offset += line.size() + 1;
      continue;
    }
    try {
      m.branch_sets.push_back(parse_vertex_set(host_n, line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), offset);
    }
    offset += line.size() + 1;
  }
  return m;
}

}  // namespace hadwiger
