#include "hadwiger/bramble.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "hadwiger/bits.hpp"
#include "hadwiger/error.hpp"

namespace hadwiger {

std::string to_string(TouchingKind k) { return k == TouchingKind::kWeak ? "weak" : "strong"; }

TouchingKind parse_touching_kind(const std::string& s) {
  if (s == "weak") return TouchingKind::kWeak;
  if (s == "strong") return TouchingKind::kStrong;
  throw ParseError("unknown touching kind '" + s + "'", 0);
}

Rational WeightedBramble::value() const {
  Rational sum;
  for (const auto& w : weights) sum += w;
  return sum;
}

// -- connected sets ---------------------------------------------------------

namespace {

void require_small(const Graph& g) {
  if (!g.fits_mask()) throw CapacityError("vertex-set computations support at most 64 vertices");
}

class ConnectedSetEnumerator {
 public:
  ConnectedSetEnumerator(const Graph& g, std::size_t max_size, std::size_t cap)
      : g_(g), max_size_(max_size), cap_(cap) {}

  std::vector<Mask> run() {
    for (Vertex r = 0; r < g_.order(); ++r) {
      const Mask below = full_mask(r + 1);
      extend(bit(r), g_.neighbors(r) & ~below, below);
    }
    std::sort(out_.begin(), out_.end(), canonical_less);
    return std::move(out_);
  }

 private:
  // Each connected set is produced once: from its lowest vertex, adding
  // candidates in order and excluding the ones already branched on.
  void extend(Mask set, Mask candidates, Mask excluded) {
    if (out_.size() >= cap_) {
      throw CapacityError("more than " + std::to_string(cap_) +
                          " connected sets; lower max_size or the graph order");
    }
    out_.push_back(set);
    if (static_cast<std::size_t>(popcount(set)) >= max_size_) return;
    Mask rest = candidates;
    Mask banned = excluded;
    while (rest != 0) {
      const std::size_t v = static_cast<std::size_t>(lowest_bit(rest));
      rest &= rest - 1;
      const Mask fresh = g_.neighbors(static_cast<Vertex>(v)) & ~set & ~banned & ~candidates & ~bit(v);
      extend(set | bit(v), rest | fresh, banned | bit(v));
      banned |= bit(v);
    }
  }

  const Graph& g_;
  std::size_t max_size_;
  std::size_t cap_;
  std::vector<Mask> out_;
};

}  // namespace

std::vector<Mask> enumerate_connected_sets(const Graph& g, std::optional<std::size_t> max_size, const Limits& limits) {
  require_small(g);
  ConnectedSetEnumerator e(g, max_size.value_or(g.order()), limits.max_connected_sets);
  return e.run();
}

bool touches(const Graph& g, Mask a, Mask b, TouchingKind kind) {
  if (kind == TouchingKind::kWeak) return (a & closed_neighborhood(g, b)) != 0;
  return (a & open_neighborhood_union(g, b)) != 0;
}

BrambleCheck validate_bramble(const Graph& g, const std::vector<Mask>& sets, TouchingKind kind) {
  require_small(g);
  const Mask all = full_mask(g.order());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const VertexSet s{g.order(), sets[i]};
    if (sets[i] == 0 || (sets[i] & ~all) != 0) {
      return {false, "set " + std::to_string(i) + " is empty or out of range"};
    }
    if (!is_connected_set(g, sets[i])) return {false, "disconnected set " + std::to_string(i) + " {" + s.str() + "}"};
    for (std::size_t j = 0; j < i; ++j) {
      if (sets[j] == sets[i]) return {false, "duplicate set " + std::to_string(i) + " {" + s.str() + "}"};
    }
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = kind == TouchingKind::kStrong ? i : i + 1; j < sets.size(); ++j) {
      if (!touches(g, sets[i], sets[j], kind)) {
        const VertexSet a{g.order(), sets[i]};
        const VertexSet b{g.order(), sets[j]};
        if (i == j) return {false, "set " + std::to_string(i) + " {" + a.str() + "} has no internal edge"};
        return {false, "non-touching pair " + std::to_string(i) + " {" + a.str() + "} and " + std::to_string(j) +
                           " {" + b.str() + "} (" + to_string(kind) + ")"};
      }
    }
  }
  return {};
}

// -- maximal brambles -------------------------------------------------------

namespace {

struct TouchGraph {
  std::vector<Mask> nodes;
  std::vector<DynBitset> adj;  // no self loops
};

TouchGraph build_touch_graph(const Graph& g, TouchingKind kind, std::optional<std::size_t> max_size,
                             const Limits& limits) {
  TouchGraph tg;
  std::vector<Mask> sets = enumerate_connected_sets(g, max_size, limits);
  if (kind == TouchingKind::kStrong) std::erase_if(sets, [](Mask s) { return popcount(s) < 2; });
  if (sets.size() > limits.max_touching_sets) {
    throw CapacityError(std::to_string(sets.size()) + " connected sets exceed the touching-graph cap of " +
                        std::to_string(limits.max_touching_sets) + "; lower max_size or the graph order");
  }
  const std::size_t k = sets.size();
  std::vector<Mask> reach(k);
  for (std::size_t i = 0; i < k; ++i) {
    reach[i] = kind == TouchingKind::kWeak ? closed_neighborhood(g, sets[i]) : open_neighborhood_union(g, sets[i]);
  }
  tg.adj.assign(k, DynBitset(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if ((sets[i] & reach[j]) != 0) {
        tg.adj[i].set(j);
        tg.adj[j].set(i);
      }
    }
  }
  tg.nodes = std::move(sets);
  return tg;
}

TouchGraph restrict_touch_graph(const TouchGraph& tg, const std::vector<std::size_t>& keep) {
  TouchGraph out;
  const std::size_t k = keep.size();
  out.adj.assign(k, DynBitset(k));
  for (std::size_t a = 0; a < k; ++a) {
    out.nodes.push_back(tg.nodes[keep[a]]);
    for (std::size_t b = a + 1; b < k; ++b) {
      if (tg.adj[keep[a]].test(keep[b])) {
        out.adj[a].set(b);
        out.adj[b].set(a);
      }
    }
  }
  return out;
}

/// Degeneracy order of the touching graph (repeatedly remove a node of
/// minimum remaining degree, lowest index first).
std::vector<std::size_t> degeneracy_order(const TouchGraph& tg) {
  const std::size_t k = tg.nodes.size();
  std::vector<std::size_t> deg(k);
  for (std::size_t i = 0; i < k; ++i) deg[i] = tg.adj[i].count();
  std::vector<bool> removed(k, false);
  std::vector<std::size_t> order;
  order.reserve(k);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!removed[i] && (best == k || deg[i] < deg[best])) best = i;
    }
    removed[best] = true;
    order.push_back(best);
    tg.adj[best].for_each([&](std::size_t j) {
      if (!removed[j]) --deg[j];
    });
  }
  return order;
}

class CliqueCollector {
 public:
  CliqueCollector(const TouchGraph& tg, std::size_t cap, std::atomic<std::size_t>& total)
      : tg_(tg), cap_(cap), total_(total) {}

  void expand(std::vector<std::size_t>& r, DynBitset p, DynBitset x) {
    if (p.none()) {
      if (x.none()) report(r);
      return;
    }
    // pivot: node of P u X with the most neighbours in P
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have = false;
    auto consider = [&](std::size_t u) {
      const std::size_t c = tg_.adj[u].intersection_count(p);
      if (!have || c > best) {
        pivot = u;
        best = c;
        have = true;
      }
    };
    p.for_each(consider);
    x.for_each(consider);
    DynBitset branch = p;
    branch.subtract(tg_.adj[pivot]);
    std::vector<std::size_t> todo;
    branch.for_each([&](std::size_t v) { todo.push_back(v); });
    for (std::size_t v : todo) {
      DynBitset np = p;
      np &= tg_.adj[v];
      DynBitset nx = x;
      nx &= tg_.adj[v];
      r.push_back(v);
      expand(r, std::move(np), std::move(nx));
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  }

  std::vector<std::vector<std::size_t>> take() { return std::move(found_); }

 private:
  void report(const std::vector<std::size_t>& r) {
    if (total_.fetch_add(1) + 1 > cap_) {
      throw CapacityError("more than " + std::to_string(cap_) + " maximal brambles; lower max_size or the graph order");
    }
    std::vector<std::size_t> c = r;
    std::sort(c.begin(), c.end());
    found_.push_back(std::move(c));
  }

  const TouchGraph& tg_;
  std::size_t cap_;
  std::atomic<std::size_t>& total_;
  std::vector<std::vector<std::size_t>> found_;
};

std::vector<std::vector<std::size_t>> cliques_from(const TouchGraph& tg, const std::vector<std::size_t>& order,
                                                   std::size_t i, std::size_t cap,
                                                   std::atomic<std::size_t>& total,
                                                   const std::vector<std::size_t>& position) {
  const std::size_t k = tg.nodes.size();
  const std::size_t v = order[i];
  DynBitset p(k);
  DynBitset x(k);
  tg.adj[v].for_each([&](std::size_t u) {
    if (position[u] > i) {
      p.set(u);
    } else {
      x.set(u);
    }
  });
  CliqueCollector c(tg, cap, total);
  std::vector<std::size_t> r{v};
  c.expand(r, std::move(p), std::move(x));
  return c.take();
}

std::vector<BrambleFamily> to_families(const Graph& g, TouchingKind kind, const TouchGraph& tg,
                                       const std::vector<std::vector<std::vector<std::size_t>>>& per_root) {
  std::vector<BrambleFamily> out;
  for (const auto& group : per_root) {
    for (const auto& clique : group) {
      BrambleFamily f{g.order(), {}, kind};
      f.sets.reserve(clique.size());
      for (std::size_t idx : clique) f.sets.push_back(tg.nodes[idx]);
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<BrambleFamily> maximal_brambles_impl(const Graph& g, TouchingKind kind,
                                                 std::optional<std::size_t> max_size, const Limits& limits,
                                                 bool parallel) {
  require_small(g);
  const TouchGraph full = build_touch_graph(g, kind, max_size, limits);
  if (full.nodes.empty()) return {};
  // Sets touching every other set lie in every maximal family; they are
  // split off and merged back into each clique.
  std::vector<Mask> universal;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < full.nodes.size(); ++i) {
    if (full.adj[i].count() + 1 == full.nodes.size()) {
      universal.push_back(full.nodes[i]);
    } else {
      keep.push_back(i);
    }
  }
  const TouchGraph tg = restrict_touch_graph(full, keep);
  const std::size_t k = tg.nodes.size();
  if (k == 0) return {BrambleFamily{g.order(), universal, kind}};
  const std::vector<std::size_t> order = degeneracy_order(tg);
  std::vector<std::size_t> position(k);
  for (std::size_t i = 0; i < k; ++i) position[order[i]] = i;

  std::vector<std::vector<std::vector<std::size_t>>> per_root(k);
  std::atomic<std::size_t> total{0};
  if (parallel) {
    bool overflow = false;
    std::string message;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < k; ++i) {
      try {
        per_root[i] = cliques_from(tg, order, i, limits.max_cliques, total, position);
      } catch (const CapacityError& e) {
#pragma omp critical(hadwiger_bramble_overflow)
        {
          overflow = true;
          message = e.what();
        }
      }
    }
    if (overflow) throw CapacityError(message);
  } else {
    for (std::size_t i = 0; i < k; ++i) per_root[i] = cliques_from(tg, order, i, limits.max_cliques, total, position);
  }
  std::vector<BrambleFamily> out = to_families(g, kind, tg, per_root);
  if (!universal.empty()) {
    for (auto& f : out) {
      std::vector<Mask> merged(f.sets.size() + universal.size());
      std::merge(f.sets.begin(), f.sets.end(), universal.begin(), universal.end(), merged.begin(), canonical_less);
      f.sets = std::move(merged);
    }
  }
  return out;
}

}  // namespace

std::vector<BrambleFamily> maximal_brambles(const Graph& g, TouchingKind kind, std::optional<std::size_t> max_size,
                                            const Limits& limits) {
  return maximal_brambles_impl(g, kind, max_size, limits, true);
}

std::vector<BrambleFamily> maximal_brambles_serial(const Graph& g, TouchingKind kind,
                                                   std::optional<std::size_t> max_size, const Limits& limits) {
  return maximal_brambles_impl(g, kind, max_size, limits, false);
}

std::vector<Mask> minimal_members(const std::vector<Mask>& sets) {
  std::vector<Mask> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < sets.size() && minimal; ++j) {
      if (j != i && sets[j] != sets[i] && (sets[j] & ~sets[i]) == 0) minimal = false;
    }
    if (minimal) out.push_back(sets[i]);
  }
  return out;
}

namespace {

bool hits_all(Mask s, const std::vector<Mask>& sets) {
  for (Mask b : sets) {
    if ((s & b) == 0) return false;
  }
  return true;
}

/// First k-subset of {0..n-1} (in increasing mask order) hitting all sets.
std::optional<Mask> hitting_set_of_size(std::size_t n, std::size_t k, const std::vector<Mask>& sets) {
  if (k == 0) return sets.empty() ? std::optional<Mask>(0) : std::nullopt;
  if (k > n) return std::nullopt;
  const Mask limit = full_mask(n);
  Mask s = full_mask(k);
  while (true) {
    if (hits_all(s, sets)) return s;
    // Gosper's hack: next mask with the same popcount
    const Mask c = s & (~s + 1);
    const Mask r = s + c;
    if (r == 0 || (r & ~limit) != 0) return std::nullopt;
    s = (((r ^ s) >> 2) / c) | r;
    if ((s & ~limit) != 0) return std::nullopt;
  }
}

}  // namespace

std::pair<std::size_t, Mask> min_hitting_set(std::size_t n, const std::vector<Mask>& sets) {
  for (std::size_t k = 0; k <= n; ++k) {
    if (auto s = hitting_set_of_size(n, k, sets)) return {k, *s};
  }
  throw ValidationError("family contains an empty set; no hitting set exists");
}

BrambleNumberResult bramble_number(const Graph& g, const Limits& limits) {
  require_small(g);
  const auto families = maximal_brambles(g, TouchingKind::kWeak, std::nullopt, limits);
  BrambleNumberResult best;
  best.family.host_n = g.order();
  for (const auto& f : families) {
    const std::vector<Mask> core = minimal_members(f.sets);
    // only an order above the current best matters
    if (best.value > 0 && hitting_set_of_size(g.order(), best.value, core)) continue;
    const auto [size, hit] = min_hitting_set(g.order(), core);
    if (size > best.value) {
      best.value = size;
      best.family = f;
      best.hitting_set = hit;
    }
  }
  return best;
}

WeightedBramble grid_cross_certificate(std::size_t k) {
  if (k == 0) throw GraphError("grid side must be at least 1");
  if (k * k > kMaskBits) throw CapacityError("cross certificate supports k <= 8");
  WeightedBramble w;
  w.family.host_n = k * k;
  w.family.kind = TouchingKind::kWeak;
  for (std::size_t i = 0; i < k; ++i) {
    Mask cross = 0;
    for (std::size_t j = 0; j < k; ++j) {
      cross |= bit(i * k + j);  // row i
      cross |= bit(j * k + i);  // column i
    }
    w.family.sets.push_back(cross);
    w.weights.emplace_back(1L, 2L);
  }
  return w;
}

// -- text form ----------------------------------------------------------------

std::string serialize_bramble(const BrambleFamily& f) {
  std::ostringstream os;
  os << "bramble " << f.host_n << ' ' << to_string(f.kind) << '\n';
  for (Mask s : f.sets) os << VertexSet{f.host_n, s}.str() << '\n';
  return os.str();
}

std::string serialize_weighted_bramble(const WeightedBramble& w) {
  std::ostringstream os;
  os << "weighted-bramble " << w.family.host_n << ' ' << to_string(w.family.kind) << '\n';
  for (std::size_t i = 0; i < w.family.sets.size(); ++i) {
    os << w.weights[i].str() << ' ' << VertexSet{w.family.host_n, w.family.sets[i]}.str() << '\n';
  }
  return os.str();
}

namespace {

std::pair<std::size_t, TouchingKind> parse_header(std::istringstream& is, const std::string& tag) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty " + tag, 0);
  std::istringstream head(line);
  std::string got;
  std::string kind;
  std::size_t n = 0;
  if (!(head >> got >> n >> kind) || got != tag) {
    throw ParseError("expected '" + tag + " <n> <weak|strong>'", 0);
  }
  return {n, parse_touching_kind(kind)};
}

}  // namespace

BrambleFamily parse_bramble(const std::string& text) {
  std::istringstream is(text);
  const auto [n, kind] = parse_header(is, "bramble");
  BrambleFamily f{n, {}, kind};
  std::string line;
  std::size_t offset = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.front() != '#') f.sets.push_back(parse_vertex_set(n, line).bits);
    offset += line.size() + 1;
  }
  return f;
}

WeightedBramble parse_weighted_bramble(const std::string& text) {
  std::istringstream is(text);
  const auto [n, kind] = parse_header(is, "weighted-bramble");
  WeightedBramble w;
  w.family = BrambleFamily{n, {}, kind};
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string weight;
    ls >> weight;
    std::string rest;
    std::getline(ls, rest);
    try {
      w.weights.push_back(Rational::parse(weight));
      w.family.sets.push_back(parse_vertex_set(n, rest).bits);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " on line " + std::to_string(lineno), 0);
    }
  }
  return w;
}

}  // namespace hadwiger
