#include "hadwiger/width.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "hadwiger/bramble.hpp"
#include "hadwiger/error.hpp"

namespace hadwiger {

std::size_t TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w == 0 ? 0 : w - 1;
}

DecompositionCheck verify_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  const std::size_t n = g.order();
  if (td.host_n != n) return {false, "decomposition host order differs from graph order"};
  if (!g.fits_mask()) return {false, "host has more than 64 vertices"};
  const std::size_t k = td.bags.size();
  if (k == 0) return {false, "no bags"};
  if (td.tree_edges.size() + 1 != k) return {false, "tree needs exactly bags-1 edges"};
  std::vector<std::vector<std::size_t>> adj(k);
  for (const auto& [a, b] : td.tree_edges) {
    if (a >= k || b >= k || a == b) return {false, "tree edge " + std::to_string(a) + "-" + std::to_string(b) + " invalid"};
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // with k-1 edges, connected means tree
  std::vector<bool> seen(k, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != k) return {false, "bag tree is disconnected"};

  Mask covered = 0;
  for (const auto& b : td.bags) covered |= b.bits;
  if (covered != full_mask(n)) {
    const Mask missing = full_mask(n) & ~covered;
    return {false, "vertex " + std::to_string(lowest_bit(missing)) + " in no bag"};
  }
  for (const auto& [u, v] : g.edges()) {
    const Mask e = bit(u) | bit(v);
    const bool inside = std::any_of(td.bags.begin(), td.bags.end(), [e](const VertexSet& b) { return (b.bits & e) == e; });
    if (!inside) return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) + " in no bag"};
  }
  for (std::size_t v = 0; v < n; ++v) {
    // bags holding v must induce a connected subtree
    std::vector<bool> holds(k);
    std::size_t first = k;
    std::size_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      holds[i] = td.bags[i].contains(v);
      if (holds[i]) {
        ++total;
        if (first == k) first = i;
      }
    }
    std::vector<bool> mark(k, false);
    std::vector<std::size_t> st{first};
    mark[first] = true;
    std::size_t got = 1;
    while (!st.empty()) {
      const std::size_t x = st.back();
      st.pop_back();
      for (std::size_t y : adj[x]) {
        if (holds[y] && !mark[y]) {
          mark[y] = true;
          ++got;
          st.push_back(y);
        }
      }
    }
    if (got != total) return {false, "bags containing vertex " + std::to_string(v) + " are not a subtree"};
  }
  return {};
}

// -- treewidth ------------------------------------------------------------------

namespace {

/// Vertices outside s + {v} reachable from v through s: the neighbourhood of
/// v once s has been eliminated.
Mask eliminated_neighbourhood(const Graph& g, Mask s, std::size_t v) {
  Mask seen = bit(v);
  Mask frontier = bit(v);
  Mask out = 0;
  while (frontier != 0) {
    Mask next = 0;
    for_each_bit(frontier, [&](std::size_t x) { next |= g.neighbors(static_cast<Vertex>(x)); });
    next &= ~seen;
    seen |= next;
    out |= next & ~s;
    frontier = next & s;
  }
  return out;
}

TreeDecomposition from_elimination_order(const Graph& g, const std::vector<std::size_t>& order) {
  const std::size_t n = g.order();
  TreeDecomposition td;
  td.host_n = n;
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  Mask eliminated = 0;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = order[i];
    const Mask q = eliminated_neighbourhood(g, eliminated, v);
    td.bags.push_back(VertexSet{n, q | bit(v)});
    if (q == 0) {
      roots.push_back(i);
    } else {
      std::size_t parent = n;
      for_each_bit(q, [&](std::size_t u) { parent = std::min(parent, position[u]); });
      td.tree_edges.emplace_back(i, parent);
    }
    eliminated |= bit(v);
  }
  for (std::size_t i = 1; i < roots.size(); ++i) td.tree_edges.emplace_back(roots[i - 1], roots[i]);
  return td;
}

}  // namespace

TreewidthResult treewidth(const Graph& g, std::size_t cap) {
  const std::size_t n = g.order();
  if (n > cap) {
    throw CapacityError("treewidth supports at most " + std::to_string(cap) + " vertices, got " + std::to_string(n));
  }
  const std::size_t states = std::size_t{1} << n;
  constexpr std::uint8_t kUnset = std::numeric_limits<std::uint8_t>::max();
  // tw[s]: best width for eliminating s first; choice[s]: last vertex of s
  std::vector<std::uint8_t> tw(states, kUnset);
  std::vector<std::uint8_t> choice(states, 0);
  tw[0] = 0;
  for (Mask s = 1; s < states; ++s) {
    std::uint8_t best = kUnset;
    std::uint8_t arg = 0;
    for_each_bit(s, [&](std::size_t v) {
      const Mask rest = s & ~bit(v);
      const auto q = static_cast<std::uint8_t>(popcount(eliminated_neighbourhood(g, rest, v)));
      const std::uint8_t w = std::max(tw[rest], q);
      if (w < best) {
        best = w;
        arg = static_cast<std::uint8_t>(v);
      }
    });
    tw[s] = best;
    choice[s] = arg;
  }
  std::vector<std::size_t> order(n);
  Mask s = full_mask(n);
  for (std::size_t i = n; i-- > 0;) {
    order[i] = choice[s];
    s &= ~bit(choice[s]);
  }
  TreewidthResult r;
  r.value = tw[full_mask(n)];
  r.certificate = from_elimination_order(g, order);
  return r;
}

// -- separation number ----------------------------------------------------------

namespace {

std::vector<Mask> components(const Graph& g, Mask r) {
  std::vector<Mask> out;
  while (r != 0) {
    const Mask c = reach_within(g, bit(lowest_bit(r)), r);
    out.push_back(c);
    r &= ~c;
  }
  return out;
}

/// Splits the components into two sides of at most limit vertices each.
std::optional<std::pair<Mask, Mask>> split(const std::vector<Mask>& comps, std::size_t limit) {
  std::size_t total = 0;
  for (Mask c : comps) total += static_cast<std::size_t>(popcount(c));
  // reach[s]: index of the component that first made sum s reachable
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> via(total + 1, kNone);
  std::vector<std::size_t> from(total + 1, 0);
  std::vector<bool> reach(total + 1, false);
  reach[0] = true;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto sz = static_cast<std::size_t>(popcount(comps[i]));
    for (std::size_t s = total; s >= sz && s > 0; --s) {
      if (!reach[s] && reach[s - sz]) {
        reach[s] = true;
        via[s] = i;
        from[s] = s - sz;
      }
      if (s == sz) break;
    }
  }
  for (std::size_t s = 0; s <= total; ++s) {
    if (!reach[s] || s > limit || total - s > limit) continue;
    Mask side = 0;
    for (std::size_t x = s; x != 0; x = from[x]) side |= comps[via[x]];
    Mask all = 0;
    for (Mask c : comps) all |= c;
    return std::make_pair(side, all & ~side);
  }
  return std::nullopt;
}

}  // namespace

std::pair<std::size_t, SeparatorWitness> min_separator(const Graph& g, Mask u) {
  const std::size_t size = static_cast<std::size_t>(popcount(u));
  const std::size_t limit = 2 * size / 3;
  std::size_t best = size;
  SeparatorWitness w{u, 0, 0};
  // V0 = u always works
  for (Mask v0 = 0;; v0 = (v0 - u) & u) {
    const auto k = static_cast<std::size_t>(popcount(v0));
    if (k < best) {
      if (auto sides = split(components(g, u & ~v0), limit)) {
        best = k;
        w = SeparatorWitness{v0, sides->first, sides->second};
      }
    }
    if (v0 == u) break;
  }
  return {best, w};
}

namespace {

SeparationResult separation_impl(const Graph& g, std::size_t cap, bool parallel) {
  const std::size_t n = g.order();
  if (n > cap) {
    throw CapacityError("separation number supports at most " + std::to_string(cap) + " vertices, got " +
                        std::to_string(n));
  }
  const Mask last = full_mask(n);
  std::vector<std::size_t> value(last + 1, 0);
  std::vector<SeparatorWitness> witness(last + 1);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (Mask u = 1; u <= last; ++u) {
    auto [k, w] = min_separator(g, u);
    value[u] = k;
    witness[u] = w;
  }
  SeparationResult r;
  for (Mask u = 1; u <= last; ++u) {
    if (r.subgraph == 0 || value[u] > r.value) {
      r.value = value[u];
      r.subgraph = u;
      r.witness = witness[u];
    }
  }
  return r;
}

}  // namespace

SeparationResult separation_number(const Graph& g, std::size_t cap) { return separation_impl(g, cap, true); }

SeparationResult separation_number_serial(const Graph& g, std::size_t cap) { return separation_impl(g, cap, false); }

// -- grid minors ----------------------------------------------------------------

GridMinorResult max_grid_minor(const Graph& g) {
  GridMinorResult r;
  r.value = 1;
  r.certificate.host_n = g.order();
  r.certificate.branch_sets = {VertexSet{g.order(), bit(0)}};
  r.certificate.pattern = PatternGraph{grid_graph(1)};
  for (std::size_t k = 2; k * k <= g.order() && 2 * k * (k - 1) <= g.size(); ++k) {
    auto m = has_minor(g, grid_graph(k));
    if (!m) break;
    r.value = k;
    r.certificate = std::move(*m);
  }
  return r;
}

// -- comparability ----------------------------------------------------------------

std::vector<ParamReport> comparability_report(const std::vector<std::pair<std::string, Graph>>& graphs) {
  std::vector<ParamReport> out;
  for (const auto& [id, g] : graphs) {
    ParamReport p;
    p.graph_id = id;
    p.n = g.order();
    p.m = g.size();
    p.h = hadwiger_number(g).value;
    p.hf = fractional_hadwiger(g, TouchingKind::kWeak).value;
    p.tw = treewidth(g);
    p.bramble_number = bramble_number(g).value;
    p.sep = separation_number(g);
    p.grid = max_grid_minor(g);
    p.treewidth_at_least_grid = p.tw.value >= p.grid.value;
    p.bramble_is_tw_plus_one = p.bramble_number == p.tw.value + 1;
    out.push_back(std::move(p));
  }
  return out;
}

std::string comovement_table(const std::vector<ParamReport>& reports) {
  std::vector<const ParamReport*> rows;
  for (const auto& r : reports) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const ParamReport* a, const ParamReport* b) {
    if (a->tw.value != b->tw.value) return a->tw.value < b->tw.value;
    return a->graph_id < b->graph_id;
  });
  std::ostringstream os;
  os << "id\tn\tm\th\thf\ttw\tbn\tsep\tgrid\n";
  for (const auto* r : rows) {
    os << r->graph_id << '\t' << r->n << '\t' << r->m << '\t' << r->h << '\t' << r->hf.str() << '\t' << r->tw.value
       << '\t' << r->bramble_number << '\t' << r->sep.value << '\t' << r->grid.value << '\n';
  }
  return os.str();
}

// -- text form ----------------------------------------------------------------------

std::string serialize_tree_decomposition(const TreeDecomposition& td) {
  std::ostringstream os;
  os << "treedecomposition " << td.host_n << ' ' << td.bags.size() << '\n';
  for (const auto& b : td.bags) os << "b " << b.str() << '\n';
  for (const auto& [a, b] : td.tree_edges) os << "e " << a << ' ' << b << '\n';
  return os.str();
}

TreeDecomposition parse_tree_decomposition(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty tree decomposition", 0);
  std::istringstream head(line);
  std::string tag;
  std::size_t n = 0;
  std::size_t count = 0;
  if (!(head >> tag >> n >> count) || tag != "treedecomposition") {
    throw ParseError("expected 'treedecomposition <n> <bags>'", 0);
  }
  TreeDecomposition td;
  td.host_n = n;
  std::size_t offset = line.size() + 1;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') {
      offset += line.size() + 1;
      continue;
    }
    if (line.rfind("b", 0) == 0) {
      td.bags.push_back(parse_vertex_set(n, line.substr(1)));
    } else if (line.rfind("e ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      std::size_t a = 0;
      std::size_t b = 0;
      if (!(ls >> a >> b)) throw ParseError("bad tree edge line", offset);
      td.tree_edges.emplace_back(a, b);
    } else {
      throw ParseError("expected a 'b' or 'e' line", offset);
    }
    offset += line.size() + 1;
  }
  if (td.bags.size() != count) throw ParseError("bag count differs from header", 0);
  return td;
}

}  // namespace hadwiger
