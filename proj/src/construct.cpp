#include "hadwiger/construct.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hadwiger/error.hpp"
#include "hadwiger/minor.hpp"

namespace hadwiger {

// -- canonical form ---------------------------------------------------------------

namespace {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

void require_canonical_size(std::size_t n) {
  if (n > kCanonicalCap) {
    throw CapacityError("canonical forms support at most " + std::to_string(kCanonicalCap) + " vertices");
  }
}

/// Key of g relabelled so that vertex v sits at position label[v].
AdjacencyKey key_under(const Graph& g, const std::vector<Vertex>& label) {
  const std::size_t n = g.order();
  const std::size_t pairs = pair_count(n);
  AdjacencyKey key = 0;
  for (const auto& [u, v] : g.edges()) {
    const std::size_t i = std::min(label[u], label[v]);
    const std::size_t j = std::max(label[u], label[v]);
    key |= AdjacencyKey{1} << (pairs - 1 - (j * (j - 1) / 2 + i));
  }
  return key;
}

/// Ranks colours by (old colour, sorted neighbour colours) until stable.
std::vector<int> refine(const Graph& g, std::vector<int> colour) {
  const std::size_t n = g.order();
  std::size_t classes = std::set<int>(colour.begin(), colour.end()).size();
  while (true) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (Vertex u : g.neighbor_list(static_cast<Vertex>(v))) sig[v].second.push_back(colour[u]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::vector<std::pair<int, std::vector<int>>> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = 0; v < n; ++v) {
      colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    }
    if (distinct.size() == classes) return colour;
    classes = distinct.size();
  }
}

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g) {}

  CanonicalForm run() {
    search(refine(g_, std::vector<int>(g_.order(), 0)));
    return CanonicalForm{best_key_, best_label_, relabel(g_, best_label_)};
  }

 private:
  bool twins(std::size_t u, std::size_t v) const {
    const Mask nu = g_.neighbors(static_cast<Vertex>(u)) & ~bit(v);
    const Mask nv = g_.neighbors(static_cast<Vertex>(v)) & ~bit(u);
    return nu == nv;
  }

  void search(const std::vector<int>& colour) {
    const std::size_t n = g_.order();
    std::vector<std::size_t> cell_size(n, 0);
    for (int c : colour) ++cell_size[static_cast<std::size_t>(c)];
    // first smallest non-singleton cell
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (cell_size[c] >= 2 && (target == n || cell_size[c] < cell_size[target])) target = c;
    }
    if (target == n) {
      std::vector<Vertex> label(n);
      for (std::size_t v = 0; v < n; ++v) label[v] = static_cast<Vertex>(colour[v]);
      const AdjacencyKey k = key_under(g_, label);
      if (!have_ || k < best_key_) {
        best_key_ = k;
        best_label_ = std::move(label);
        have_ = true;
      }
      return;
    }
    std::vector<std::size_t> tried;
    for (std::size_t v = 0; v < n; ++v) {
      if (static_cast<std::size_t>(colour[v]) != target) continue;
      // swapping twins of one cell is an automorphism fixing the colouring
      if (std::any_of(tried.begin(), tried.end(), [&](std::size_t u) { return twins(u, v); })) continue;
      tried.push_back(v);
      std::vector<int> next(n);
      for (std::size_t u = 0; u < n; ++u) next[u] = 2 * colour[u] + ((colour[u] == colour[v] && u != v) ? 1 : 0);
      search(refine(g_, std::move(next)));
    }
  }

  const Graph& g_;
  bool have_ = false;
  AdjacencyKey best_key_ = 0;
  std::vector<Vertex> best_label_;
};

}  // namespace

AdjacencyKey adjacency_key(const Graph& g) {
  require_canonical_size(g.order());
  std::vector<Vertex> id(g.order());
  for (std::size_t v = 0; v < id.size(); ++v) id[v] = static_cast<Vertex>(v);
  return key_under(g, id);
}

Graph graph_from_key(std::size_t n, AdjacencyKey key) {
  require_canonical_size(n);
  GraphBuilder b(n);
  const std::size_t pairs = pair_count(n);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if ((key >> (pairs - 1 - (j * (j - 1) / 2 + i))) & 1U) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return std::move(b).build();
}

CanonicalForm canonical_form(const Graph& g) {
  require_canonical_size(g.order());
  return Canonizer(g).run();
}

std::vector<Graph> enumerate_classes(std::size_t n) {
  if (n == 0) throw GraphError("graphs need at least one vertex");
  require_canonical_size(n);
  std::vector<AdjacencyKey> level{0};  // K1
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<std::vector<AdjacencyKey>> found(level.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (Mask nb = 0; nb < (Mask{1} << (k - 1)); ++nb) {
        // the new vertex's pairs (i, k-1) are the last k-1 key bits
        AdjacencyKey key = level[i] << (k - 1);
        for (std::size_t u = 0; u + 1 < k; ++u) {
          if ((nb >> u) & 1U) key |= AdjacencyKey{1} << (k - 2 - u);
        }
        found[i].push_back(canonical_form(graph_from_key(k, key)).key);
      }
    }
    std::set<AdjacencyKey> next;
    for (const auto& f : found) next.insert(f.begin(), f.end());
    level.assign(next.begin(), next.end());
  }
  std::vector<Graph> out;
  out.reserve(level.size());
  for (AdjacencyKey key : level) out.push_back(graph_from_key(n, key));
  return out;
}

// -- bounded-breadth bound ----------------------------------------------------------

Rational hf_upper_from_bounded(std::size_t n, std::size_t d, std::size_t s) {
  if (d == 0) throw RangeError("breadth must be at least 1");
  const Rational dd(static_cast<unsigned long>(d));
  return Rational(static_cast<unsigned long>(n)) / dd + dd * Rational(static_cast<unsigned long>(s));
}

Rational hf_upper_from_bounded(const Graph& g, std::size_t d) {
  if (d == 0) throw RangeError("breadth must be at least 1");
  return hf_upper_from_bounded(g.order(), d, max_clique_minor_bounded(g, Breadth{d}).value);
}

// -- witness search -----------------------------------------------------------------

std::size_t density_threshold(std::size_t n0, const Rational& p) {
  return (p * Rational(static_cast<unsigned long>(pair_count(n0)))).ceil().get_ui();
}

std::optional<BoundedEvidence> best_bounded_evidence(const Graph& g, const WitnessSpec& spec) {
  std::optional<BoundedEvidence> best;
  const std::size_t lo = spec.d ? *spec.d : 1;
  const std::size_t hi = spec.d ? *spec.d : g.order();
  for (std::size_t d = lo; d <= hi; ++d) {
    const std::size_t s = max_clique_minor_bounded(g, Breadth{d}).value;
    if (spec.s && s >= *spec.s) continue;
    BoundedEvidence e{d, s, hf_upper_from_bounded(g.order(), d, s)};
    if (!best || e.bound < best->bound) best = std::move(e);
  }
  return best;
}

namespace {

void validate_spec(const WitnessSpec& spec) {
  if (spec.n0 == 0) throw RangeError("n0 must be at least 1");
  if (spec.s && *spec.s == 0) throw RangeError("s must be at least 1");
  if (spec.d && *spec.d == 0) throw RangeError("d must be at least 1");
  if (const auto* m = std::get_if<MaderMode>(&spec.mode)) {
    if (m->p <= Rational(0) || m->p >= Rational(1)) throw RangeError("mader mode needs 0 < p < 1");
  }
  if (std::holds_alternative<ExhaustiveSearch>(spec.search) && spec.n0 > 8) {
    throw CapacityError("exhaustive witness search supports n0 <= 8");
  }
}

struct Candidate {
  std::optional<BoundedEvidence> own;
  std::optional<BoundedEvidence> comp;
  bool qualifies = false;
  Rational objective;
};

Candidate evaluate(const Graph& g, const WitnessSpec& spec) {
  Candidate c;
  const bool thomason = std::holds_alternative<ThomasonMode>(spec.mode);
  if (!thomason) {
    const auto& p = std::get<MaderMode>(spec.mode).p;
    if (g.size() < density_threshold(g.order(), p)) return c;
  }
  c.own = best_bounded_evidence(g, spec);
  if (!c.own) return c;
  c.objective = c.own->bound;
  if (thomason) {
    c.comp = best_bounded_evidence(complement(g), spec);
    if (!c.comp) return c;
    c.objective = std::max(c.objective, c.comp->bound);
  }
  c.qualifies = true;
  return c;
}

}  // namespace

Witness search_witness(const WitnessSpec& spec) {
  validate_spec(spec);
  const bool thomason = std::holds_alternative<ThomasonMode>(spec.mode);
  std::vector<Graph> pool;
  if (std::holds_alternative<ExhaustiveSearch>(spec.search)) {
    pool = enumerate_classes(spec.n0);
  } else {
    const auto& smp = std::get<SampledSearch>(spec.search);
    const Rational p = thomason ? Rational(1L, 2L) : std::get<MaderMode>(spec.mode).p;
    for (std::size_t i = 0; i < smp.count; ++i) pool.push_back(random_gnp(spec.n0, p, smp.seed + i));
  }

  std::vector<Candidate> cands(pool.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < pool.size(); ++i) cands[i] = evaluate(pool[i], spec);

  // first strict minimum in pool order (canonical order when exhaustive)
  std::size_t best = pool.size();
  std::size_t qualifying = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!cands[i].qualifies) continue;
    ++qualifying;
    if (best == pool.size() || cands[i].objective < cands[best].objective) best = i;
  }
  if (best == pool.size()) {
    throw InfeasibleError("no graph on " + std::to_string(spec.n0) + " vertices meets the witness constraints (" +
                          std::to_string(pool.size()) + " examined)");
  }
  Witness w{pool[best], *cands[best].own, cands[best].comp, cands[best].objective,
            cands[best].objective / Rational(static_cast<unsigned long>(spec.n0)), pool.size(), qualifying};
  return w;
}

// -- emission -----------------------------------------------------------------------

ConstructionHandle::ConstructionHandle(Graph base, std::uint64_t t, Rational hf_upper)
    : base_(std::move(base)), t_(t), n_(0), hf_upper_(std::move(hf_upper)) {
  if (t == 0) throw RangeError("t must be at least 1");
  if (t > UINT64_MAX / base_.order()) throw RangeError("blow-up order overflows 64 bits");
  n_ = base_.order() * t;
}

Rational ConstructionHandle::hadwiger_bound() const { return Rational(static_cast<unsigned long>(t_)) * hf_upper_; }

Rational ConstructionHandle::epsilon() const {
  return hf_upper_ / Rational(static_cast<unsigned long>(base_.order()));
}

bool ConstructionHandle::adjacent(std::uint64_t u, std::uint64_t v) const {
  return blowup_adjacency_oracle(base_, t_, blowup_vertex(base_, t_, u), blowup_vertex(base_, t_, v), true);
}

void ConstructionHandle::stream_edges(const std::function<void(std::uint64_t, std::uint64_t)>& sink,
                                      std::size_t cap) const {
  if (n_ > cap) {
    throw CapacityError("edge streaming supports at most " + std::to_string(cap) + " vertices, blow-up has " +
                        std::to_string(n_));
  }
  for (std::uint64_t u = 0; u < n_; ++u) {
    for (std::uint64_t v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) sink(u, v);
    }
  }
}

Graph ConstructionHandle::materialize(std::size_t cap) const { return blowup_complete(base_, t_, cap); }

ConstructionHandle emit_construction(const Witness& w, std::uint64_t t) {
  return ConstructionHandle(w.graph, t, w.hf_upper);
}

}  // namespace hadwiger
