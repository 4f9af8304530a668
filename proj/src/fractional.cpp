#include "hadwiger/fractional.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "hadwiger/error.hpp"
#include "hadwiger/lp.hpp"

namespace hadwiger {

std::string to_string(ValueStatus s) { return s == ValueStatus::kExact ? "exact" : "lower-bound"; }

namespace {

/// Rows for the vertices met by some set; others carry no constraint.
PackingLp packing_lp(std::size_t n, const std::vector<Mask>& sets, const Rational& capacity,
                     std::vector<std::size_t>* row_vertex) {
  Mask used = 0;
  for (Mask s : sets) used |= s;
  PackingLp lp;
  lp.c.assign(sets.size(), Rational(1));
  for (std::size_t v = 0; v < n; ++v) {
    if ((used & bit(v)) == 0) continue;
    std::vector<Rational> row(sets.size());
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if ((sets[j] & bit(v)) != 0) row[j] = Rational(1);
    }
    lp.a.push_back(std::move(row));
    lp.b.push_back(capacity);
    if (row_vertex) row_vertex->push_back(v);
  }
  return lp;
}

}  // namespace

WeightSolution lp_max_weight(std::size_t n, const std::vector<Mask>& sets) {
  for (Mask s : sets) {
    if (s == 0) throw Error("lp_max_weight: empty set");
    if (n < kMaskBits && (s >> n) != 0) throw RangeError("lp_max_weight: set outside host");
  }
  std::vector<std::size_t> rows;
  const LpSolution sol = solve_packing_lp(packing_lp(n, sets, Rational(1), &rows));
  WeightSolution out{sol.opt, sol.x, std::vector<Rational>(n)};
  for (std::size_t i = 0; i < rows.size(); ++i) out.dual[rows[i]] = sol.dual[i];
  return out;
}

// -- h_f ----------------------------------------------------------------------

namespace {

/// Distinct inclusion-minimal cores of the maximal families, first
/// occurrence order. A weighting of a family moves onto its minimal members
/// without raising any load, so the cores carry the same optimum.
std::vector<std::vector<Mask>> distinct_cores(const std::vector<BrambleFamily>& families) {
  std::vector<std::vector<Mask>> cores;
  std::map<std::vector<Mask>, bool> seen;
  for (const auto& f : families) {
    std::vector<Mask> core = minimal_members(f.sets);
    if (seen.emplace(core, true).second) cores.push_back(std::move(core));
  }
  return cores;
}

WeightedBramble positive_part(std::size_t n, TouchingKind kind, const std::vector<Mask>& sets,
                              const std::vector<Rational>& weights, const Rational& scale) {
  WeightedBramble w;
  w.family.host_n = n;
  w.family.kind = kind;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (weights[j].sign() > 0) {
      w.family.sets.push_back(sets[j]);
      w.weights.push_back(weights[j] / scale);
    }
  }
  return w;
}

Rational edge_upper_bound(const Graph& g) {
  mpz_class root;
  const mpz_class target = 3 * mpz_class(static_cast<unsigned long>(g.size())) + 1;
  mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());
  if (root * root < target) root += 1;
  return std::min(Rational(static_cast<unsigned long>(g.order())), from_mpz(root));
}

/// Certificate from a greedy clique minor: branch sets at weight 1 (weak),
/// or unions of cyclically consecutive branch sets at weight 1/2 (strong).
HadwigerValue greedy_lower_bound(const Graph& g, TouchingKind kind) {
  HadwigerValue v;
  v.status = ValueStatus::kLowerBound;
  v.upper_bound = edge_upper_bound(g);
  v.certificate.family.host_n = g.order();
  v.certificate.family.kind = kind;
  const MinorModel m = greedy_clique_minor(g);
  std::vector<Mask> sets;
  std::vector<Rational> weights;
  const std::size_t t = m.order();
  if (kind == TouchingKind::kWeak) {
    for (const auto& b : m.branch_sets) {
      sets.push_back(b.bits);
      weights.emplace_back(1L);
    }
  } else if (t == 2) {
    sets.push_back(m.branch_sets[0].bits | m.branch_sets[1].bits);
    weights.emplace_back(1L);
  } else if (t >= 3) {
    for (std::size_t i = 0; i < t; ++i) {
      sets.push_back(m.branch_sets[i].bits | m.branch_sets[(i + 1) % t].bits);
      weights.emplace_back(1L, 2L);
    }
  }
  std::vector<std::size_t> idx(sets.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return canonical_less(sets[a], sets[b]); });
  for (std::size_t i : idx) {
    v.certificate.family.sets.push_back(sets[i]);
    v.certificate.weights.push_back(weights[i]);
  }
  v.value = v.certificate.value();
  return v;
}

HadwigerValue fractional_impl(const Graph& g, TouchingKind kind, const Limits& limits, bool parallel) {
  if (!g.fits_mask()) throw CapacityError("fractional Hadwiger number supports at most 64 vertices");
  std::vector<BrambleFamily> families;
  try {
    families = parallel ? maximal_brambles(g, kind, std::nullopt, limits)
                        : maximal_brambles_serial(g, kind, std::nullopt, limits);
  } catch (const CapacityError&) {
    return greedy_lower_bound(g, kind);
  }
  HadwigerValue out;
  out.certificate.family.host_n = g.order();
  out.certificate.family.kind = kind;
  out.dual_certificate = std::vector<Rational>(g.order());
  if (families.empty()) return out;  // strong kind without edges

  const auto cores = distinct_cores(families);
  std::vector<WeightSolution> sols(cores.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < cores.size(); ++i) sols[i] = lp_max_weight(g.order(), cores[i]);

  std::size_t best = 0;
  for (std::size_t i = 1; i < sols.size(); ++i) {
    if (sols[i].opt > sols[best].opt) best = i;
  }
  out.value = sols[best].opt;
  out.certificate = positive_part(g.order(), kind, cores[best], sols[best].weights, Rational(1));
  out.dual_certificate = sols[best].dual;
  return out;
}

}  // namespace

HadwigerValue fractional_hadwiger(const Graph& g, TouchingKind kind, const Limits& limits) {
  return fractional_impl(g, kind, limits, true);
}

HadwigerValue fractional_hadwiger_serial(const Graph& g, TouchingKind kind, const Limits& limits) {
  return fractional_impl(g, kind, limits, false);
}

// -- h_r ----------------------------------------------------------------------

BlowupValue r_integral_hadwiger_via_blowup(const Graph& g, std::size_t r, TouchingKind kind) {
  if (r == 0) throw RangeError("r must be at least 1");
  const Graph b = kind == TouchingKind::kWeak ? blowup_complete(g, r) : blowup_empty(g, r);
  HadwigerResult h = hadwiger_number(b);
  return {Rational(static_cast<unsigned long>(h.value)) / Rational(static_cast<unsigned long>(r)),
          std::move(h.certificate)};
}

WeightedBramble project_blowup_model(const Graph& g, std::size_t r, const MinorModel& model) {
  if (model.host_n != g.order() * r) throw ValidationError("model host does not match the blow-up order");
  std::map<Mask, unsigned long> count;
  for (const auto& bs : model.branch_sets) {
    Mask proj = 0;
    for_each_bit(bs.bits, [&](std::size_t id) { proj |= bit(id / r); });
    ++count[proj];
  }
  std::vector<Mask> sets;
  for (const auto& [s, c] : count) sets.push_back(s);
  std::sort(sets.begin(), sets.end(), canonical_less);
  WeightedBramble w;
  w.family.host_n = g.order();
  w.family.kind = TouchingKind::kWeak;
  for (Mask s : sets) {
    w.family.sets.push_back(s);
    w.weights.push_back(Rational(count[s]) / Rational(static_cast<unsigned long>(r)));
  }
  return w;
}

namespace {

struct BbNode {
  LpSolution sol;
  std::vector<Rational> lo;
  std::vector<std::optional<Rational>> hi;
  std::size_t seq = 0;
};

struct BbOrder {
  bool operator()(const BbNode& a, const BbNode& b) const {
    if (a.sol.opt != b.sol.opt) return a.sol.opt < b.sol.opt;
    return a.seq > b.seq;
  }
};

/// Integer packing over one core; improves (best, best_x) when a strictly
/// larger integral total exists.
void branch_and_bound(const PackingLp& base, mpz_class& best, std::vector<Rational>& best_x, bool& improved) {
  std::priority_queue<BbNode, std::vector<BbNode>, BbOrder> open;
  std::size_t seq = 0;
  auto push = [&](std::vector<Rational> lo, std::vector<std::optional<Rational>> hi) {
    PackingLp lp = base;
    lp.lo = lo;
    lp.hi = hi;
    LpSolution sol = solve_packing_lp(lp);
    if (!sol.feasible || sol.opt.floor() <= best) return;
    open.push(BbNode{std::move(sol), std::move(lo), std::move(hi), seq++});
  };
  const std::size_t k = base.c.size();
  push(std::vector<Rational>(k), std::vector<std::optional<Rational>>(k));
  while (!open.empty()) {
    BbNode node = open.top();
    open.pop();
    if (node.sol.opt.floor() <= best) continue;
    std::size_t frac = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (!node.sol.x[j].is_integer()) {
        frac = j;
        break;
      }
    }
    if (frac == k) {
      best = node.sol.opt.floor();
      best_x = node.sol.x;
      improved = true;
      continue;
    }
    auto down = node.hi;
    down[frac] = from_mpz(node.sol.x[frac].floor());
    push(node.lo, std::move(down));
    auto up = node.lo;
    up[frac] = from_mpz(node.sol.x[frac].ceil());
    push(std::move(up), node.hi);
  }
}

}  // namespace

IntegralValue r_integral_hadwiger_via_ilp(const Graph& g, std::size_t r, TouchingKind kind, const Limits& limits) {
  if (r == 0) throw RangeError("r must be at least 1");
  if (!g.fits_mask()) throw CapacityError("fractional Hadwiger number supports at most 64 vertices");
  const auto families = maximal_brambles(g, kind, std::nullopt, limits);
  IntegralValue out;
  out.certificate.family.host_n = g.order();
  out.certificate.family.kind = kind;
  if (families.empty()) return out;

  const auto cores = distinct_cores(families);
  const Rational rr(static_cast<unsigned long>(r));
  std::vector<Rational> relax(cores.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cores.size(); ++i) relax[i] = lp_max_weight(g.order(), cores[i]).opt * rr;
  // strongest relaxations first so later cores prune at the root
  std::vector<std::size_t> order(cores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return relax[a] > relax[b]; });

  mpz_class best = -1;
  std::size_t best_core = cores.size();
  std::vector<Rational> best_x;
  for (std::size_t i : order) {
    if (relax[i].floor() <= best) continue;
    bool improved = false;
    branch_and_bound(packing_lp(g.order(), cores[i], rr, nullptr), best, best_x, improved);
    if (improved) best_core = i;
  }
  out.value = from_mpz(best) / rr;
  out.certificate = positive_part(g.order(), kind, cores[best_core], best_x, rr);
  return out;
}

Rational evaluate_certificate(const Graph& g, const WeightedBramble& cert) {
  const auto& f = cert.family;
  if (f.host_n != g.order()) {
    throw ValidationError("certificate host order " + std::to_string(f.host_n) + " differs from graph order " +
                          std::to_string(g.order()));
  }
  if (!g.fits_mask()) throw CapacityError("certificates support at most 64 vertices");
  if (cert.weights.size() != f.sets.size()) throw ValidationError("weight count differs from set count");
  for (std::size_t i = 0; i < cert.weights.size(); ++i) {
    if (cert.weights[i].sign() < 0) {
      throw ValidationError("negative weight " + cert.weights[i].str() + " on set " + std::to_string(i));
    }
  }
  for (std::size_t v = 0; v < g.order(); ++v) {
    Rational load;
    for (std::size_t i = 0; i < f.sets.size(); ++i) {
      if ((f.sets[i] & bit(v)) != 0) load += cert.weights[i];
    }
    if (load > Rational(1)) throw ValidationError("vertex " + std::to_string(v) + " overloaded: load " + load.str());
  }
  const BrambleCheck check = validate_bramble(g, f.sets, f.kind);
  if (!check) throw ValidationError(check.message);
  return cert.value();
}

}  // namespace hadwiger
