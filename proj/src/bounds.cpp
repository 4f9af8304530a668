#include "hadwiger/bounds.hpp"

#include <algorithm>

#include "hadwiger/error.hpp"

namespace hadwiger {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    case Verdict::kUnevaluated:
      break;
  }
  return "unevaluated";
}

namespace {

Rational count(std::size_t v) { return Rational(static_cast<unsigned long>(v)); }

/// hf in [lo, hi]; the bound hf^2 <= rhs holds if hi^2 <= rhs and provably
/// fails only if lo^2 > rhs.
BoundEntry squared_entry(std::string name, const HadwigerValue& hf, Rational rhs) {
  BoundEntry e;
  e.name = std::move(name);
  e.rhs = std::move(rhs);
  const Rational lo = hf.value;
  if (hf.status == ValueStatus::kExact) {
    e.lhs = lo * lo;
    e.verdict = e.lhs <= e.rhs ? Verdict::kHolds : Verdict::kFails;
    return e;
  }
  if (lo * lo > e.rhs) {
    e.lhs = lo * lo;
    e.verdict = Verdict::kFails;
    return e;
  }
  if (!hf.upper_bound) {
    e.lhs = lo * lo;
    e.verdict = Verdict::kUnevaluated;
    return e;
  }
  e.lhs = *hf.upper_bound * *hf.upper_bound;
  e.verdict = e.lhs <= e.rhs ? Verdict::kHolds : Verdict::kUnevaluated;
  return e;
}

}  // namespace

BoundEntry check_sqrt_bound(std::size_t n, std::size_t h, const HadwigerValue& hf) {
  return squared_entry("hf^2 <= 2hn", hf, count(2 * h * n));
}

BoundEntry check_sqrt_bound(const Graph& g) {
  try {
    return check_sqrt_bound(g.order(), hadwiger_number(g).value, fractional_hadwiger(g, TouchingKind::kWeak));
  } catch (const CapacityError&) {
    return BoundEntry{"hf^2 <= 2hn", Rational(), Rational(), Verdict::kUnevaluated};
  }
}

std::vector<BoundEntry> check_edge_bound(std::size_t m, std::size_t h, const HadwigerValue& hf) {
  std::vector<BoundEntry> out;
  out.push_back(squared_entry("hf^2 <= 3m+1", hf, count(3 * m + 1)));
  const Rational pairs = count(h * (h > 0 ? h - 1 : 0) / 2);
  out.push_back(BoundEntry{"C(h,2) <= m", pairs, count(m), pairs <= count(m) ? Verdict::kHolds : Verdict::kFails});
  return out;
}

std::vector<BoundEntry> check_edge_bound(const Graph& g) {
  try {
    return check_edge_bound(g.size(), hadwiger_number(g).value, fractional_hadwiger(g, TouchingKind::kWeak));
  } catch (const CapacityError&) {
    return {BoundEntry{"hf^2 <= 3m+1", Rational(), Rational(), Verdict::kUnevaluated},
            BoundEntry{"C(h,2) <= m", Rational(), Rational(), Verdict::kUnevaluated}};
  }
}

MinorModel greedy_disjoint_extract(const Graph& g, const WeightedBramble& cert) {
  evaluate_certificate(g, cert);
  std::vector<Mask> pool;
  for (std::size_t i = 0; i < cert.family.sets.size(); ++i) {
    if (cert.weights[i].sign() > 0) pool.push_back(cert.family.sets[i]);
  }
  std::sort(pool.begin(), pool.end(), canonical_less);
  MinorModel m;
  m.host_n = g.order();
  // canonical order is size first, so the front is always a smallest member
  while (!pool.empty()) {
    const Mask pick = pool.front();
    m.branch_sets.push_back(VertexSet{g.order(), pick});
    std::erase_if(pool, [pick](Mask s) { return (s & pick) != 0; });
  }
  m.pattern = CliqueOrder{m.branch_sets.size()};
  return m;
}

std::size_t extraction_guarantee(const Rational& value, std::size_t n) {
  if (n == 0) return 0;
  return (value * value / count(2 * n)).ceil().get_ui();
}

bool epsilon_hadwiger_check(const Graph& g, const Rational& eps) {
  return count(hadwiger_number(g).value) <= eps * count(g.order());
}

BoundReport bound_report(const Graph& g, std::string graph_id, const Limits& limits) {
  BoundReport r;
  r.graph_id = std::move(graph_id);
  r.n = g.order();
  r.m = g.size();
  r.h = hadwiger_number(g).value;
  r.hf = fractional_hadwiger(g, TouchingKind::kWeak, limits);
  r.hlf = fractional_hadwiger(g, TouchingKind::kStrong, limits);
  r.entries.push_back(check_sqrt_bound(r.n, r.h, r.hf));
  for (auto& e : check_edge_bound(r.m, r.h, r.hf)) r.entries.push_back(std::move(e));
  return r;
}

}  // namespace hadwiger
