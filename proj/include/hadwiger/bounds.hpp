#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hadwiger/fractional.hpp"
#include "hadwiger/graph.hpp"
#include "hadwiger/minor.hpp"
#include "hadwiger/rational.hpp"

namespace hadwiger {

/// kUnevaluated: a value was missing, or an interval straddles the bound.
enum class Verdict { kHolds, kFails, kUnevaluated };
std::string to_string(Verdict v);

/// One inequality in squared form, lhs <= rhs. When h_f is only known as an
/// interval, lhs is the square of its upper end.
struct BoundEntry {
  std::string name;
  Rational lhs;
  Rational rhs;
  Verdict verdict = Verdict::kUnevaluated;
};

struct BoundReport {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t h = 0;
  HadwigerValue hf;
  std::optional<HadwigerValue> hlf;
  std::vector<BoundEntry> entries;
};

/// h_f^2 <= 2 h n.
BoundEntry check_sqrt_bound(std::size_t n, std::size_t h, const HadwigerValue& hf);
BoundEntry check_sqrt_bound(const Graph& g);

/// h_f^2 <= 3m + 1 and C(h, 2) <= m.
std::vector<BoundEntry> check_edge_bound(std::size_t m, std::size_t h, const HadwigerValue& hf);
std::vector<BoundEntry> check_edge_bound(const Graph& g);

/// Repeatedly keeps a smallest positive-weight member (lowest canonical on
/// ties) and drops every member meeting it. The kept sets are pairwise
/// disjoint and touching, so they form a clique-minor model, of order at
/// least ceil(value^2 / 2n) for a valid certificate.
MinorModel greedy_disjoint_extract(const Graph& g, const WeightedBramble& cert);

/// ceil(value^2 / 2n), the order the extraction is guaranteed to reach.
std::size_t extraction_guarantee(const Rational& value, std::size_t n);

/// h(G) <= eps * |G|.
bool epsilon_hadwiger_check(const Graph& g, const Rational& eps);

/// h, h_f, h'_f and all bound entries.
BoundReport bound_report(const Graph& g, std::string graph_id, const Limits& limits = {});

}  // namespace hadwiger
