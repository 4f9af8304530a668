#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hadwiger/bramble.hpp"
#include "hadwiger/graph.hpp"
#include "hadwiger/minor.hpp"
#include "hadwiger/rational.hpp"

namespace hadwiger {

struct WeightSolution {
  Rational opt;
  std::vector<Rational> weights;  // one per input set
  std::vector<Rational> dual;     // one per vertex: a fractional cover of value opt
};

/// maximize the total weight of the given sets under per-vertex load <= 1.
WeightSolution lp_max_weight(std::size_t n, const std::vector<Mask>& sets);

enum class ValueStatus { kExact, kLowerBound };
std::string to_string(ValueStatus s);

struct HadwigerValue {
  Rational value;
  ValueStatus status = ValueStatus::kExact;
  WeightedBramble certificate;  // positive-weight sets only
  std::optional<std::vector<Rational>> dual_certificate;
  /// Set when status is lower-bound: min(n, ceil(sqrt(3m+1))).
  std::optional<Rational> upper_bound;
};

/// h_f (weak) or h'_f (strong). Falls back to a lower bound with a valid
/// certificate when an enumeration cap is hit. The per-family LPs run in
/// parallel; the reduction keeps the first optimal family.
HadwigerValue fractional_hadwiger(const Graph& g, TouchingKind kind, const Limits& limits = {});
HadwigerValue fractional_hadwiger_serial(const Graph& g, TouchingKind kind, const Limits& limits = {});

struct BlowupValue {
  Rational value;
  MinorModel certificate;  // clique minor in the blow-up
};

/// h(G[r]) / r (weak) or h(G(r)) / r (strong), by exact minor search on the
/// materialized blow-up.
BlowupValue r_integral_hadwiger_via_blowup(const Graph& g, std::size_t r, TouchingKind kind = TouchingKind::kWeak);

/// Projects a clique-minor model of G[r] to a weighted bramble of G with
/// weights in multiples of 1/r (equal projections are merged).
WeightedBramble project_blowup_model(const Graph& g, std::size_t r, const MinorModel& model);

struct IntegralValue {
  Rational value;
  WeightedBramble certificate;
};

/// h_r (weak) or h'_r (strong): weights restricted to multiples of 1/r,
/// solved by LP branch-and-bound over maximal brambles.
IntegralValue r_integral_hadwiger_via_ilp(const Graph& g, std::size_t r, TouchingKind kind,
                                          const Limits& limits = {});

/// Load check plus validate_bramble; throws ValidationError naming the
/// overloaded vertex, negative weight, bad set or non-touching pair.
Rational evaluate_certificate(const Graph& g, const WeightedBramble& cert);

}  // namespace hadwiger
