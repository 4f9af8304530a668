#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hadwiger/rational.hpp"

namespace hadwiger {

/// maximize c.x subject to A x <= b, lo <= x <= hi, with A >= 0 entrywise
/// and b >= 0. Exact tableau simplex, Bland's rule.
struct PackingLp {
  std::vector<std::vector<Rational>> a;  // rows x cols
  std::vector<Rational> b;
  std::vector<Rational> c;
  std::vector<Rational> lo;                 // empty: all zero
  std::vector<std::optional<Rational>> hi;  // empty: unbounded
};

struct LpSolution {
  bool feasible = true;
  Rational opt;
  std::vector<Rational> x;
  /// One multiplier per row of a (then one per finite upper bound);
  /// together they certify opt: b.y + hi.z - lo-shift terms = opt.
  std::vector<Rational> dual;
  std::size_t pivots = 0;
};

LpSolution solve_packing_lp(const PackingLp& lp);

}  // namespace hadwiger
