#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hadwiger/bits.hpp"

namespace hadwiger {

/// Subset of the vertices of a host graph with at most 64 vertices.
struct VertexSet {
  std::size_t host_n = 0;
  Mask bits = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(popcount(bits)); }
  bool empty() const noexcept { return bits == 0; }
  bool contains(std::size_t v) const noexcept { return v < 64 && ((bits >> v) & 1U); }
  std::vector<std::size_t> members() const { return bits_of(bits); }

  /// Space separated sorted members, e.g. "0 2 3".
  std::string str() const;

  bool operator==(const VertexSet&) const = default;
};

/// Canonical order: by size, then lexicographically by sorted members.
std::strong_ordering canonical_compare(Mask a, Mask b) noexcept;

inline bool canonical_less(Mask a, Mask b) noexcept { return canonical_compare(a, b) < 0; }

/// Parses a whitespace separated member list into a set over host_n vertices.
/// Throws ParseError on junk or out-of-range members.
VertexSet parse_vertex_set(std::size_t host_n, const std::string& line);

}  // namespace hadwiger
