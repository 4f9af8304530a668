#include "hadwiger/vertex_set.hpp"

#include <sstream>

#include "hadwiger/error.hpp"

namespace hadwiger {

std::string VertexSet::str() const {
  std::string out;
  for_each_bit(bits, [&](std::size_t v) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(v);
  });
  return out;
}

std::strong_ordering canonical_compare(Mask a, Mask b) noexcept {
  const int pa = popcount(a);
  const int pb = popcount(b);
  if (pa != pb) return pa <=> pb;
  // Equal sizes: the first differing member decides; the set holding the
  // smaller vertex there comes first.
  const Mask diff = a ^ b;
  if (diff == 0) return std::strong_ordering::equal;
  const Mask low = diff & (~diff + 1);
  return (a & low) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

VertexSet parse_vertex_set(std::size_t host_n, const std::string& line) {
  VertexSet s{host_n, 0};
  std::istringstream is(line);
  std::string tok;
  std::size_t offset = 0;
  while (is >> tok) {
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("expected a vertex index, got '" + tok + "'", offset);
    }
    if (v >= host_n || v >= kMaskBits) {
      throw ParseError("vertex " + std::to_string(v) + " outside host of order " + std::to_string(host_n), offset);
    }
    s.bits |= bit(v);
    offset += tok.size() + 1;
  }
  return s;
}

}  // namespace hadwiger
