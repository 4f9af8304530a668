#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hadwiger/graph.hpp"
#include "hadwiger/vertex_set.hpp"

namespace hadwiger {

struct CliqueOrder {
  std::size_t t = 0;
};

/// Pattern minor; branch set i realizes pattern vertex i.
struct PatternGraph {
  Graph h;
};

/// Disjoint connected branch sets realizing a clique or pattern minor.
struct MinorModel {
  std::size_t host_n = 0;
  std::vector<VertexSet> branch_sets;
  std::variant<CliqueOrder, PatternGraph> pattern = CliqueOrder{0};

  std::size_t order() const noexcept { return branch_sets.size(); }
  std::size_t breadth() const noexcept;
};

enum class MinorViolation {
  kNone,
  kHostMismatch,
  kWrongCount,
  kEmptySet,
  kOutOfRange,
  kOverlap,
  kDisconnected,
  kMissingCrossEdge,
};

struct MinorCheck {
  bool ok = true;
  MinorViolation violation = MinorViolation::kNone;
  std::string message;
  explicit operator bool() const noexcept { return ok; }
};

/// Checks every MinorModel invariant against g; on failure the message
/// names the overlapping pair, disconnected set or missing cross edge.
MinorCheck verify_minor_model(const Graph& g, const MinorModel& m);

/// Maximum allowed branch-set size.
struct Breadth {
  std::size_t d = 1;
};

/// Search statistics, filled when a pointer is supplied.
struct SearchStats {
  std::size_t nodes = 0;
  std::size_t memo_hits = 0;
};

/// Exhaustive search for a K_t minor (of breadth <= d when given). Graphs up
/// to 64 vertices. The returned model always passes verify_minor_model.
std::optional<MinorModel> has_clique_minor(const Graph& g, std::size_t t,
                                           std::optional<Breadth> breadth = std::nullopt,
                                           SearchStats* stats = nullptr);

struct HadwigerResult {
  std::size_t value = 0;
  MinorModel certificate;
};

HadwigerResult hadwiger_number(const Graph& g);

/// Largest clique minor with every branch set of size <= d.
HadwigerResult max_clique_minor_bounded(const Graph& g, Breadth d);

/// Exhaustive H-minor search. Isolated vertices of H still need their own
/// branch sets.
std::optional<MinorModel> has_minor(const Graph& g, const Graph& h, SearchStats* stats = nullptr);

/// Quick lower bound: contracts greedily until the graph is complete.
MinorModel greedy_clique_minor(const Graph& g);

/// Canonical text: a header line, then one sorted branch set per line.
///   minor <host_n> clique <t>
///   minor <host_n> pattern <graph6>
std::string serialize_minor_model(const MinorModel& m);
MinorModel parse_minor_model(const std::string& text);

}  // namespace hadwiger
