#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hadwiger/fractional.hpp"
#include "hadwiger/graph.hpp"
#include "hadwiger/minor.hpp"
#include "hadwiger/vertex_set.hpp"

namespace hadwiger {

struct TreeDecomposition {
  std::size_t host_n = 0;
  std::vector<VertexSet> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

  std::size_t width() const;
};

struct DecompositionCheck {
  bool ok = true;
  std::string message;
  explicit operator bool() const noexcept { return ok; }
};

/// Tree shape, vertex cover, edge cover and the subtree property.
DecompositionCheck verify_tree_decomposition(const Graph& g, const TreeDecomposition& td);

struct TreewidthResult {
  std::size_t value = 0;
  TreeDecomposition certificate;
};

inline constexpr std::size_t kTreewidthCap = 14;

/// Exact treewidth by dynamic programming over vertex subsets; the
/// decomposition comes from the optimal elimination order.
TreewidthResult treewidth(const Graph& g, std::size_t cap = kTreewidthCap);

/// V0 separates V1 from V2 inside the host subgraph.
struct SeparatorWitness {
  Mask v0 = 0;
  Mask v1 = 0;
  Mask v2 = 0;
};

struct SeparationResult {
  std::size_t value = 0;
  Mask subgraph = 0;  // an induced subgraph attaining the value
  SeparatorWitness witness;
};

inline constexpr std::size_t kSeparationCap = 12;

/// Smallest |V0| for the induced subgraph on u, with |V1|, |V2| <=
/// floor(2|u|/3) and no V1-V2 edge.
std::pair<std::size_t, SeparatorWitness> min_separator(const Graph& g, Mask u);

/// Maximum of min_separator over all nonempty induced subgraphs. The sweep
/// runs in parallel; ties keep the lowest subgraph mask.
SeparationResult separation_number(const Graph& g, std::size_t cap = kSeparationCap);
SeparationResult separation_number_serial(const Graph& g, std::size_t cap = kSeparationCap);

struct GridMinorResult {
  std::size_t value = 0;
  MinorModel certificate;
};

/// Largest r with an r x r grid minor.
GridMinorResult max_grid_minor(const Graph& g);

struct ParamReport {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t h = 0;
  Rational hf;
  TreewidthResult tw;
  std::size_t bramble_number = 0;
  SeparationResult sep;
  GridMinorResult grid;
  bool treewidth_at_least_grid = false;  // tw >= r
  bool bramble_is_tw_plus_one = false;   // bn = tw + 1
};

std::vector<ParamReport> comparability_report(const std::vector<std::pair<std::string, Graph>>& graphs);

/// Rows sorted by treewidth then id, one column per parameter, for reading
/// off how the parameters move together.
std::string comovement_table(const std::vector<ParamReport>& reports);

/// "treedecomposition <n> <bags>", then "b v..." per bag and "e a b" per edge.
std::string serialize_tree_decomposition(const TreeDecomposition& td);
TreeDecomposition parse_tree_decomposition(const std::string& text);

}  // namespace hadwiger
