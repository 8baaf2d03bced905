#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qwoa/spectrum.hpp"

namespace qwoa {

/// Simple undirected graph without loops or parallel edges. Edges are stored
/// normalized (u < v) and sorted.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

enum class GraphFamily { Cycle, Chain, Complete };

GraphFamily graph_family_from_string(const std::string& text);
std::string to_string(GraphFamily family);

Graph make_graph(GraphFamily family, int n);

/// Reads "n m" followed by m lines of "u v" (0-indexed). Weighted edges
/// (a third column) are rejected.
Graph read_graph_file(const std::string& path);
Graph parse_graph(const std::string& text);

struct SearchProblem {
  std::uint64_t marked = 1;
  std::uint64_t space_size = 2;
};
struct MaxCutProblem {
  Graph graph;
};
struct KDensestProblem {
  Graph graph;
  int k = 2;
};

/// A concrete combinatorial instance prior to spectral compression.
class ProblemInstance {
 public:
  using Kind = std::variant<SearchProblem, MaxCutProblem, KDensestProblem>;

  static ProblemInstance search(std::uint64_t space_size, std::uint64_t marked);
  static ProblemInstance max_cut(Graph graph);
  static ProblemInstance k_densest(Graph graph, int k);

  const Kind& kind() const { return kind_; }
  Sense sense() const;
  /// |S'|, the number of feasible solutions.
  std::uint64_t feasible_size() const;
  std::string describe() const;

 private:
  explicit ProblemInstance(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 22;

/// Costs of every feasible solution, in enumeration order. For Max-Cut the
/// i-th entry is the bitstring i (vertex v is bit v); for k-Densest the
/// order follows the Gosper successor over weight-k masks; for search the
/// first `marked` entries are the marked solutions.
std::vector<double> feasible_costs(const ProblemInstance& inst,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

/// Feasible bitmasks in the same order as feasible_costs (search: indices).
std::vector<std::uint64_t> feasible_solutions(const ProblemInstance& inst,
                                              std::uint64_t budget = kDefaultEnumerationBudget);

int cut_size(const Graph& g, std::uint64_t mask);
int induced_edges(const Graph& g, std::uint64_t mask);

/// Next integer with the same popcount (Gosper's hack).
std::uint64_t next_combination(std::uint64_t mask);

CostSpectrum spectrum_of(const ProblemInstance& inst,
                         std::uint64_t budget = kDefaultEnumerationBudget);

/// Brute-force number of optimal feasible solutions.
std::uint64_t count_optimal(const ProblemInstance& inst,
                            std::uint64_t budget = kDefaultEnumerationBudget);

std::uint64_t binomial(int n, int k);

}  // namespace qwoa
