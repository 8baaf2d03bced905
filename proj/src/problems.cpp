#include "qwoa/problems.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include "qwoa/errors.hpp"

namespace qwoa {

namespace {

constexpr int kMaxVertices = 62;

void require_budget(std::uint64_t size, std::uint64_t budget) {
  if (size > budget)
    throw ResourceError("feasible space of size " + std::to_string(size) +
                        " exceeds the enumeration budget " + std::to_string(budget));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 1 || n > kMaxVertices)
    throw DomainError("vertex count must be in [1, " + std::to_string(kMaxVertices) + "]");
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") has an endpoint out of range");
    if (u == v) throw DomainError("self-loops are not allowed");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second)
      throw DomainError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  edges_.assign(seen.begin(), seen.end());
}

GraphFamily graph_family_from_string(const std::string& text) {
  if (text == "cycle") return GraphFamily::Cycle;
  if (text == "chain") return GraphFamily::Chain;
  if (text == "complete") return GraphFamily::Complete;
  throw DomainError("unknown graph family '" + text + "' (expected cycle, chain or complete)");
}

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::Cycle: return "cycle";
    case GraphFamily::Chain: return "chain";
    case GraphFamily::Complete: return "complete";
  }
  return "?";
}

Graph make_graph(GraphFamily family, int n) {
  std::vector<Graph::Edge> edges;
  switch (family) {
    case GraphFamily::Cycle:
      if (n < 3) throw DomainError("cycle graphs need n >= 3");
      for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
      break;
    case GraphFamily::Chain:
      if (n < 2) throw DomainError("chain graphs need n >= 2");
      for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      break;
    case GraphFamily::Complete:
      if (n < 2) throw DomainError("complete graphs need n >= 2");
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      break;
  }
  return Graph(n, std::move(edges));
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_line(header)) throw DomainError("graph file is empty");
  long long n = 0, m = 0;
  {
    std::istringstream hs(header);
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra)) throw DomainError("graph header must be 'n m_edges'");
  }
  if (n < 1 || m < 0) throw DomainError("graph header has invalid counts");
  std::vector<Graph::Edge> edges;
  std::string row;
  for (long long e = 0; e < m; ++e) {
    if (!next_line(row)) throw DomainError("graph file ends before all edges were read");
    std::istringstream rs(row);
    long long u = 0, v = 0;
    std::string extra;
    if (!(rs >> u >> v)) throw DomainError("malformed edge line '" + row + "'");
    if (rs >> extra) throw DomainError("weighted edges are not supported: '" + row + "'");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (next_line(row)) throw DomainError("graph file has more edge lines than declared");
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ResourceError("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_graph(buf.str());
}

ProblemInstance ProblemInstance::search(std::uint64_t space_size, std::uint64_t marked) {
  if (marked < 1 || marked > space_size)
    throw DomainError("search needs 1 <= |M| <= N");
  return ProblemInstance(SearchProblem{marked, space_size});
}

ProblemInstance ProblemInstance::max_cut(Graph graph) {
  if (graph.vertex_count() < 1) throw DomainError("Max-Cut needs a non-empty graph");
  return ProblemInstance(MaxCutProblem{std::move(graph)});
}

ProblemInstance ProblemInstance::k_densest(Graph graph, int k) {
  if (!(1 < k && k < graph.vertex_count()))
    throw DomainError("k-Densest Subgraph needs 1 < k < n");
  return ProblemInstance(KDensestProblem{std::move(graph), k});
}

Sense ProblemInstance::sense() const { return Sense::Maximize; }

std::uint64_t ProblemInstance::feasible_size() const {
  return std::visit(
      Overloaded{[](const SearchProblem& s) { return s.space_size; },
                 [](const MaxCutProblem& p) { return std::uint64_t{1} << p.graph.vertex_count(); },
                 [](const KDensestProblem& p) { return binomial(p.graph.vertex_count(), p.k); }},
      kind_);
}

std::string ProblemInstance::describe() const {
  return std::visit(
      Overloaded{[](const SearchProblem& s) {
                   return "search:N=" + std::to_string(s.space_size) +
                          ":M=" + std::to_string(s.marked);
                 },
                 [](const MaxCutProblem& p) {
                   return "maxcut:n=" + std::to_string(p.graph.vertex_count()) +
                          ":E=" + std::to_string(p.graph.edge_count());
                 },
                 [](const KDensestProblem& p) {
                   return "kdensest:n=" + std::to_string(p.graph.vertex_count()) +
                          ":E=" + std::to_string(p.graph.edge_count()) + ":k=" + std::to_string(p.k);
                 }},
      kind_);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

int cut_size(const Graph& g, std::uint64_t mask) {
  int c = 0;
  for (auto [u, v] : g.edges()) c += static_cast<int>(((mask >> u) ^ (mask >> v)) & 1U);
  return c;
}

int induced_edges(const Graph& g, std::uint64_t mask) {
  int c = 0;
  for (auto [u, v] : g.edges()) c += static_cast<int>((mask >> u) & (mask >> v) & 1U);
  return c;
}

std::uint64_t next_combination(std::uint64_t mask) {
  const std::uint64_t low = mask & (~mask + 1);
  const std::uint64_t ripple = mask + low;
  return ripple | (((ripple ^ mask) >> 2) / low);
}

std::vector<std::uint64_t> feasible_solutions(const ProblemInstance& inst, std::uint64_t budget) {
  const std::uint64_t size = inst.feasible_size();
  require_budget(size, budget);
  std::vector<std::uint64_t> out;
  out.reserve(size);
  if (std::holds_alternative<KDensestProblem>(inst.kind())) {
    const int k = std::get<KDensestProblem>(inst.kind()).k;
    std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t i = 0; i < size; ++i, mask = next_combination(mask)) out.push_back(mask);
  } else {
    for (std::uint64_t i = 0; i < size; ++i) out.push_back(i);
  }
  return out;
}

std::vector<double> feasible_costs(const ProblemInstance& inst, std::uint64_t budget) {
  const auto solutions = feasible_solutions(inst, budget);
  std::vector<double> costs;
  costs.reserve(solutions.size());
  std::visit(Overloaded{[&](const SearchProblem& s) {
                          for (auto z : solutions) costs.push_back(z < s.marked ? 1.0 : 0.0);
                        },
                        [&](const MaxCutProblem& p) {
                          for (auto z : solutions) costs.push_back(cut_size(p.graph, z));
                        },
                        [&](const KDensestProblem& p) {
                          for (auto z : solutions) costs.push_back(induced_edges(p.graph, z));
                        }},
             inst.kind());
  return costs;
}

namespace {

// Histogram over integer costs 0..max_cost without materializing the space.
template <class CostFn>
CostSpectrum histogram_spectrum(std::size_t max_cost, std::uint64_t first, std::uint64_t count,
                                bool combinations, CostFn cost) {
  std::vector<std::uint64_t> hist(max_cost + 1, 0);
  std::uint64_t mask = first;
  for (std::uint64_t i = 0; i < count; ++i) {
    ++hist[static_cast<std::size_t>(cost(mask))];
    mask = combinations ? next_combination(mask) : mask + 1;
  }
  std::vector<double> costs;
  std::vector<std::uint64_t> mult;
  for (std::size_t c = 0; c < hist.size(); ++c) {
    if (hist[c] == 0) continue;
    costs.push_back(static_cast<double>(c));
    mult.push_back(hist[c]);
  }
  return CostSpectrum(std::move(costs), std::move(mult), Sense::Maximize);
}

}  // namespace

CostSpectrum spectrum_of(const ProblemInstance& inst, std::uint64_t budget) {
  const std::uint64_t size = inst.feasible_size();
  require_budget(size, budget);
  return std::visit(
      Overloaded{[&](const SearchProblem& s) {
                   if (s.marked == s.space_size)
                     return CostSpectrum({1.0}, {s.marked}, Sense::Maximize);
                   return CostSpectrum({0.0, 1.0}, {s.space_size - s.marked, s.marked},
                                       Sense::Maximize);
                 },
                 [&](const MaxCutProblem& p) {
                   return histogram_spectrum(p.graph.edge_count(), 0, size, false,
                                             [&](std::uint64_t z) { return cut_size(p.graph, z); });
                 },
                 [&](const KDensestProblem& p) {
                   return histogram_spectrum(
                       p.graph.edge_count(), (std::uint64_t{1} << p.k) - 1, size, true,
                       [&](std::uint64_t z) { return induced_edges(p.graph, z); });
                 }},
      inst.kind());
}

std::uint64_t count_optimal(const ProblemInstance& inst, std::uint64_t budget) {
  const std::uint64_t size = inst.feasible_size();
  require_budget(size, budget);
  if (const auto* s = std::get_if<SearchProblem>(&inst.kind())) return s->marked;

  int best = -1;
  std::uint64_t count = 0;
  auto visit_cost = [&](int c) {
    if (c > best) {
      best = c;
      count = 1;
    } else if (c == best) {
      ++count;
    }
  };
  if (const auto* p = std::get_if<MaxCutProblem>(&inst.kind())) {
    for (std::uint64_t z = 0; z < size; ++z) visit_cost(cut_size(p->graph, z));
  } else {
    const auto& kd = std::get<KDensestProblem>(inst.kind());
    std::uint64_t mask = (std::uint64_t{1} << kd.k) - 1;
    for (std::uint64_t i = 0; i < size; ++i, mask = next_combination(mask))
      visit_cost(induced_edges(kd.graph, mask));
  }
  return count;
}

}  // namespace qwoa
