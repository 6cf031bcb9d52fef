#include "tempvote/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>

namespace tempvote {

Graph Graph::make(int num_vertices, std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges) {
    if (a < 0 || a >= num_vertices || b < 0 || b >= num_vertices)
      throw std::invalid_argument("edge references an unknown vertex");
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) throw std::invalid_argument("duplicate edge");
  }
  Graph g;
  g.num_vertices = num_vertices;
  g.edges = std::move(edges);
  return g;
}

CnfFormula CnfFormula::make(int num_variables, std::vector<std::vector<int>> clauses) {
  if (num_variables < 1) throw std::invalid_argument("formula needs at least one variable");
  if (clauses.empty()) throw std::invalid_argument("formula needs at least one clause");
  for (auto& clause : clauses) {
    if (clause.empty()) throw std::invalid_argument("clauses must be nonempty");
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    if (clause.size() > 3) throw std::invalid_argument("clauses carry at most three literals");
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > num_variables)
        throw std::invalid_argument("literal " + std::to_string(lit) +
                                    " references an unknown variable");
  }
  CnfFormula f;
  f.num_variables = num_variables;
  f.clauses = std::move(clauses);
  return f;
}

Instance from_vertex_cover(const Graph& graph, int k) {
  const int s = graph.num_vertices;
  const int r = static_cast<int>(graph.edges.size());
  if (k < 0) throw std::invalid_argument("cover size must be nonnegative");
  if (k > s) throw std::invalid_argument("cover size exceeds the vertex count");
  const int n = r + s - k;
  if (n == 0)
    throw std::invalid_argument(
        "an edgeless graph with k = |V| leaves no agents; the cover question is vacuous");

  std::vector<std::string> projects;
  for (int i = 0; i < n; ++i) projects.push_back("q" + std::to_string(i + 1));
  for (int j = 0; j < s; ++j) projects.push_back("p" + std::to_string(j + 1));
  const auto personal = [](int agent) { return agent; };        // q_i index
  const auto vertex = [&](int v) { return n + v; };             // p_j index

  std::vector<ApprovalVector> approvals(n, ApprovalVector(s));
  std::vector<std::string> names;
  for (int i = 0; i < r; ++i) {
    const auto [a, b] = graph.edges[i];
    names.push_back("edge" + std::to_string(i + 1));
    for (int t = 0; t < s; ++t)
      approvals[i][t] = {t == a || t == b ? vertex(t) : personal(i)};
  }
  for (int i = r; i < n; ++i) {
    names.push_back("dummy" + std::to_string(i - r + 1));
    for (int t = 0; t < s; ++t) approvals[i][t] = {personal(i)};
  }
  return Instance::make(std::move(projects), s, std::move(approvals), std::move(names));
}

Instance from_3sat(const CnfFormula& formula) {
  const int alpha = formula.num_variables;
  const int kappa = static_cast<int>(formula.clauses.size());

  std::vector<ApprovalVector> approvals(kappa, ApprovalVector(alpha));
  std::vector<std::string> names;
  for (int i = 0; i < kappa; ++i) {
    names.push_back("clause" + std::to_string(i + 1));
    for (int lit : formula.clauses[i]) {
      const int t = std::abs(lit) - 1;
      approvals[i][t].push_back(lit > 0 ? 0 : 1);
    }
  }
  return Instance::make({"tau", "phi"}, alpha, std::move(approvals), std::move(names));
}

Instance from_dominating_set(const Graph& graph, int kappa) {
  if (kappa < 1) throw std::invalid_argument("the dominating-set budget must be at least one");
  const int n = graph.num_vertices;

  std::vector<std::string> projects;
  for (int j = 0; j < n; ++j) projects.push_back("p" + std::to_string(j + 1));
  std::vector<ApprovalSet> neighborhood(n);
  for (int v = 0; v < n; ++v) neighborhood[v].push_back(v);
  for (const auto& [a, b] : graph.edges) {
    neighborhood[a].push_back(b);
    neighborhood[b].push_back(a);
  }

  std::vector<ApprovalVector> approvals(n, ApprovalVector(kappa));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back("v" + std::to_string(i + 1));
    for (int t = 0; t < kappa; ++t) approvals[i][t] = neighborhood[i];
  }
  return Instance::make(std::move(projects), kappa, std::move(approvals), std::move(names));
}

namespace {

constexpr int kOracleLimit = 12;

bool covers(const Graph& graph, unsigned mask) {
  for (const auto& [a, b] : graph.edges)
    if (!(mask & (1u << a)) && !(mask & (1u << b))) return false;
  return true;
}

bool dominates(const Graph& graph, unsigned mask) {
  std::vector<char> hit(graph.num_vertices, 0);
  for (int v = 0; v < graph.num_vertices; ++v)
    if (mask & (1u << v)) hit[v] = 1;
  for (const auto& [a, b] : graph.edges) {
    if (mask & (1u << a)) hit[b] = 1;
    if (mask & (1u << b)) hit[a] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

}  // namespace

bool vertex_cover_exists(const Graph& graph, int k) {
  if (graph.num_vertices > kOracleLimit)
    throw BudgetExceeded("oracle vertex subsets 2^|V|", graph.num_vertices, kOracleLimit);
  if (k < 0) return false;
  for (unsigned mask = 0; mask < (1u << graph.num_vertices); ++mask)
    if (std::popcount(mask) <= k && covers(graph, mask)) return true;
  return false;
}

bool satisfiable(const CnfFormula& formula) {
  if (formula.num_variables > kOracleLimit)
    throw BudgetExceeded("oracle assignments 2^alpha", formula.num_variables, kOracleLimit);
  for (unsigned assignment = 0; assignment < (1u << formula.num_variables); ++assignment) {
    bool all = true;
    for (const auto& clause : formula.clauses) {
      bool any = false;
      for (int lit : clause) {
        const bool value = (assignment >> (std::abs(lit) - 1)) & 1u;
        if ((lit > 0) == value) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool dominating_set_exists(const Graph& graph, int kappa) {
  if (graph.num_vertices > kOracleLimit)
    throw BudgetExceeded("oracle vertex subsets 2^|V|", graph.num_vertices, kOracleLimit);
  if (kappa < 0) return false;
  for (unsigned mask = 0; mask < (1u << graph.num_vertices); ++mask)
    if (std::popcount(mask) <= kappa && dominates(graph, mask)) return true;
  return false;
}

bool source_oracle(const SourceProblem& problem) {
  return std::visit(
      [](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, VertexCoverProblem>)
          return vertex_cover_exists(p.graph, p.k);
        else if constexpr (std::is_same_v<T, ThreeSatProblem>)
          return satisfiable(p.formula);
        else
          return dominating_set_exists(p.graph, p.kappa);
      },
      problem);
}

}  // namespace tempvote
