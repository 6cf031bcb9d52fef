#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "tempvote/reductions.hpp"
#include "tempvote/solvers.hpp"

using namespace tempvote;
using namespace tempvote::tests;

namespace {

Graph triangle() { return Graph::make(3, {{0, 1}, {1, 2}, {0, 2}}); }

Graph random_graph(int vertices, double edge_prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < vertices; ++a)
    for (int b = a + 1; b < vertices; ++b)
      if (coin(rng)) edges.push_back({a, b});
  return Graph::make(vertices, std::move(edges));
}

CnfFormula random_formula(int variables, int clauses, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> var(1, variables);
  std::uniform_int_distribution<int> width(1, 3);
  std::bernoulli_distribution sign(0.5);
  std::vector<std::vector<int>> built;
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> clause;
    const int w = width(rng);
    for (int j = 0; j < w; ++j) clause.push_back(sign(rng) ? var(rng) : -var(rng));
    built.push_back(std::move(clause));
  }
  return CnfFormula::make(variables, std::move(built));
}

int egal_optimum(const Instance& inst) { return egal_type_ilp(inst).lambda; }

}  // namespace

TEST_CASE("graphs are validated and edges normalized") {
  const Graph g = Graph::make(4, {{2, 0}, {3, 2}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}, {2, 3}});

  CHECK(contains(message_of<std::invalid_argument>([] { Graph::make(0, {}); }), "vertex"));
  CHECK_THROWS_AS(Graph::make(3, {{0, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::make(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::make(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("formulas are validated and clauses deduplicated") {
  const CnfFormula f = CnfFormula::make(2, {{1, 1, -2}});
  CHECK(f.clauses == std::vector<std::vector<int>>{{-2, 1}});

  CHECK_THROWS_AS(CnfFormula::make(0, {{1}}), std::invalid_argument);
  CHECK_THROWS_AS(CnfFormula::make(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(CnfFormula::make(2, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(CnfFormula::make(4, {{1, 2, 3, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(CnfFormula::make(2, {{0}}), std::invalid_argument);
  CHECK(contains(message_of<std::invalid_argument>([] { CnfFormula::make(3, {{5}}); }),
                 "literal 5"));
}

TEST_CASE("vertex cover becomes a unique-approval election") {
  const Instance inst = from_vertex_cover(triangle(), 2);
  CHECK(inst.projects ==
        std::vector<std::string>{"q1", "q2", "q3", "q4", "p1", "p2", "p3"});
  CHECK(inst.agents == std::vector<std::string>{"edge1", "edge2", "edge3", "dummy1"});
  CHECK(inst.ell == 3);
  CHECK(inst.is_up());
  CHECK(inst.approvals[0] == ApprovalVector{{4}, {5}, {0}});
  CHECK(inst.approvals[3] == ApprovalVector{{3}, {3}, {3}});

  CHECK(egal_optimum(inst) == 1);
  CHECK(egal_optimum(from_vertex_cover(triangle(), 1)) == 0);
}

TEST_CASE("vertex cover handles edgeless graphs and rejects vacuous ones") {
  const Graph bare = Graph::make(3, {});
  const Instance inst = from_vertex_cover(bare, 0);
  CHECK(inst.num_agents() == 3);
  CHECK(inst.agents == std::vector<std::string>{"dummy1", "dummy2", "dummy3"});
  CHECK(egal_optimum(inst) == 1);
  CHECK(vertex_cover_exists(bare, 0));

  CHECK_THROWS_AS(from_vertex_cover(bare, 3), std::invalid_argument);
  CHECK_THROWS_AS(from_vertex_cover(triangle(), -1), std::invalid_argument);
  CHECK_THROWS_AS(from_vertex_cover(triangle(), 4), std::invalid_argument);
}

TEST_CASE("satisfiability becomes a two-project election") {
  const Instance inst = from_3sat(CnfFormula::make(2, {{1, -2}, {-1, 2}}));
  CHECK(inst.projects == std::vector<std::string>{"tau", "phi"});
  CHECK(inst.agents == std::vector<std::string>{"clause1", "clause2"});
  CHECK(inst.approvals[0] == ApprovalVector{{0}, {1}});
  CHECK(inst.approvals[1] == ApprovalVector{{1}, {0}});

  const SolveResult best = exhaustive_opt(inst, Objective::egalitarian());
  CHECK(best.value == 1.0);
  CHECK(best.outcome == Outcome{{0, 0}});
}

TEST_CASE("contradictions and tautologies land where they should") {
  const Instance broken = from_3sat(CnfFormula::make(1, {{1}, {-1}}));
  CHECK(exhaustive_opt(broken, Objective::egalitarian()).value == 0.0);

  const Instance single = from_3sat(CnfFormula::make(3, {{1, 2, 3}}));
  CHECK(exhaustive_opt(single, Objective::egalitarian()).value == 3.0);

  const Instance tautology = from_3sat(CnfFormula::make(1, {{1, -1}}));
  CHECK(tautology.approvals[0] == ApprovalVector{{0, 1}});
  CHECK(exhaustive_opt(tautology, Objective::egalitarian()).value == 1.0);
}

TEST_CASE("dominating set becomes a complete-preference election") {
  const Graph path = Graph::make(3, {{0, 1}, {1, 2}});
  const Instance inst = from_dominating_set(path, 1);
  CHECK(inst.ell == 1);
  CHECK(inst.is_cp());
  CHECK(inst.approvals[0] == ApprovalVector{{0, 1}});
  CHECK(inst.approvals[1] == ApprovalVector{{0, 1, 2}});
  CHECK(inst.approvals[2] == ApprovalVector{{1, 2}});
  CHECK(egal_optimum(inst) == 1);

  const Graph split = Graph::make(4, {{0, 1}, {2, 3}});
  CHECK(egal_optimum(from_dominating_set(split, 1)) == 0);
  CHECK(egal_optimum(from_dominating_set(split, 2)) == 1);
  CHECK(egal_optimum(from_dominating_set(Graph::make(3, {{0, 1}, {1, 2}, {0, 2}}), 1)) == 1);

  CHECK_THROWS_AS(from_dominating_set(path, 0), std::invalid_argument);
}

TEST_CASE("the brute-force oracles agree on the worked examples") {
  CHECK(vertex_cover_exists(triangle(), 2));
  CHECK_FALSE(vertex_cover_exists(triangle(), 1));
  CHECK_FALSE(vertex_cover_exists(triangle(), -1));

  CHECK_FALSE(satisfiable(CnfFormula::make(1, {{1}, {-1}})));
  CHECK(satisfiable(CnfFormula::make(2, {{1, -2}, {-1, 2}})));

  CHECK(dominating_set_exists(Graph::make(3, {{0, 1}, {1, 2}}), 1));
  CHECK_FALSE(dominating_set_exists(Graph::make(4, {{0, 1}, {2, 3}}), 1));

  CHECK(source_oracle(SourceProblem{VertexCoverProblem{triangle(), 2}}));
  CHECK_FALSE(source_oracle(SourceProblem{ThreeSatProblem{CnfFormula::make(1, {{1}, {-1}})}}));
  CHECK(source_oracle(SourceProblem{DominatingSetProblem{Graph::make(1, {}), 1}}));
}

TEST_CASE("oracles refuse oversized inputs") {
  const Graph big = Graph::make(13, {{0, 1}});
  CHECK_THROWS_AS(vertex_cover_exists(big, 2), BudgetExceeded);
  CHECK_THROWS_AS(dominating_set_exists(big, 2), BudgetExceeded);
  CHECK_THROWS_AS(satisfiable(CnfFormula::make(13, {{1}})), BudgetExceeded);
}

TEST_CASE("reduced elections answer exactly like the source problems") {
  for (int i = 0; i < 12; ++i) {
    const Graph g = random_graph(3 + i % 3, 0.5, 4200 + i);
    const int s = g.num_vertices;
    for (int k = 0; k <= s; ++k) {
      if (g.edges.empty() && k == s) continue;
      const bool covered = vertex_cover_exists(g, k);
      CHECK(covered == (egal_optimum(from_vertex_cover(g, k)) >= 1));
    }
    for (int kappa = 1; kappa <= 2; ++kappa) {
      const bool dominated = dominating_set_exists(g, kappa);
      CHECK(dominated == (egal_optimum(from_dominating_set(g, kappa)) >= 1));
    }
  }
  for (int i = 0; i < 20; ++i) {
    const CnfFormula f = random_formula(2 + i % 3, 1 + i % 4, 4300 + i);
    const bool sat = satisfiable(f);
    const Instance inst = from_3sat(f);
    CHECK(sat == (exhaustive_opt(inst, Objective::egalitarian()).value >= 1.0));
  }
}
