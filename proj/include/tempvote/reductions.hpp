#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "tempvote/budget.hpp"
#include "tempvote/core.hpp"

namespace tempvote {

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // normalized a < b, 0-based

  // Validates vertex references, rejects self-loops and duplicates.
  static Graph make(int num_vertices, std::vector<std::pair<int, int>> edges);
};

struct CnfFormula {
  int num_variables = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based literals, up to 3 each

  static CnfFormula make(int num_variables, std::vector<std::vector<int>> clauses);
};

// Edge agents want their endpoints picked, dummy agents pad the horizon so
// that the instance has a positive egalitarian outcome exactly when a vertex
// cover of size at most k exists. Unique approvals throughout.
Instance from_vertex_cover(const Graph&, int k);

// One agent per clause over two projects ("tau" picks the variable true,
// "phi" false); satisfiable exactly when some outcome gives everyone
// positive utility.
Instance from_3sat(const CnfFormula&);

// Closed neighborhoods as approval sets over kappa timesteps; a dominating
// set of size at most kappa exists exactly when the egalitarian optimum is
// positive. Complete preferences throughout.
Instance from_dominating_set(const Graph&, int kappa);

struct VertexCoverProblem {
  Graph graph;
  int k = 0;
};

struct ThreeSatProblem {
  CnfFormula formula;
};

struct DominatingSetProblem {
  Graph graph;
  int kappa = 0;
};

using SourceProblem = std::variant<VertexCoverProblem, ThreeSatProblem, DominatingSetProblem>;

// Brute-force ground truth for the source problems, for checking the
// reductions end to end. Guarded at 12 vertices/variables.
bool vertex_cover_exists(const Graph&, int k);
bool satisfiable(const CnfFormula&);
bool dominating_set_exists(const Graph&, int kappa);
bool source_oracle(const SourceProblem&);

}  // namespace tempvote
