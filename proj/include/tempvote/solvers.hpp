#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tempvote/budget.hpp"
#include "tempvote/core.hpp"
#include "tempvote/lp.hpp"

namespace tempvote {

// Picks the highest-support project at each timestep independently; ties go
// to the smaller project index. Maximizes utilitarian welfare.
Outcome greedy_util(const Instance&);

struct SolveResult {
  Outcome outcome;
  double value = 0.0;
};

// Visits every outcome in lexicographic choice order, maintaining the
// utility profile incrementally. Guarded by the m^ell budget.
void for_each_outcome(const Instance&, const Budget&,
                      const std::function<void(const Outcome&, const std::vector<int>&)>& fn);

// Full enumeration. Among welfare optima returns the one whose utility
// profile wins leximin_compare; remaining ties go to the lexicographically
// smallest choice sequence.
SolveResult exhaustive_opt(const Instance&, const Objective&, const Budget& = {});

// Layered reachability over utility profiles. Level t holds every profile
// realizable by some choice of projects for the first t timesteps, with one
// back-pointer each (smallest predecessor profile, then smallest project).
struct DpBack {
  std::uint64_t previous = 0;
  int project = -1;
};

struct DpTable {
  int num_agents = 0;
  int ell = 0;
  std::vector<std::map<std::uint64_t, DpBack>> reachable;  // index 0..ell

  std::uint64_t encode(const std::vector<int>& utils) const;
  std::vector<int> decode(std::uint64_t code) const;
  Outcome path_to(std::uint64_t code) const;  // choices reaching a final profile
};

DpTable build_dp_table(const Instance&, const Budget& = {});

// Exact optimum for any of the welfare objectives via the reachability table.
// Work is bounded by (ell+1)^(n+1) * m * n.
SolveResult pmean_dp(const Instance&, const Objective&, const Budget& = {});

// Copies of a project within one timestep collapse to their approver set; a
// timestep collapses to the set of approver sets it offers.
struct TypeGroupedInstance {
  std::vector<std::vector<int>> project_types;   // distinct approver sets, discovery order
  std::vector<std::vector<int>> timestep_types;  // distinct sorted project-type id lists
  std::vector<int> type_counts;                  // timesteps per timestep type
  std::vector<int> type_of_timestep;
};

TypeGroupedInstance type_group(const Instance&);

// Integer program over x[timestep type, project type] = how many timesteps
// of that type pick a project of that type: maximize lambda subject to the
// per-type timestep supply and every agent covered at least lambda times.
struct EgalIlpModel {
  LinearProgram relaxation;
  int lambda_var = 0;
  std::vector<std::pair<int, int>> x_vars;  // position -> (timestep type, project type)
};

EgalIlpModel build_egal_ilp_model(const TypeGroupedInstance&, int num_agents);

struct EgalIlpResult {
  Outcome outcome;
  int lambda = 0;
};

// Egalitarian optimum via branch and bound on the relaxation above.
EgalIlpResult egal_type_ilp(const Instance&, const Budget& = {});

// Decision variant for complete preferences over exactly two projects: an
// outcome giving every agent utility at least lambda, if one exists. Long
// horizons are handled by a halving greedy over lambda blocks; short ones by
// enumeration.
std::optional<Outcome> cp2_solve(const Instance&, int lambda, const Budget& = {});

}  // namespace tempvote
