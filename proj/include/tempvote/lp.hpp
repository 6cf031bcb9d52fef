#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tempvote/core.hpp"

namespace tempvote {

// max objective . x   subject to   row . x <= rhs,  x >= 0
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<std::pair<int, double>>> rows;  // sparse coefficients
  std::vector<double> rhs;

  int add_variable(double objective_coefficient = 0.0);
  void add_constraint_le(std::vector<std::pair<int, double>> coefficients, double bound);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> x;
};

constexpr double kLpTolerance = 1e-7;

// Two-phase dense tableau simplex with Bland's rule. Deterministic; the
// anti-cycling rule makes the iteration cap a tripwire for bugs only.
LpSolution simplex_solve(const LinearProgram&);

// Fractional egalitarian relaxation: one weight per (timestep, project),
// weights at each timestep sum to at most one, and every agent's expected
// utility plus one is at least eta. Maximizes eta.
struct LpEgalModel {
  LinearProgram program;
  int eta_var = 0;
  std::vector<std::vector<int>> x_var;  // [t][p] -> variable index
};

LpEgalModel build_lp_egal(const Instance&);

struct FractionalPlan {
  std::vector<std::vector<double>> weights;  // [t][p]
  double eta_star = 1.0;
};

FractionalPlan plan_from_solution(const Instance&, const LpEgalModel&, const LpSolution&);
FractionalPlan solve_lp_egal(const Instance&);

struct RoundResult {
  Outcome outcome;
  int value = 0;  // best min-over-agents of utility + 1 across trials
};

// Independent per-timestep randomized rounding of the plan, best of `trials`
// attempts. Leftover probability mass at a timestep falls back to the
// highest-support project. Deterministic in (seed, trials).
RoundResult round_egal(const Instance&, const FractionalPlan&, std::uint64_t seed, int trials);

}  // namespace tempvote
