#include "tempvote/lp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tempvote {

int LinearProgram::add_variable(double objective_coefficient) {
  objective.push_back(objective_coefficient);
  return num_vars++;
}

void LinearProgram::add_constraint_le(std::vector<std::pair<int, double>> coefficients,
                                      double bound) {
  for (auto& [var, coeff] : coefficients)
    if (var < 0 || var >= num_vars)
      throw std::invalid_argument("constraint references unknown variable " + std::to_string(var));
  rows.push_back(std::move(coefficients));
  rhs.push_back(bound);
}

namespace {

constexpr int kMaxPivots = 200000;

struct Tableau {
  // Columns: structural variables, then one slack per row, then artificials.
  std::vector<std::vector<double>> a;
  std::vector<double> rhs;
  std::vector<int> basis;
  std::vector<double> obj;  // reduced cost row for the current phase
  int num_structural = 0;
  int first_artificial = 0;  // columns >= this are artificial

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return static_cast<int>(obj.size()); }

  void pivot(int row, int col) {
    const double p = a[row][col];
    for (double& v : a[row]) v /= p;
    rhs[row] /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == row || std::abs(a[i][col]) < 1e-12) continue;
      const double f = a[i][col];
      for (int j = 0; j < cols(); ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    if (std::abs(obj[col]) > 1e-12) {
      const double f = obj[col];
      for (int j = 0; j < cols(); ++j) obj[j] -= f * a[row][j];
    }
    basis[row] = col;
  }

  // Maximizes the current objective row with Bland's rule. Columns at or
  // beyond `max_entering` never enter. Returns false on unboundedness.
  bool run(int max_entering) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      int entering = -1;
      for (int j = 0; j < max_entering; ++j)
        if (obj[j] > kLpTolerance) {
          entering = j;
          break;
        }
      if (entering < 0) return true;
      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < rows(); ++i) {
        if (a[i][entering] <= kLpTolerance) continue;
        const double ratio = rhs[i] / a[i][entering];
        if (leaving < 0 || ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && basis[i] < basis[leaving]))
          leaving = i, best_ratio = ratio;
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
    internal_check(false, "simplex pivot limit reached");
    return false;
  }
};

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());

  Tableau tab;
  tab.num_structural = n;
  tab.basis.resize(m);
  tab.rhs = lp.rhs;
  tab.a.assign(m, std::vector<double>(n + m, 0.0));
  for (int i = 0; i < m; ++i) {
    for (auto [var, coeff] : lp.rows[i]) tab.a[i][var] += coeff;
    tab.a[i][n + i] = 1.0;
    tab.basis[i] = n + i;
  }
  tab.first_artificial = n + m;

  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i)
    if (tab.rhs[i] < 0) artificial_rows.push_back(i);

  if (!artificial_rows.empty()) {
    for (int i : artificial_rows) {
      for (double& v : tab.a[i]) v = -v;
      tab.rhs[i] = -tab.rhs[i];
    }
    for (auto& row : tab.a) row.resize(tab.first_artificial + artificial_rows.size(), 0.0);
    for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
      tab.a[artificial_rows[k]][tab.first_artificial + k] = 1.0;
      tab.basis[artificial_rows[k]] = tab.first_artificial + static_cast<int>(k);
    }
    // Phase one: maximize minus the sum of artificials, priced out for the
    // starting basis.
    tab.obj.assign(tab.a[0].size(), 0.0);
    for (std::size_t k = 0; k < artificial_rows.size(); ++k)
      tab.obj[tab.first_artificial + k] = -1.0;
    for (int i : artificial_rows)
      for (int j = 0; j < tab.cols(); ++j) tab.obj[j] += tab.a[i][j];
    internal_check(tab.run(tab.cols()), "phase-one simplex reported unbounded");
    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i)
      if (tab.basis[i] >= tab.first_artificial) infeasibility += tab.rhs[i];
    if (infeasibility > kLpTolerance) return {LpStatus::infeasible, 0.0, {}};
    // Drive leftover artificials out of the basis; rows with no structural
    // or slack coefficient left are redundant and dropped.
    for (int i = m - 1; i >= 0; --i) {
      if (tab.basis[i] < tab.first_artificial) continue;
      int col = -1;
      for (int j = 0; j < tab.first_artificial; ++j)
        if (std::abs(tab.a[i][j]) > kLpTolerance) {
          col = j;
          break;
        }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.a.erase(tab.a.begin() + i);
        tab.rhs.erase(tab.rhs.begin() + i);
        tab.basis.erase(tab.basis.begin() + i);
      }
    }
  } else {
    tab.obj.assign(n + m, 0.0);
  }

  // Phase two: original objective, priced out for the current basis.
  tab.obj.assign(tab.cols(), 0.0);
  for (int j = 0; j < n; ++j) tab.obj[j] = lp.objective[j];
  for (int i = 0; i < tab.rows(); ++i) {
    const int b = tab.basis[i];
    if (b < n && std::abs(lp.objective[b]) > 1e-12) {
      const double f = lp.objective[b];
      for (int j = 0; j < tab.cols(); ++j) tab.obj[j] -= f * tab.a[i][j];
    }
  }
  if (!tab.run(tab.first_artificial)) return {LpStatus::unbounded, 0.0, {}};

  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < tab.rows(); ++i)
    if (tab.basis[i] < n) sol.x[tab.basis[i]] = tab.rhs[i];
  for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

LpEgalModel build_lp_egal(const Instance& instance) {
  const int m = instance.num_projects();
  const int l = instance.ell;

  LpEgalModel model;
  model.x_var.assign(l, std::vector<int>(m, -1));
  for (int t = 0; t < l; ++t)
    for (int p = 0; p < m; ++p) model.x_var[t][p] = model.program.add_variable(0.0);
  model.eta_var = model.program.add_variable(1.0);

  for (int t = 0; t < l; ++t) {
    std::vector<std::pair<int, double>> row;
    for (int p = 0; p < m; ++p) row.emplace_back(model.x_var[t][p], 1.0);
    model.program.add_constraint_le(std::move(row), 1.0);
  }
  for (int i = 0; i < instance.num_agents(); ++i) {
    std::vector<std::pair<int, double>> row;
    row.emplace_back(model.eta_var, 1.0);
    for (int t = 0; t < l; ++t)
      for (int p : instance.approvals[i][t]) row.emplace_back(model.x_var[t][p], -1.0);
    model.program.add_constraint_le(std::move(row), 1.0);
  }
  return model;
}

FractionalPlan plan_from_solution(const Instance& instance, const LpEgalModel& model,
                                  const LpSolution& solution) {
  internal_check(solution.status == LpStatus::optimal, "egalitarian relaxation did not solve");
  internal_check(solution.objective > 1.0 - 1e-6, "egalitarian relaxation value below one");
  FractionalPlan plan;
  plan.eta_star = std::max(solution.objective, 1.0);
  plan.weights.assign(instance.ell, std::vector<double>(instance.num_projects(), 0.0));
  for (int t = 0; t < instance.ell; ++t) {
    double column = 0.0;
    for (int p = 0; p < instance.num_projects(); ++p) {
      plan.weights[t][p] = std::max(0.0, solution.x[model.x_var[t][p]]);
      column += plan.weights[t][p];
    }
    if (column > 1.0)
      for (double& w : plan.weights[t]) w /= column;
  }
  return plan;
}

FractionalPlan solve_lp_egal(const Instance& instance) {
  LpEgalModel model = build_lp_egal(instance);
  return plan_from_solution(instance, model, simplex_solve(model.program));
}

namespace {

double next_unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

RoundResult round_egal(const Instance& instance, const FractionalPlan& plan, std::uint64_t seed,
                       int trials) {
  if (trials < 1) throw std::invalid_argument("rounding needs at least one trial");
  const int m = instance.num_projects();
  const int l = instance.ell;
  if (static_cast<int>(plan.weights.size()) != l)
    throw std::invalid_argument("plan timestep count does not match instance");
  for (int t = 0; t < l; ++t) {
    if (static_cast<int>(plan.weights[t].size()) != m)
      throw std::invalid_argument("plan project count does not match instance");
    double column = 0.0;
    for (double w : plan.weights[t]) {
      if (w < -kWelfareTolerance) throw std::invalid_argument("plan has a negative weight");
      column += w;
    }
    if (column > 1.0 + kWelfareTolerance)
      throw std::invalid_argument("plan weights at a timestep sum beyond one");
  }

  Tallies tal = tallies(instance);
  RoundResult best;
  best.value = -1;
  Outcome trial_outcome;
  trial_outcome.choices.assign(l, 0);
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(
        detail::splitmix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1)));
    for (int t = 0; t < l; ++t) {
      const double draw = next_unit_double(rng);
      double cum = 0.0;
      int pick = -1;
      for (int p = 0; p < m; ++p) {
        cum += std::max(0.0, plan.weights[t][p]);
        if (draw < cum) {
          pick = p;
          break;
        }
      }
      trial_outcome.choices[t] = pick >= 0 ? pick : max_support_project(tal, t);
    }
    const std::vector<int> utils = utilities(instance, trial_outcome);
    int value = utils[0] + 1;
    for (int u : utils) value = std::min(value, u + 1);
    if (value > best.value) {
      best.value = value;
      best.outcome = trial_outcome;
    }
  }
  return best;
}

}  // namespace tempvote
