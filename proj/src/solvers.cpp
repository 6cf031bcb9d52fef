#include "tempvote/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace tempvote {

Outcome greedy_util(const Instance& instance) {
  Tallies tal = tallies(instance);
  Outcome outcome;
  outcome.choices.resize(instance.ell);
  for (int t = 0; t < instance.ell; ++t) outcome.choices[t] = max_support_project(tal, t);
  return outcome;
}

void for_each_outcome(const Instance& instance, const Budget& budget,
                      const std::function<void(const Outcome&, const std::vector<int>&)>& fn) {
  const int m = instance.num_projects();
  const int l = instance.ell;
  budget.require("outcome enumeration m^ell",
                 std::pow(static_cast<double>(m), static_cast<double>(l)));

  const auto approvers = approvers_by_timestep(instance);
  std::vector<int> digits(l, 0);
  std::vector<int> utils(instance.num_agents(), 0);
  for (int t = 0; t < l; ++t)
    for (int i : approvers[t][0]) ++utils[i];

  Outcome outcome;
  while (true) {
    outcome.choices = digits;
    fn(outcome, utils);
    int t = l - 1;
    for (; t >= 0; --t) {
      for (int i : approvers[t][digits[t]]) --utils[i];
      if (digits[t] + 1 < m) {
        ++digits[t];
        for (int i : approvers[t][digits[t]]) ++utils[i];
        break;
      }
      digits[t] = 0;
      for (int i : approvers[t][0]) ++utils[i];
    }
    if (t < 0) break;
  }
}

SolveResult exhaustive_opt(const Instance& instance, const Objective& objective,
                           const Budget& budget) {
  SolveResult best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> best_utils;
  for_each_outcome(instance, budget, [&](const Outcome& outcome, const std::vector<int>& utils) {
    const double value = welfare_of(utils, objective);
    if (value > best.value + kWelfareTolerance) {
      best.value = value;
      best.outcome = outcome;
      best_utils = utils;
    } else if (value > best.value - kWelfareTolerance &&
               leximin_compare_utils(utils, best_utils) == LexOrder::a_precedes) {
      best.outcome = outcome;
      best_utils = utils;
    }
  });
  return best;
}

std::uint64_t DpTable::encode(const std::vector<int>& utils) const {
  internal_check(static_cast<int>(utils.size()) == num_agents, "profile size mismatch in encode");
  const std::uint64_t base = static_cast<std::uint64_t>(ell) + 1;
  std::uint64_t code = 0;
  for (int i = num_agents - 1; i >= 0; --i) code = code * base + static_cast<std::uint64_t>(utils[i]);
  return code;
}

std::vector<int> DpTable::decode(std::uint64_t code) const {
  const std::uint64_t base = static_cast<std::uint64_t>(ell) + 1;
  std::vector<int> utils(num_agents, 0);
  for (int i = 0; i < num_agents; ++i) {
    utils[i] = static_cast<int>(code % base);
    code /= base;
  }
  return utils;
}

Outcome DpTable::path_to(std::uint64_t code) const {
  Outcome outcome;
  outcome.choices.assign(ell, -1);
  for (int t = ell; t >= 1; --t) {
    const auto it = reachable[t].find(code);
    internal_check(it != reachable[t].end(), "profile not reachable at requested level");
    outcome.choices[t - 1] = it->second.project;
    code = it->second.previous;
  }
  return outcome;
}

DpTable build_dp_table(const Instance& instance, const Budget& budget) {
  const int n = instance.num_agents();
  const int m = instance.num_projects();
  const int l = instance.ell;
  budget.require("dp table work (ell+1)^(n+1)*m*n",
                 std::pow(static_cast<double>(l) + 1.0, static_cast<double>(n) + 1.0) * m * n);

  DpTable table;
  table.num_agents = n;
  table.ell = l;
  table.reachable.resize(l + 1);
  table.reachable[0][0] = DpBack{0, -1};

  const std::uint64_t base = static_cast<std::uint64_t>(l) + 1;
  std::vector<std::uint64_t> weight(n, 1);
  for (int i = 1; i < n; ++i) weight[i] = weight[i - 1] * base;

  const auto approvers = approvers_by_timestep(instance);
  for (int t = 1; t <= l; ++t) {
    // Ascending predecessor codes plus ascending projects make the first
    // back-pointer stored the canonical one; emplace never overwrites it.
    for (const auto& [code, back] : table.reachable[t - 1]) {
      (void)back;
      for (int p = 0; p < m; ++p) {
        std::uint64_t next = code;
        for (int i : approvers[t - 1][p]) next += weight[i];
        table.reachable[t].emplace(next, DpBack{code, p});
      }
    }
  }
  return table;
}

SolveResult pmean_dp(const Instance& instance, const Objective& objective, const Budget& budget) {
  const DpTable table = build_dp_table(instance, budget);
  double best_value = -std::numeric_limits<double>::infinity();
  std::uint64_t best_code = 0;
  for (const auto& [code, back] : table.reachable[instance.ell]) {
    (void)back;
    const double value = welfare_of(table.decode(code), objective);
    if (value > best_value + kWelfareTolerance) {
      best_value = value;
      best_code = code;
    }
  }
  return {table.path_to(best_code), best_value};
}

TypeGroupedInstance type_group(const Instance& instance) {
  const auto approvers = approvers_by_timestep(instance);
  TypeGroupedInstance grouped;
  std::map<std::vector<int>, int> project_type_ids;
  std::map<std::vector<int>, int> timestep_type_ids;
  for (int t = 0; t < instance.ell; ++t) {
    std::set<int> present;
    for (int p = 0; p < instance.num_projects(); ++p) {
      if (approvers[t][p].empty()) continue;
      auto [it, inserted] =
          project_type_ids.try_emplace(approvers[t][p], static_cast<int>(grouped.project_types.size()));
      if (inserted) grouped.project_types.push_back(approvers[t][p]);
      present.insert(it->second);
    }
    std::vector<int> key(present.begin(), present.end());
    auto [it, inserted] =
        timestep_type_ids.try_emplace(key, static_cast<int>(grouped.timestep_types.size()));
    if (inserted) {
      grouped.timestep_types.push_back(key);
      grouped.type_counts.push_back(0);
    }
    ++grouped.type_counts[it->second];
    grouped.type_of_timestep.push_back(it->second);
  }
  return grouped;
}

EgalIlpModel build_egal_ilp_model(const TypeGroupedInstance& grouped, int num_agents) {
  EgalIlpModel model;
  const int num_timestep_types = static_cast<int>(grouped.timestep_types.size());
  std::vector<std::vector<int>> vars_of_type(num_timestep_types);
  for (int tau = 0; tau < num_timestep_types; ++tau)
    for (int pi : grouped.timestep_types[tau]) {
      vars_of_type[tau].push_back(model.relaxation.add_variable(0.0));
      model.x_vars.emplace_back(tau, pi);
    }
  model.lambda_var = model.relaxation.add_variable(1.0);

  for (int tau = 0; tau < num_timestep_types; ++tau) {
    if (vars_of_type[tau].empty()) continue;
    std::vector<std::pair<int, double>> row;
    for (int var : vars_of_type[tau]) row.emplace_back(var, 1.0);
    model.relaxation.add_constraint_le(std::move(row), grouped.type_counts[tau]);
  }
  for (int i = 0; i < num_agents; ++i) {
    std::vector<std::pair<int, double>> row;
    row.emplace_back(model.lambda_var, 1.0);
    for (std::size_t j = 0; j < model.x_vars.size(); ++j) {
      const auto& members = grouped.project_types[model.x_vars[j].second];
      if (std::binary_search(members.begin(), members.end(), i))
        row.emplace_back(static_cast<int>(j), -1.0);
    }
    model.relaxation.add_constraint_le(std::move(row), 0.0);
  }
  return model;
}

namespace {

constexpr double kIntegralityTolerance = 1e-6;

struct BnbBranch {
  int var = 0;
  bool lower = false;  // true: var >= value, false: var <= value
  double value = 0.0;
};

struct BnbNode {
  double bound = 0.0;
  long id = 0;
  std::vector<BnbBranch> branches;
};

struct BnbNodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

Outcome expand_type_solution(const Instance& instance, const TypeGroupedInstance& grouped,
                             const EgalIlpModel& model, const std::vector<long long>& counts,
                             int lambda) {
  const auto approvers = approvers_by_timestep(instance);
  std::vector<std::vector<int>> slots(grouped.timestep_types.size());
  for (int t = 0; t < instance.ell; ++t) slots[grouped.type_of_timestep[t]].push_back(t);
  std::vector<std::size_t> cursor(grouped.timestep_types.size(), 0);

  Outcome outcome;
  outcome.choices.assign(instance.ell, -1);
  for (std::size_t j = 0; j < model.x_vars.size(); ++j) {
    const auto [tau, pi] = model.x_vars[j];
    for (long long c = 0; c < counts[j]; ++c) {
      internal_check(cursor[tau] < slots[tau].size(), "type solution over-assigns a timestep type");
      const int t = slots[tau][cursor[tau]++];
      int chosen = -1;
      for (int p = 0; p < instance.num_projects(); ++p)
        if (approvers[t][p] == grouped.project_types[pi]) {
          chosen = p;
          break;
        }
      internal_check(chosen >= 0, "no project of the required type at a timestep");
      outcome.choices[t] = chosen;
    }
  }
  Tallies tal = tallies(instance);
  for (int t = 0; t < instance.ell; ++t)
    if (outcome.choices[t] < 0) outcome.choices[t] = max_support_project(tal, t);

  const std::vector<int> utils = utilities(instance, outcome);
  internal_check(*std::min_element(utils.begin(), utils.end()) >= lambda,
                 "expanded outcome misses the certified egalitarian value");
  return outcome;
}

}  // namespace

EgalIlpResult egal_type_ilp(const Instance& instance, const Budget& budget) {
  const TypeGroupedInstance grouped = type_group(instance);
  const EgalIlpModel model = build_egal_ilp_model(grouped, instance.num_agents());
  const int num_x = static_cast<int>(model.x_vars.size());
  budget.require("type-grouped ilp variables", static_cast<double>(num_x) + 1.0);

  auto solve_node = [&](const std::vector<BnbBranch>& branches) {
    LinearProgram lp = model.relaxation;
    for (const BnbBranch& b : branches) {
      if (b.lower)
        lp.add_constraint_le({{b.var, -1.0}}, -b.value);
      else
        lp.add_constraint_le({{b.var, 1.0}}, b.value);
    }
    return simplex_solve(lp);
  };

  int best_lambda = 0;
  std::vector<long long> best_counts(num_x, 0);  // x = 0 is always feasible

  std::priority_queue<BnbNode, std::vector<BnbNode>, BnbNodeOrder> open;
  open.push({std::numeric_limits<double>::infinity(), 0, {}});
  long next_id = 1;
  double nodes = 0.0;

  while (!open.empty()) {
    BnbNode node = open.top();
    open.pop();
    if (std::floor(node.bound + kIntegralityTolerance) <= best_lambda) continue;
    nodes += 1.0;
    budget.require("branch-and-bound nodes", nodes);

    const LpSolution sol = solve_node(node.branches);
    if (sol.status == LpStatus::infeasible) continue;
    internal_check(sol.status == LpStatus::optimal, "type-grouped relaxation unbounded");
    if (std::floor(sol.objective + kIntegralityTolerance) <= best_lambda) continue;

    int fractional = -1;
    for (int j = 0; j < num_x; ++j)
      if (std::abs(sol.x[j] - std::round(sol.x[j])) > kIntegralityTolerance) {
        fractional = j;
        break;
      }
    if (fractional < 0) {
      std::vector<long long> counts(num_x, 0);
      for (int j = 0; j < num_x; ++j) counts[j] = std::llround(sol.x[j]);
      long long lambda = std::numeric_limits<long long>::max();
      for (int i = 0; i < instance.num_agents(); ++i) {
        long long covered = 0;
        for (int j = 0; j < num_x; ++j) {
          const auto& members = grouped.project_types[model.x_vars[j].second];
          if (std::binary_search(members.begin(), members.end(), i)) covered += counts[j];
        }
        lambda = std::min(lambda, covered);
      }
      if (lambda > best_lambda) {
        best_lambda = static_cast<int>(lambda);
        best_counts = counts;
      }
      continue;
    }

    const double value = sol.x[fractional];
    BnbNode down{sol.objective, next_id++, node.branches};
    down.branches.push_back({fractional, false, std::floor(value)});
    BnbNode up{sol.objective, next_id++, node.branches};
    up.branches.push_back({fractional, true, std::ceil(value)});
    open.push(std::move(down));
    open.push(std::move(up));
  }

  return {expand_type_solution(instance, grouped, model, best_counts, best_lambda), best_lambda};
}

std::optional<Outcome> cp2_solve(const Instance& instance, int lambda, const Budget& budget) {
  if (instance.num_projects() != 2)
    throw std::invalid_argument("the block-halving solver needs exactly two projects");
  if (!instance.is_cp())
    throw std::invalid_argument(
        "the block-halving solver needs complete preferences (no empty approval set)");
  if (lambda < 1) throw std::invalid_argument("the target utility lambda must be at least one");

  const int n = instance.num_agents();
  const int l = instance.ell;
  // Halving from n survivors reaches zero only after floor(log2 n) + 1
  // steps (one more than ceil(log2 n) when n is a power of two), so blocks
  // must be at least that long for the greedy to be guaranteed.
  const int steps_needed = static_cast<int>(std::bit_width(static_cast<unsigned>(n)));

  if (l / lambda >= steps_needed) {
    // One block per unit of lambda; each is long enough for the halving
    // argument, so every agent gains one approved timestep per block.
    Tallies tal = tallies(instance);
    Outcome outcome;
    outcome.choices.assign(l, -1);
    const int base = l / lambda;
    const int remainder = l % lambda;
    int start = 0;
    for (int b = 0; b < lambda; ++b) {
      const int end = start + base + (b < remainder ? 1 : 0);
      std::vector<char> alive(n, 1);
      int alive_count = n;
      for (int t = start; t < end; ++t) {
        if (alive_count == 0) {
          outcome.choices[t] = max_support_project(tal, t);
          continue;
        }
        int approve_first = 0;
        for (int i = 0; i < n; ++i)
          if (alive[i] && instance.approves(i, t, 0)) ++approve_first;
        const int pick = 2 * approve_first >= alive_count ? 0 : 1;
        const int before = alive_count;
        for (int i = 0; i < n; ++i)
          if (alive[i] && instance.approves(i, t, pick)) {
            alive[i] = 0;
            --alive_count;
          }
        internal_check(alive_count <= before / 2, "halving step kept too many agents");
        outcome.choices[t] = pick;
      }
      internal_check(alive_count == 0, "block ended with unsatisfied agents");
      start = end;
    }
    const std::vector<int> utils = utilities(instance, outcome);
    internal_check(*std::min_element(utils.begin(), utils.end()) >= lambda,
                   "block greedy failed its utility target");
    return outcome;
  }

  std::optional<Outcome> found;
  for_each_outcome(instance, budget, [&](const Outcome& outcome, const std::vector<int>& utils) {
    if (found) return;
    if (*std::min_element(utils.begin(), utils.end()) >= lambda) found = outcome;
  });
  return found;
}

}  // namespace tempvote
