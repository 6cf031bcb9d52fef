#include "tempvote/prop.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tempvote/solvers.hpp"

namespace tempvote {

PropReport is_prop(const Instance& instance, const Outcome& outcome) {
  const std::vector<int> utils = utilities(instance, outcome);
  const Tallies tal = tallies(instance);
  PropReport report;
  for (int i = 0; i < instance.num_agents(); ++i) {
    const int quota = tal.mu[i] / instance.num_agents();
    if (utils[i] < quota) {
      report.satisfied = false;
      report.violations.push_back({i, utils[i], quota});
    }
  }
  return report;
}

namespace {

// Agent indices by nondecreasing count of nonempty timesteps, stable on ties.
std::vector<int> by_claim_order(const Tallies& tal) {
  std::vector<int> order(tal.mu.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return tal.mu[a] < tal.mu[b]; });
  return order;
}

}  // namespace

Outcome greedy_prop(const Instance& instance) {
  const int n = instance.num_agents();
  const int l = instance.ell;
  const Tallies tal = tallies(instance);

  Outcome outcome;
  outcome.choices.assign(l, -1);
  std::vector<char> claimed(l, 0);
  for (int i : by_claim_order(tal)) {
    int need = tal.mu[i] / n;
    for (int t = 0; t < l && need > 0; ++t) {
      if (claimed[t] || instance.approvals[i][t].empty()) continue;
      claimed[t] = 1;
      outcome.choices[t] = instance.approvals[i][t].front();
      --need;
    }
    internal_check(need == 0, "an agent could not place her proportional claim");
  }
  for (int t = 0; t < l; ++t)
    if (outcome.choices[t] < 0) outcome.choices[t] = max_support_project(tal, t);
  return outcome;
}

Outcome propify_keep_egal(const Instance& instance, const Outcome& outcome) {
  validate_outcome(instance, outcome);
  if (is_prop(instance, outcome).satisfied) return outcome;

  const int n = instance.num_agents();
  const int l = instance.ell;
  const Tallies tal = tallies(instance);
  const std::vector<int> utils = utilities(instance, outcome);
  const int floor_value = *std::min_element(utils.begin(), utils.end());

  const std::vector<int> order = by_claim_order(tal);
  int first_violator = n;
  for (int pos = 0; pos < n; ++pos) {
    const int i = order[pos];
    if (utils[i] < tal.mu[i] / n) {
      first_violator = pos;
      break;
    }
  }

  Outcome repaired = outcome;  // unmarked timesteps keep the input's choices
  std::vector<char> marked(l, 0);
  // Agents ahead of the first violator pin timesteps the input already gives
  // them; several agents may pin the same timestep.
  for (int pos = 0; pos < first_violator; ++pos) {
    const int i = order[pos];
    int need = std::max(floor_value, tal.mu[i] / n);
    for (int t = 0; t < l && need > 0; ++t) {
      if (!instance.approves(i, t, outcome.choices[t])) continue;
      marked[t] = 1;
      --need;
    }
    internal_check(need == 0, "a satisfied agent could not pin enough timesteps");
  }
  // The first violator and everyone after claim fresh timesteps.
  for (int pos = first_violator; pos < n; ++pos) {
    const int i = order[pos];
    int need = tal.mu[i] / n;
    for (int t = 0; t < l && need > 0; ++t) {
      if (marked[t] || instance.approvals[i][t].empty()) continue;
      marked[t] = 1;
      repaired.choices[t] = instance.approvals[i][t].front();
      --need;
    }
    internal_check(need == 0, "a claiming agent ran out of unmarked timesteps");
  }

  internal_check(is_prop(instance, repaired).satisfied, "repair left a proportionality violation");
  const std::vector<int> repaired_utils = utilities(instance, repaired);
  internal_check(*std::min_element(repaired_utils.begin(), repaired_utils.end()) >= floor_value,
                 "repair lowered the egalitarian value");
  return repaired;
}

StrongPjrReport strong_pjr_check(const Instance& instance, const Outcome& outcome, int max_agents,
                                 int max_timesteps) {
  validate_outcome(instance, outcome);
  const int n = instance.num_agents();
  const int m = instance.num_projects();
  const int l = instance.ell;
  if (n > max_agents)
    throw BudgetExceeded("strong-pjr group enumeration agents", n, max_agents);
  if (l > max_timesteps)
    throw BudgetExceeded("strong-pjr group enumeration timesteps", l, max_timesteps);

  // approver_mask[t][p]: bit i set when agent i approves p at t.
  std::vector<std::vector<unsigned>> approver_mask(l, std::vector<unsigned>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < l; ++t)
      for (int p : instance.approvals[i][t]) approver_mask[t][p] |= 1u << i;

  StrongPjrReport report;
  for (unsigned group = 1; group < (1u << n); ++group) {
    int agree = 0;  // timesteps where some project is approved by the whole group
    std::vector<int> covered;
    for (int t = 0; t < l; ++t) {
      bool all = false;
      for (int p = 0; p < m && !all; ++p)
        all = (approver_mask[t][p] & group) == group;
      if (all) ++agree;
      if ((approver_mask[t][outcome.choices[t]] & group) != 0) covered.push_back(t);
    }
    if (agree == 0) continue;
    const int size = std::popcount(group);
    // Largest s with size >= s*n/k, for k = agree.
    const int s = (size * agree) / n;
    if (static_cast<int>(covered.size()) >= s) continue;
    report.satisfied = false;
    StrongPjrWitness witness;
    for (int i = 0; i < n; ++i)
      if (group & (1u << i)) witness.group.push_back(i);
    witness.s = s;
    witness.k = agree;
    witness.covered_timesteps = covered;
    report.witness = std::move(witness);
    return report;
  }
  return report;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational make_rational(long long num, long long den) {
  internal_check(den != 0, "rational with zero denominator");
  const long long g = std::gcd(num, den);
  return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

PriceReport price_of_prop(const Instance& instance, PriceMeasure measure,
                          Objective::Kind objective, const Budget& budget) {
  if (objective != Objective::Kind::utilitarian && objective != Objective::Kind::egalitarian)
    throw std::invalid_argument("price of proportionality is defined for util and egal only");

  const int n = instance.num_agents();
  const Tallies tal = tallies(instance);
  std::vector<int> quota(n);
  for (int i = 0; i < n; ++i) quota[i] = tal.mu[i] / n;

  long long best = std::numeric_limits<long long>::min();
  long long prop_best = std::numeric_limits<long long>::min();
  long long prop_worst = std::numeric_limits<long long>::max();
  bool any_prop = false;
  for_each_outcome(instance, budget, [&](const Outcome&, const std::vector<int>& utils) {
    long long value;
    if (objective == Objective::Kind::utilitarian) {
      value = 0;
      for (int u : utils) value += u;
    } else {
      value = *std::min_element(utils.begin(), utils.end());
    }
    best = std::max(best, value);
    for (int i = 0; i < n; ++i)
      if (utils[i] < quota[i]) return;
    any_prop = true;
    prop_best = std::max(prop_best, value);
    prop_worst = std::min(prop_worst, value);
  });
  internal_check(any_prop, "no proportional outcome exists");

  PriceReport report;
  report.measure = measure;
  report.objective = objective;
  report.optimum = best;
  report.prop_welfare = measure == PriceMeasure::poprop ? prop_best : prop_worst;
  if (report.prop_welfare == 0) {
    if (report.optimum == 0)
      report.ratio = {1, 1};  // nothing is achievable at all, price is vacuous
    else
      report.infinite = true;
  } else {
    report.ratio = make_rational(report.optimum, report.prop_welfare);
  }
  return report;
}

}  // namespace tempvote
