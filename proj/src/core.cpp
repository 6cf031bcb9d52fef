#include "tempvote/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "tempvote/budget.hpp"

namespace tempvote {

namespace {
std::string plain_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}
}  // namespace

BudgetExceeded::BudgetExceeded(const std::string& quantity, double required, double limit)
    : std::runtime_error("budget exceeded: " + quantity + " = " + plain_number(required) +
                         " > limit " + plain_number(limit)),
      required_(required),
      limit_(limit) {}

void Budget::require(const std::string& quantity, double amount) const {
  if (amount > limit) throw BudgetExceeded(quantity, amount, limit);
}

void internal_check(bool condition, const char* message) {
  if (!condition) throw std::logic_error(std::string("internal check failed: ") + message);
}

namespace detail {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

bool Instance::approves(int agent, int timestep, int project) const {
  const ApprovalSet& s = approvals[agent][timestep];
  return std::binary_search(s.begin(), s.end(), project);
}

bool Instance::is_cp() const {
  for (const auto& vec : approvals)
    for (const auto& s : vec)
      if (s.empty()) return false;
  return true;
}

bool Instance::is_up() const {
  for (const auto& vec : approvals)
    for (const auto& s : vec)
      if (s.size() != 1) return false;
  return true;
}

Instance Instance::make(std::vector<std::string> projects, int ell,
                        std::vector<ApprovalVector> approvals,
                        std::vector<std::string> agent_names, AgentRule rule) {
  if (projects.empty()) throw std::invalid_argument("instance needs at least one project");
  if (ell < 1) throw std::invalid_argument("instance needs at least one timestep");
  if (approvals.empty()) throw std::invalid_argument("instance needs at least one agent");

  {
    std::set<std::string> seen;
    for (const auto& name : projects) {
      if (name.empty()) throw std::invalid_argument("project names must be nonempty");
      if (!seen.insert(name).second)
        throw std::invalid_argument("duplicate project name '" + name + "'");
    }
  }

  const int n = static_cast<int>(approvals.size());
  const int m = static_cast<int>(projects.size());

  if (agent_names.empty()) {
    agent_names.reserve(n);
    for (int i = 0; i < n; ++i) agent_names.push_back("a" + std::to_string(i + 1));
  } else if (static_cast<int>(agent_names.size()) != n) {
    throw std::invalid_argument("agent name count does not match approval rows");
  }
  {
    std::set<std::string> seen;
    for (const auto& name : agent_names) {
      if (name.empty()) throw std::invalid_argument("agent names must be nonempty");
      if (!seen.insert(name).second)
        throw std::invalid_argument("duplicate agent name '" + name + "'");
    }
  }

  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(approvals[i].size()) != ell)
      throw std::invalid_argument("agent '" + agent_names[i] + "' has " +
                                  std::to_string(approvals[i].size()) + " timesteps, expected " +
                                  std::to_string(ell));
    bool any = false;
    for (auto& s : approvals[i]) {
      for (int p : s)
        if (p < 0 || p >= m)
          throw std::invalid_argument("agent '" + agent_names[i] +
                                      "' approves out-of-range project index " + std::to_string(p));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      any = any || !s.empty();
    }
    if (!any && rule == AgentRule::require_nonempty)
      throw std::invalid_argument("agent '" + agent_names[i] +
                                  "' approves nothing at every timestep");
  }

  Instance inst;
  inst.projects = std::move(projects);
  inst.agents = std::move(agent_names);
  inst.ell = ell;
  inst.approvals = std::move(approvals);
  return inst;
}

void validate_outcome(const Instance& instance, const Outcome& outcome) {
  if (static_cast<int>(outcome.choices.size()) != instance.ell)
    throw std::invalid_argument("outcome has " + std::to_string(outcome.choices.size()) +
                                " choices, expected " + std::to_string(instance.ell));
  for (int p : outcome.choices)
    if (p < 0 || p >= instance.num_projects())
      throw std::invalid_argument("outcome selects out-of-range project index " +
                                  std::to_string(p));
}

Objective Objective::p_mean(double p) {
  if (!std::isfinite(p)) throw std::invalid_argument("p-mean exponent must be finite");
  if (p == 0.0)
    throw std::invalid_argument("p-mean exponent 0 is not defined; use the nash objective");
  return {Kind::p_mean, p};
}

int utility(const Instance& instance, int agent, const Outcome& outcome) {
  if (agent < 0 || agent >= instance.num_agents())
    throw std::invalid_argument("agent index " + std::to_string(agent) + " out of range");
  validate_outcome(instance, outcome);
  int total = 0;
  for (int t = 0; t < instance.ell; ++t)
    if (instance.approves(agent, t, outcome.choices[t])) ++total;
  return total;
}

std::vector<int> utilities(const Instance& instance, const Outcome& outcome) {
  validate_outcome(instance, outcome);
  std::vector<int> utils(instance.num_agents(), 0);
  for (int i = 0; i < instance.num_agents(); ++i)
    for (int t = 0; t < instance.ell; ++t)
      if (instance.approves(i, t, outcome.choices[t])) ++utils[i];
  return utils;
}

double welfare_of(const std::vector<int>& utils, const Objective& objective) {
  const int n = static_cast<int>(utils.size());
  internal_check(n > 0, "welfare of empty utility profile");
  switch (objective.kind) {
    case Objective::Kind::utilitarian: {
      long long sum = 0;
      for (int u : utils) sum += u;
      return static_cast<double>(sum);
    }
    case Objective::Kind::egalitarian: {
      int best = utils[0];
      for (int u : utils) best = std::min(best, u);
      return static_cast<double>(best);
    }
    case Objective::Kind::nash: {
      double log_sum = 0.0;
      for (int u : utils) {
        if (u == 0) return 0.0;
        log_sum += std::log(static_cast<double>(u));
      }
      return std::exp(log_sum / n);
    }
    case Objective::Kind::p_mean: {
      const double p = objective.exponent;
      if (p < 0.0) {
        for (int u : utils)
          if (u == 0) return 0.0;  // limit convention for negative exponents
      }
      double sum = 0.0;
      for (int u : utils) sum += std::pow(static_cast<double>(u), p);
      return std::pow(sum / n, 1.0 / p);
    }
  }
  internal_check(false, "unknown objective kind");
  return 0.0;
}

double welfare(const Instance& instance, const Outcome& outcome, const Objective& objective) {
  return welfare_of(utilities(instance, outcome), objective);
}

LexOrder leximin_compare_utils(const std::vector<int>& ua, const std::vector<int>& ub) {
  internal_check(ua.size() == ub.size(), "comparing utility profiles of different sizes");
  internal_check(!ua.empty(), "comparing empty utility profiles");
  int min_a = ua[0], min_b = ub[0];
  for (int u : ua) min_a = std::min(min_a, u);
  for (int u : ub) min_b = std::min(min_b, u);
  if (min_a != min_b) return min_a > min_b ? LexOrder::a_precedes : LexOrder::b_precedes;
  for (std::size_t i = 0; i < ua.size(); ++i)
    if (ua[i] != ub[i]) return ua[i] > ub[i] ? LexOrder::a_precedes : LexOrder::b_precedes;
  return LexOrder::utility_equivalent;
}

LexOrder leximin_compare(const Instance& instance, const Outcome& a, const Outcome& b) {
  return leximin_compare_utils(utilities(instance, a), utilities(instance, b));
}

std::vector<std::vector<std::vector<int>>> approvers_by_timestep(const Instance& instance) {
  std::vector<std::vector<std::vector<int>>> table(
      instance.ell, std::vector<std::vector<int>>(instance.num_projects()));
  for (int i = 0; i < instance.num_agents(); ++i)
    for (int t = 0; t < instance.ell; ++t)
      for (int p : instance.approvals[i][t]) table[t][p].push_back(i);
  return table;  // agent ids appended in increasing order, so already sorted
}

Tallies tallies(const Instance& instance) {
  Tallies tal;
  tal.support_by_timestep.assign(instance.ell, std::vector<int>(instance.num_projects(), 0));
  tal.mu.assign(instance.num_agents(), 0);
  for (int i = 0; i < instance.num_agents(); ++i)
    for (int t = 0; t < instance.ell; ++t) {
      const ApprovalSet& s = instance.approvals[i][t];
      if (!s.empty()) ++tal.mu[i];
      for (int p : s) ++tal.support_by_timestep[t][p];
    }
  return tal;
}

int max_support_project(const Tallies& tal, int timestep) {
  const std::vector<int>& row = tal.support_by_timestep[timestep];
  int best = 0;
  for (int p = 1; p < static_cast<int>(row.size()); ++p)
    if (row[p] > row[best]) best = p;
  return best;
}

}  // namespace tempvote
