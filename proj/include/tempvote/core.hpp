#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tempvote {

// One agent's approved projects at one timestep, kept sorted and deduplicated.
using ApprovalSet = std::vector<int>;
// Per-timestep approval sets of one agent, length ell.
using ApprovalVector = std::vector<ApprovalSet>;

enum class AgentRule {
  require_nonempty,  // every agent must approve something at some timestep
  allow_empty,       // relaxed form used when replaying reported ballots
};

struct Instance {
  std::vector<std::string> projects;  // input order fixes indices and all tie-breaking
  std::vector<std::string> agents;
  int ell = 0;
  std::vector<ApprovalVector> approvals;  // [agent][timestep] -> sorted project indices

  int num_agents() const { return static_cast<int>(approvals.size()); }
  int num_projects() const { return static_cast<int>(projects.size()); }

  bool approves(int agent, int timestep, int project) const;
  bool is_cp() const;  // every approval set nonempty
  bool is_up() const;  // every approval set a singleton

  bool operator==(const Instance&) const = default;

  // Validates and canonicalizes (sorts, dedupes). Agent names default to
  // a1..an. Throws std::invalid_argument naming the violated requirement.
  static Instance make(std::vector<std::string> projects, int ell,
                       std::vector<ApprovalVector> approvals,
                       std::vector<std::string> agent_names = {},
                       AgentRule rule = AgentRule::require_nonempty);
};

struct Outcome {
  std::vector<int> choices;  // one project index per timestep
  bool operator==(const Outcome&) const = default;
};

void validate_outcome(const Instance& instance, const Outcome& outcome);

struct Objective {
  enum class Kind { utilitarian, egalitarian, p_mean, nash };
  Kind kind = Kind::utilitarian;
  double exponent = 1.0;  // used by p_mean only

  static Objective utilitarian() { return {Kind::utilitarian, 1.0}; }
  static Objective egalitarian() { return {Kind::egalitarian, 1.0}; }
  static Objective nash() { return {Kind::nash, 1.0}; }
  static Objective p_mean(double p);  // rejects p = 0 (use nash) and non-finite p
};

// Slack for comparing floating-point welfare values. Utilities and the
// utilitarian/egalitarian objectives stay exact integers.
constexpr double kWelfareTolerance = 1e-9;

int utility(const Instance&, int agent, const Outcome&);
std::vector<int> utilities(const Instance&, const Outcome&);
double welfare(const Instance&, const Outcome&, const Objective&);
// Welfare of an already-computed utility profile.
double welfare_of(const std::vector<int>& utils, const Objective&);

// Total preorder used for tie-breaking among egalitarian optima: higher
// minimum utility first, then higher utility for the first agent (in input
// order) whose utilities differ. Outcomes with identical utility profiles
// are equivalent.
enum class LexOrder { a_precedes, b_precedes, utility_equivalent };
LexOrder leximin_compare(const Instance&, const Outcome& a, const Outcome& b);
LexOrder leximin_compare_utils(const std::vector<int>& ua, const std::vector<int>& ub);

struct Tallies {
  std::vector<std::vector<int>> support_by_timestep;  // [t][p] = approver count
  std::vector<int> mu;                                // per agent: nonempty timesteps

  int support(int project, int timestep) const {
    return support_by_timestep[timestep][project];
  }
};

Tallies tallies(const Instance&);

// Project with maximum support at a timestep; ties go to the smaller index.
int max_support_project(const Tallies&, int timestep);

// [t][p] -> sorted ids of the agents approving p at t.
std::vector<std::vector<std::vector<int>>> approvers_by_timestep(const Instance&);

// Solver postconditions and pivoting limits; failure means a bug, not bad input.
void internal_check(bool condition, const char* message);

namespace detail {
std::uint64_t splitmix64(std::uint64_t x);
}

}  // namespace tempvote
