#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempvote/budget.hpp"
#include "tempvote/core.hpp"

namespace tempvote {

// An agent's proportional claim: floor of (her nonempty timesteps) / n.
struct PropViolation {
  int agent = 0;
  int utility = 0;
  int quota = 0;
};

struct PropReport {
  bool satisfied = true;
  std::vector<PropViolation> violations;
};

PropReport is_prop(const Instance&, const Outcome&);

// Agents ordered by nondecreasing claim each pick their quota of unclaimed
// timesteps where they approve something; leftovers go to the
// highest-support project. Always returns a proportional outcome.
Outcome greedy_prop(const Instance&);

// Repairs an outcome to proportionality without lowering its egalitarian
// value: satisfied agents up to the first violator pin enough timesteps of
// the input, the rest claim fresh timesteps greedily.
Outcome propify_keep_egal(const Instance&, const Outcome&);

// Group fairness: a group agreeing on some project in k timesteps and of
// size at least s*n/k should see its approved projects win s times.
struct StrongPjrWitness {
  std::vector<int> group;
  int s = 0;
  int k = 0;
  std::vector<int> covered_timesteps;  // where the outcome hits the group's union
};

struct StrongPjrReport {
  bool satisfied = true;
  std::optional<StrongPjrWitness> witness;
};

// Exhaustive over agent groups; guarded by the given size caps.
StrongPjrReport strong_pjr_check(const Instance&, const Outcome&, int max_agents = 8,
                                 int max_timesteps = 10);

enum class PriceMeasure { poprop, s_poprop };

struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

Rational make_rational(long long num, long long den);

struct PriceReport {
  PriceMeasure measure = PriceMeasure::poprop;
  Objective::Kind objective = Objective::Kind::utilitarian;
  long long optimum = 0;       // best welfare over all outcomes
  long long prop_welfare = 0;  // best (poprop) or worst (s_poprop) over proportional ones
  bool infinite = false;
  Rational ratio;  // exact optimum / prop_welfare when finite
};

// Exact price of proportionality by full enumeration; utilitarian or
// egalitarian objectives only.
PriceReport price_of_prop(const Instance&, PriceMeasure, Objective::Kind, const Budget& = {});

}  // namespace tempvote
