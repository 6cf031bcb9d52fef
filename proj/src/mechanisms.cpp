#include "tempvote/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tempvote/solvers.hpp"

namespace tempvote {

Outcome leximin_outcome(const Instance& instance, const Budget& budget) {
  return exhaustive_opt(instance, Objective::egalitarian(), budget).outcome;
}

Outcome run_mechanism(MechanismKind kind, const Instance& instance, const Budget& budget) {
  switch (kind) {
    case MechanismKind::greedy_util:
      return greedy_util(instance);
    case MechanismKind::leximin:
      return leximin_outcome(instance, budget);
  }
  internal_check(false, "unknown mechanism kind");
  return {};
}

namespace {

// Approval vectors as odometers over per-timestep subset masks, earlier
// timesteps more significant. cp_only skips the empty set.
struct ReportSpace {
  int num_projects = 0;
  int ell = 0;
  bool cp_only = false;

  int first_mask() const { return cp_only ? 1 : 0; }
  int mask_limit() const { return 1 << num_projects; }

  double size() const {
    return std::pow(static_cast<double>(mask_limit() - first_mask()),
                    static_cast<double>(ell));
  }

  std::vector<int> first() const { return std::vector<int>(ell, first_mask()); }

  bool next(std::vector<int>& masks) const {
    for (int t = ell - 1; t >= 0; --t) {
      if (masks[t] + 1 < mask_limit()) {
        ++masks[t];
        return true;
      }
      masks[t] = first_mask();
    }
    return false;
  }
};

ApprovalVector vector_from_masks(const std::vector<int>& masks, int num_projects) {
  ApprovalVector vec(masks.size());
  for (std::size_t t = 0; t < masks.size(); ++t)
    for (int p = 0; p < num_projects; ++p)
      if (masks[t] & (1 << p)) vec[t].push_back(p);
  return vec;
}

int utility_against(const ApprovalVector& truthful, const Outcome& outcome) {
  int total = 0;
  for (std::size_t t = 0; t < truthful.size(); ++t)
    if (std::binary_search(truthful[t].begin(), truthful[t].end(), outcome.choices[t])) ++total;
  return total;
}

Instance instance_with_report(const std::vector<std::string>& projects, int ell,
                              const std::vector<ApprovalVector>& opponents, int agent,
                              const ApprovalVector& report) {
  std::vector<ApprovalVector> approvals;
  approvals.reserve(opponents.size() + 1);
  int next_opponent = 0;
  for (int i = 0; i <= static_cast<int>(opponents.size()); ++i) {
    if (i == agent)
      approvals.push_back(report);
    else
      approvals.push_back(opponents[next_opponent++]);
  }
  return Instance::make(projects, ell, std::move(approvals), {}, AgentRule::allow_empty);
}

void validate_vector(const ApprovalVector& vec, int num_projects, int ell, bool cp_only,
                     const char* label) {
  if (static_cast<int>(vec.size()) != ell)
    throw std::invalid_argument(std::string(label) + " has the wrong number of timesteps");
  for (const ApprovalSet& s : vec) {
    for (int p : s)
      if (p < 0 || p >= num_projects)
        throw std::invalid_argument(std::string(label) + " references an unknown project");
    if (cp_only && s.empty())
      throw std::invalid_argument(std::string(label) + " must be nonempty under cp_only");
  }
}

}  // namespace

AuditVerdict sp_audit(MechanismKind mechanism, const Instance& instance,
                      std::optional<int> agent, bool cp_only, const Budget& budget) {
  if (cp_only && !instance.is_cp())
    throw std::invalid_argument("cp_only strategyproofness audit needs a CP instance");
  if (agent && (*agent < 0 || *agent >= instance.num_agents()))
    throw std::invalid_argument("audited agent index out of range");

  const int n = instance.num_agents();
  const ReportSpace space{instance.num_projects(), instance.ell, cp_only};
  budget.require("misreports per agent", space.size());

  AuditVerdict verdict;
  verdict.property = AuditProperty::sp;
  verdict.search_space =
      "misreports per agent: (" + std::to_string(space.mask_limit() - space.first_mask()) +
      ")^" + std::to_string(instance.ell) + " = " +
      std::to_string(static_cast<long long>(space.size())) +
      (cp_only ? " (nonempty sets only); " : "; ") + "agents audited: " +
      (agent ? std::string("1") : std::to_string(n));

  const Outcome truthful_outcome = run_mechanism(mechanism, instance, budget);

  const int from = agent ? *agent : 0;
  const int to = agent ? *agent : n - 1;
  for (int i = from; i <= to; ++i) {
    const int truthful_utility = utility(instance, i, truthful_outcome);
    std::vector<ApprovalVector> opponents;
    for (int j = 0; j < n; ++j)
      if (j != i) opponents.push_back(instance.approvals[j]);

    std::vector<int> masks = space.first();
    do {
      const ApprovalVector misreport = vector_from_masks(masks, instance.num_projects());
      const Instance reported =
          instance_with_report(instance.projects, instance.ell, opponents, i, misreport);
      const Outcome outcome = run_mechanism(mechanism, reported, budget);
      const int gained = utility_against(instance.approvals[i], outcome);
      if (gained > truthful_utility) {
        verdict.violated = true;
        AuditCertificate cert;
        cert.projects = instance.projects;
        cert.ell = instance.ell;
        cert.agent = i;
        cert.truthful = instance.approvals[i];
        cert.misreport = misreport;
        cert.truthful_opponents = opponents;
        cert.deviating_opponents = opponents;
        cert.truthful_utility = truthful_utility;
        cert.deviating_utility = gained;
        verdict.certificate = std::move(cert);
        return verdict;
      }
    } while (space.next(masks));
  }
  return verdict;
}

CaseExtremes nom_case_utilities(MechanismKind mechanism, const NomUniverse& universe, int agent,
                                const ApprovalVector& report, const ApprovalVector& truthful,
                                bool cp_only, const Budget& budget) {
  const int n = universe.num_agents;
  const int m = static_cast<int>(universe.projects.size());
  if (n < 1) throw std::invalid_argument("universe needs at least one agent");
  if (agent < 0 || agent >= n) throw std::invalid_argument("audited agent index out of range");
  validate_vector(truthful, m, universe.ell, cp_only, "truthful vector");
  validate_vector(report, m, universe.ell, false, "reported vector");

  const ReportSpace space{m, universe.ell, cp_only};
  const double profiles = std::pow(space.size(), static_cast<double>(n - 1));
  budget.require("opponent profiles", profiles);
  budget.require("mechanism evaluations", profiles);

  CaseExtremes extremes;
  bool started = false;
  // Odometer over the opponents' joint reports, the last opponent fastest.
  std::vector<std::vector<int>> profile(n - 1, space.first());
  while (true) {
    std::vector<ApprovalVector> opponents;
    opponents.reserve(n - 1);
    for (const auto& masks : profile) opponents.push_back(vector_from_masks(masks, m));
    const Instance reported =
        instance_with_report(universe.projects, universe.ell, opponents, agent, report);
    const Outcome outcome = run_mechanism(mechanism, reported, budget);
    const int value = utility_against(truthful, outcome);
    if (!started || value < extremes.min_value) {
      extremes.min_value = value;
      extremes.argmin_profile = opponents;
    }
    if (!started || value > extremes.max_value) {
      extremes.max_value = value;
      extremes.argmax_profile = opponents;
    }
    started = true;

    int k = n - 2;
    for (; k >= 0; --k) {
      if (space.next(profile[k])) break;
      profile[k] = space.first();
    }
    if (k < 0) break;
  }
  return extremes;
}

AuditVerdict nom_audit(MechanismKind mechanism, const NomUniverse& universe, int agent,
                       const ApprovalVector& truthful, bool cp_only, const Budget& budget) {
  const int m = static_cast<int>(universe.projects.size());
  const ReportSpace space{m, universe.ell, cp_only};
  const double profiles = std::pow(space.size(), static_cast<double>(universe.num_agents - 1));
  budget.require("mechanism evaluations", profiles * (space.size() + 1.0));

  AuditVerdict verdict;
  verdict.property = AuditProperty::nom;
  verdict.search_space = "opponent profiles: (" + std::to_string(space.mask_limit() -
                                                                 space.first_mask()) +
                         "^" + std::to_string(universe.ell) + ")^" +
                         std::to_string(universe.num_agents - 1) + " = " +
                         std::to_string(static_cast<long long>(profiles)) +
                         "; reports: " + std::to_string(static_cast<long long>(space.size())) +
                         (cp_only ? " (nonempty sets only)" : "");

  const CaseExtremes honest =
      nom_case_utilities(mechanism, universe, agent, truthful, truthful, cp_only, budget);

  std::vector<int> masks = space.first();
  do {
    const ApprovalVector misreport = vector_from_masks(masks, m);
    const CaseExtremes lie =
        nom_case_utilities(mechanism, universe, agent, misreport, truthful, cp_only, budget);
    if (lie.min_value > honest.min_value || lie.max_value > honest.max_value) {
      const bool worst = lie.min_value > honest.min_value;
      verdict.violated = true;
      verdict.property = worst ? AuditProperty::nom_worst : AuditProperty::nom_best;
      AuditCertificate cert;
      cert.projects = universe.projects;
      cert.ell = universe.ell;
      cert.agent = agent;
      cert.truthful = truthful;
      cert.misreport = misreport;
      cert.truthful_opponents = worst ? honest.argmin_profile : honest.argmax_profile;
      cert.deviating_opponents = worst ? lie.argmin_profile : lie.argmax_profile;
      cert.truthful_utility = worst ? honest.min_value : honest.max_value;
      cert.deviating_utility = worst ? lie.min_value : lie.max_value;
      verdict.certificate = std::move(cert);
      return verdict;
    }
  } while (space.next(masks));
  return verdict;
}

bool certificate_replays(MechanismKind mechanism, const AuditCertificate& cert,
                         const Budget& budget) {
  const Instance honest = instance_with_report(cert.projects, cert.ell, cert.truthful_opponents,
                                               cert.agent, cert.truthful);
  const Instance deviating = instance_with_report(cert.projects, cert.ell,
                                                  cert.deviating_opponents, cert.agent,
                                                  cert.misreport);
  const int honest_value =
      utility_against(cert.truthful, run_mechanism(mechanism, honest, budget));
  const int deviating_value =
      utility_against(cert.truthful, run_mechanism(mechanism, deviating, budget));
  return honest_value == cert.truthful_utility && deviating_value == cert.deviating_utility;
}

}  // namespace tempvote
