#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempvote/budget.hpp"
#include "tempvote/core.hpp"

namespace tempvote {

enum class MechanismKind { greedy_util, leximin };

// The egalitarian-leximin mechanism: among egalitarian optima the leximin
// winner, final ties to the lexicographically smallest choice sequence.
Outcome leximin_outcome(const Instance&, const Budget& = {});

Outcome run_mechanism(MechanismKind, const Instance&, const Budget& = {});

enum class AuditProperty { sp, nom, nom_worst, nom_best };

// Everything needed to replay a manipulation claim from scratch: the agent,
// both of her reports, and the opponent profiles under which each side's
// utility was measured (for strategyproofness both sides share one profile).
struct AuditCertificate {
  std::vector<std::string> projects;
  int ell = 0;
  int agent = 0;
  ApprovalVector truthful;
  ApprovalVector misreport;
  std::vector<ApprovalVector> truthful_opponents;   // agents != agent, in order
  std::vector<ApprovalVector> deviating_opponents;  // ditto, for the misreport side
  int truthful_utility = 0;
  int deviating_utility = 0;
};

struct AuditVerdict {
  AuditProperty property = AuditProperty::sp;
  bool violated = false;
  std::optional<AuditCertificate> certificate;
  std::string search_space;
};

// Looks for a profitable misreport on the given instance, taking the other
// agents' ballots as fixed. Misreports range over every approval vector
// (including empty sets), or over nonempty sets only when cp_only is set,
// which requires a CP instance. Audits all agents unless one is given.
AuditVerdict sp_audit(MechanismKind, const Instance&, std::optional<int> agent = {},
                      bool cp_only = false, const Budget& = {});

// The shape of a not-obvious-manipulability audit: the mechanism, the set of
// possible opponents, and one agent's truthful preferences.
struct NomUniverse {
  std::vector<std::string> projects;
  int ell = 0;
  int num_agents = 0;
};

struct CaseExtremes {
  int min_value = 0;
  int max_value = 0;
  std::vector<ApprovalVector> argmin_profile;
  std::vector<ApprovalVector> argmax_profile;
};

// Worst and best utility the agent (judged by her truthful preferences) can
// receive under the given report, across every opponent profile.
CaseExtremes nom_case_utilities(MechanismKind, const NomUniverse&, int agent,
                                const ApprovalVector& report, const ApprovalVector& truthful,
                                bool cp_only = false, const Budget& = {});

// A misreport counts as an obvious manipulation when it beats the truth in
// the worst case or in the best case. Checks worst first.
AuditVerdict nom_audit(MechanismKind, const NomUniverse&, int agent,
                       const ApprovalVector& truthful, bool cp_only = false, const Budget& = {});

// Re-runs the mechanism on both sides of a certificate and confirms the
// claimed utilities.
bool certificate_replays(MechanismKind, const AuditCertificate&, const Budget& = {});

}  // namespace tempvote
