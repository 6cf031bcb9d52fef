// End-to-end checks over seeded corpora. Each criterion prints one PASS/FAIL
// line; the exit code is nonzero when any of them fail.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "tempvote/io.hpp"
#include "tempvote/lp.hpp"
#include "tempvote/mechanisms.hpp"
#include "tempvote/prop.hpp"
#include "tempvote/reductions.hpp"
#include "tempvote/solvers.hpp"

using namespace tempvote;
using namespace tempvote::tests;

namespace {

struct Failure {
  std::string detail;
};

void require(bool condition, const std::string& detail) {
  if (!condition) throw Failure{detail};
}

std::string count_detail(const char* what, int count) {
  return std::string(what) + " on " + std::to_string(count) + " cases";
}

Instance corpus_instance(int i, std::uint64_t seed_base) {
  const RandomModel model = static_cast<RandomModel>(i % 3);
  const int n = 1 + i % 4;
  const int m = 1 + (i / 2) % 3;
  const int ell = 1 + (i * 2) % 5;
  const double density = 0.25 + 0.25 * (i % 3);
  return generate_random(model, n, m, ell, density, seed_base + i);
}

long long exhaustive_egal(const Instance& inst) {
  return static_cast<long long>(exhaustive_opt(inst, Objective::egalitarian()).value + 0.5);
}

std::string util_optimality() {
  for (int i = 0; i < 200; ++i) {
    const Instance inst = corpus_instance(i, 1000);
    const double greedy = welfare(inst, greedy_util(inst), Objective::utilitarian());
    const double best = exhaustive_opt(inst, Objective::utilitarian()).value;
    require(greedy == best, "greedy fell short on seed " + std::to_string(1000 + i));
  }
  return count_detail("greedy matched the enumerated optimum", 200);
}

std::string egal_agreement() {
  for (int i = 0; i < 200; ++i) {
    const Instance inst = corpus_instance(i, 1000);
    const long long brute = exhaustive_egal(inst);
    const long long dp =
        static_cast<long long>(pmean_dp(inst, Objective::egalitarian()).value + 0.5);
    const long long ilp = egal_type_ilp(inst).lambda;
    require(brute == dp, "reachability table disagreed on seed " + std::to_string(1000 + i));
    require(brute == ilp, "integer program disagreed on seed " + std::to_string(1000 + i));
  }
  return count_detail("three egalitarian solvers agreed", 200);
}

std::string two_project_decision() {
  int checked = 0, guaranteed = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 5;
    const int ell = 1 + (i * 3) % 9;
    const Instance inst = generate_random(RandomModel::cp, n, 2, ell, 0.5, 2000 + i);
    const long long optimum = exhaustive_egal(inst);
    for (int lambda = 1; lambda <= 3; ++lambda) {
      const auto outcome = cp2_solve(inst, lambda);
      require(outcome.has_value() == (optimum >= lambda),
              "decision mismatched the optimum on seed " + std::to_string(2000 + i) +
                  " at lambda " + std::to_string(lambda));
      if (outcome) {
        const std::vector<int> utils = utilities(inst, *outcome);
        require(*std::min_element(utils.begin(), utils.end()) >= lambda,
                "returned outcome misses the target on seed " + std::to_string(2000 + i));
      }
      ++checked;
      // Long horizons must always succeed: with floor(ell / lambda) block
      // rounds per agent-halving step the greedy construction cannot fail.
      if (ell / lambda >= static_cast<int>(std::bit_width(static_cast<unsigned>(n)))) {
        require(outcome.has_value(),
                "long horizon still failed on seed " + std::to_string(2000 + i));
        ++guaranteed;
      }
    }
  }
  require(guaranteed > 0, "the long-horizon guarantee was never exercised");
  return "success tracked the optimum on " + std::to_string(checked) + " queries (" +
         std::to_string(guaranteed) + " under the long-horizon guarantee)";
}

std::string frozen_ratios() {
  const PriceReport blocs = price_of_prop(static_blocs(), PriceMeasure::poprop,
                                          Objective::Kind::utilitarian);
  require(!blocs.infinite && blocs.ratio.num == 4 && blocs.ratio.den == 3,
          "four static blocs should price at 4/3");
  // n / (2 sqrt(n) - 1) at n = 4 is that same 4/3.
  require(blocs.ratio.value() == 4.0 / (2.0 * std::sqrt(4.0) - 1.0),
          "the 4/3 ratio should meet the square-root bound with equality");

  for (const Objective::Kind kind :
       {Objective::Kind::utilitarian, Objective::Kind::egalitarian}) {
    const PriceReport worst = price_of_prop(unanimous(2, 3), PriceMeasure::s_poprop, kind);
    require(!worst.infinite && worst.ratio.num == 3 && worst.ratio.den == 1,
            "the unanimous pair should have worst-case price 3");
    const PriceReport starved = price_of_prop(unanimous(2, 1), PriceMeasure::s_poprop, kind);
    require(starved.infinite, "a single shared timestep should price as infinite");
  }
  return "4/3, 3, and the infinite flag all reproduced";
}

std::string egal_price_is_one() {
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    const int m = 1 + i % 3;
    const int ell = 1 + (i * 3) % 6;
    const Instance inst = generate_random(RandomModel::general, n, m, ell,
                                          0.25 + 0.25 * (i % 3), 5000 + i);
    const PriceReport price =
        price_of_prop(inst, PriceMeasure::poprop, Objective::Kind::egalitarian);
    require(!price.infinite && price.ratio.num == price.ratio.den,
            "the egalitarian price exceeded one on seed " + std::to_string(5000 + i));

    const SolveResult best = exhaustive_opt(inst, Objective::egalitarian());
    const Outcome repaired = propify_keep_egal(inst, best.outcome);
    require(is_prop(inst, repaired).satisfied,
            "repair of an optimum came out disproportional on seed " + std::to_string(5000 + i));
    require(welfare(inst, repaired, Objective::egalitarian()) == best.value,
            "repair of an optimum lost egalitarian value on seed " + std::to_string(5000 + i));
  }
  return count_detail("ratio one and value-preserving repair", 100);
}

std::string proportional_builder() {
  for (int i = 0; i < 1000; ++i) {
    const RandomModel model = static_cast<RandomModel>(i % 3);
    const int n = 1 + i % 6;
    const int m = 1 + (i / 3) % 4;
    const int ell = 1 + (i * 5) % 8;
    const Instance inst = generate_random(model, n, m, ell, 0.25 + 0.25 * (i % 3), 10000 + i);
    require(is_prop(inst, greedy_prop(inst)).satisfied,
            "builder missed a quota on seed " + std::to_string(10000 + i));
  }
  return count_detail("every built outcome was proportional", 1000);
}

std::string rounding_guarantee() {
  for (int i = 0; i < 20; ++i) {
    const int m = 2 + i % 2;
    const int ell = 6 + i % 4;
    Instance base = generate_random(RandomModel::cp, 3, m, ell, 0.5, 7000 + i);
    std::vector<ApprovalVector> approvals = base.approvals;
    for (ApprovalVector& vec : approvals)
      for (int t = 0; t < 5; ++t)
        if (!std::binary_search(vec[t].begin(), vec[t].end(), 0)) vec[t].insert(vec[t].begin(), 0);
    const Instance inst = Instance::make(base.projects, ell, std::move(approvals));

    const FractionalPlan plan = solve_lp_egal(inst);
    require(plan.eta_star >= 6.0 - 1e-9,
            "the shared project should push the relaxation past six");
    const RoundResult first = round_egal(inst, plan, 9000 + i, 50);
    require(first.value >= plan.eta_star / 5.0 - 1e-9,
            "rounding missed a fifth of the relaxation on seed " + std::to_string(7000 + i));
    const RoundResult second = round_egal(inst, plan, 9000 + i, 50);
    require(first.outcome == second.outcome && first.value == second.value,
            "the same seed produced different roundings on seed " + std::to_string(7000 + i));
  }
  return count_detail("value at least a fifth of the relaxation, reproducibly", 20);
}

std::vector<ApprovalVector> all_vectors(int num_projects, int ell, bool nonempty_sets) {
  const int limit = 1 << num_projects;
  const int first = nonempty_sets ? 1 : 0;
  std::vector<ApprovalVector> out;
  std::vector<int> masks(ell, first);
  while (true) {
    ApprovalVector vec(ell);
    for (int t = 0; t < ell; ++t)
      for (int p = 0; p < num_projects; ++p)
        if (masks[t] & (1 << p)) vec[t].push_back(p);
    out.push_back(std::move(vec));
    int t = ell - 1;
    for (; t >= 0; --t) {
      if (masks[t] + 1 < limit) {
        ++masks[t];
        break;
      }
      masks[t] = first;
    }
    if (t < 0) break;
  }
  return out;
}

std::string strategyproofness_audits() {
  const std::vector<ApprovalVector> universe = all_vectors(2, 2, false);
  int audited = 0;
  for (const ApprovalVector& left : universe)
    for (const ApprovalVector& right : universe) {
      const Instance inst =
          Instance::make({"p1", "p2"}, 2, {left, right}, {}, AgentRule::allow_empty);
      require(!sp_audit(MechanismKind::greedy_util, inst).violated,
              "per-round greedy admitted a profitable misreport");
      ++audited;
    }

  const Instance bait = Instance::make({"a", "b", "c"}, 2, {{{0}, {0}}, {{0}, {1}}});
  const AuditVerdict verdict = sp_audit(MechanismKind::leximin, bait);
  require(verdict.violated, "the egalitarian mechanism should be manipulable here");
  require(verdict.certificate.has_value() &&
              certificate_replays(MechanismKind::leximin, *verdict.certificate),
          "the manipulation certificate failed to replay");
  return "greedy clean on " + std::to_string(audited) +
         " truthful profiles; egalitarian violation replayed";
}

std::string obvious_manipulation_audits() {
  const NomUniverse universe{{"p1", "p2"}, 2, 2};
  const AuditVerdict verdict =
      nom_audit(MechanismKind::leximin, universe, 0, {{0, 1}, {0}});
  require(verdict.violated && verdict.property == AuditProperty::nom_worst,
          "the worst-case manipulation went undetected");
  require(verdict.certificate.has_value() &&
              certificate_replays(MechanismKind::leximin, *verdict.certificate),
          "the worst-case certificate failed to replay");

  int clean = 0;
  for (const ApprovalVector& truthful : all_vectors(2, 2, true))
    for (int agent = 0; agent < 2; ++agent) {
      require(!nom_audit(MechanismKind::leximin, universe, agent, truthful, true).violated,
              "a nonempty-report audit flagged the egalitarian mechanism");
      ++clean;
    }
  return "worst-case violation replayed; " + std::to_string(clean) +
         " nonempty-report audits clean";
}

std::string reduction_round_trips() {
  const Budget roomy{1e9};
  std::mt19937_64 rng(424242);
  const auto uniform = [&](int bound) {
    return static_cast<int>(rng() % static_cast<unsigned>(bound));
  };
  for (int i = 0; i < 50; ++i) {
    const int v = 1 + i % 7;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b)
        if (uniform(100) < 45) edges.push_back({a, b});
    const Graph g = Graph::make(v, std::move(edges));

    const int k = v == 1 ? 0 : uniform(v);
    const Instance cover = from_vertex_cover(g, k);
    require(cover.is_up(), "the cover election should have unique approvals");
    require(vertex_cover_exists(g, k) == (egal_type_ilp(cover, roomy).lambda >= 1),
            "cover answer diverged on graph " + std::to_string(i));

    const int kappa = 1 + uniform(std::min(3, v));
    const Instance dominating = from_dominating_set(g, kappa);
    require(dominating.is_cp(), "the domination election should have complete preferences");
    require(dominating_set_exists(g, kappa) == (egal_type_ilp(dominating, roomy).lambda >= 1),
            "domination answer diverged on graph " + std::to_string(i));
  }
  for (int i = 0; i < 50; ++i) {
    const int vars = 2 + i % 5;
    std::vector<std::vector<int>> clauses;
    const int count = 1 + uniform(8);
    for (int c = 0; c < count; ++c) {
      std::vector<int> clause;
      const int width = 1 + uniform(3);
      for (int j = 0; j < width; ++j) {
        const int variable = 1 + uniform(vars);
        clause.push_back(uniform(2) ? variable : -variable);
      }
      clauses.push_back(std::move(clause));
    }
    const CnfFormula f = CnfFormula::make(vars, std::move(clauses));
    const Instance inst = from_3sat(f);
    require(satisfiable(f) == (exhaustive_egal(inst) >= 1),
            "satisfiability answer diverged on formula " + std::to_string(i));
  }
  return count_detail("oracle and election verdicts matched", 150);
}

std::string quota_floor_inequality() {
  int checked = 0;
  for (long long n = 1; n <= 50; ++n)
    for (long long k = n; k <= 200; ++k) {
      require((k / n) * (2 * n - 1) >= k,
              "floor inequality failed at n " + std::to_string(n) + ", k " + std::to_string(k));
      ++checked;
    }
  return count_detail("floor(k/n) >= k/(2n-1) held", checked);
}

std::string strong_representation_implies_prop() {
  int satisfied = 0, outcomes = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 4;
    const int m = 2 + i % 2;
    const int ell = 1 + i % 4;
    const Instance inst = generate_random(static_cast<RandomModel>(i % 3), n, m, ell,
                                          0.25 + 0.25 * (i % 3), 12000 + i);
    for_each_outcome(inst, Budget{}, [&](const Outcome& outcome, const std::vector<int>&) {
      ++outcomes;
      if (!strong_pjr_check(inst, outcome).satisfied) return;
      ++satisfied;
      require(is_prop(inst, outcome).satisfied,
              "a strongly representative outcome broke a quota on seed " +
                  std::to_string(12000 + i));
    });
  }
  require(satisfied > 0, "no outcome ever passed the group check");
  return std::to_string(satisfied) + " of " + std::to_string(outcomes) +
         " outcomes passed the group check and every one was proportional";
}

struct Criterion {
  const char* name;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"util optimality", util_optimality},
      {"egal solver agreement", egal_agreement},
      {"two-project decision", two_project_decision},
      {"frozen price ratios", frozen_ratios},
      {"egal price of proportionality", egal_price_is_one},
      {"proportional builder", proportional_builder},
      {"rounding guarantee", rounding_guarantee},
      {"strategyproofness audits", strategyproofness_audits},
      {"obvious-manipulation audits", obvious_manipulation_audits},
      {"reduction round trips", reduction_round_trips},
      {"quota floor inequality", quota_floor_inequality},
      {"strong representation implies proportionality", strong_representation_implies_prop},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string verdict = "PASS", detail;
    try {
      detail = criteria[i].run();
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.detail;
      ++failures;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("unexpected error: ") + e.what();
      ++failures;
    }
    std::printf("[%zu/%zu] %s %s: %s\n", i + 1, criteria.size(), verdict.c_str(),
                criteria[i].name, detail.c_str());
  }
  return failures > 0 ? 1 : 0;
}
