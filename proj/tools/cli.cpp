#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tempvote/io.hpp"
#include "tempvote/lp.hpp"
#include "tempvote/mechanisms.hpp"
#include "tempvote/prop.hpp"
#include "tempvote/solvers.hpp"

namespace tempvote {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Budget budget_from_env() {
  Budget budget;
  if (const char* raw = std::getenv("TV_BUDGET")) {
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(value > 0))
      throw std::invalid_argument("TV_BUDGET must be a positive number");
    budget.limit = value;
  }
  return budget;
}

Objective parse_objective(const std::string& label) {
  if (label == "util") return Objective::utilitarian();
  if (label == "egal") return Objective::egalitarian();
  if (label == "nash") return Objective::nash();
  if (label.rfind("pmean:", 0) == 0) {
    const std::string tail = label.substr(6);
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot read the p-mean exponent in '" + label + "'");
    }
    if (used != tail.size())
      throw std::invalid_argument("cannot read the p-mean exponent in '" + label + "'");
    return Objective::p_mean(p);
  }
  throw std::invalid_argument("unknown objective '" + label +
                              "' (use util, egal, nash, or pmean:<p>)");
}

Outcome parse_outcome(const Instance& instance, const std::string& csv) {
  Outcome outcome;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    int index = -1;
    for (int p = 0; p < instance.num_projects(); ++p)
      if (instance.projects[p] == token) index = p;
    if (index < 0) throw std::invalid_argument("unknown project '" + token + "' in outcome");
    outcome.choices.push_back(index);
  }
  validate_outcome(instance, outcome);
  return outcome;
}

void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + output_path + "'");
  file << text;
}

const char* property_label(AuditProperty property) {
  switch (property) {
    case AuditProperty::sp:
      return "sp";
    case AuditProperty::nom:
      return "nom";
    case AuditProperty::nom_worst:
      return "nom-worst";
    case AuditProperty::nom_best:
      return "nom-best";
  }
  return "?";
}

Report approval_vector_names(const Instance& instance, const ApprovalVector& vec) {
  Report steps = Report::array();
  for (const ApprovalSet& s : vec) {
    Report one = Report::array();
    for (int p : s) one.push_back(instance.projects[p]);
    steps.push_back(std::move(one));
  }
  return steps;
}

Report certificate_report(const Instance& instance, MechanismKind mechanism,
                          const AuditCertificate& cert) {
  Report c;
  c["agent"] = instance.agents[cert.agent];
  c["truthful"] = approval_vector_names(instance, cert.truthful);
  c["misreport"] = approval_vector_names(instance, cert.misreport);
  Report honest_profile = Report::array();
  for (const ApprovalVector& vec : cert.truthful_opponents)
    honest_profile.push_back(approval_vector_names(instance, vec));
  c["truthful_opponents"] = std::move(honest_profile);
  Report lying_profile = Report::array();
  for (const ApprovalVector& vec : cert.deviating_opponents)
    lying_profile.push_back(approval_vector_names(instance, vec));
  c["deviating_opponents"] = std::move(lying_profile);
  c["truthful_utility"] = cert.truthful_utility;
  c["deviating_utility"] = cert.deviating_utility;
  c["replays"] = certificate_replays(mechanism, cert);
  return c;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"temporal approval election toolkit"};
  app.require_subcommand(1);

  std::string instance_path, output_path;
  std::string objective_label = "util", method = "greedy";
  int lambda = 1;
  auto* solve = app.add_subcommand("solve", "optimize a welfare objective");
  solve->add_option("--instance", instance_path, "instance file (- for stdin)")->required();
  solve->add_option("--objective", objective_label, "util | egal | nash | pmean:<p>");
  solve->add_option("--method", method, "greedy | brute | dp | ilp | cp2");
  solve->add_option("--lambda", lambda, "target minimum utility for cp2");
  solve->add_option("--output", output_path, "write the report here instead of stdout");

  std::uint64_t seed = 0;
  int trials = 50;
  auto* approx = app.add_subcommand("approx-egal", "lp relaxation plus randomized rounding");
  approx->add_option("--instance", instance_path, "instance file (- for stdin)")->required();
  approx->add_option("--seed", seed, "rounding seed");
  approx->add_option("--trials", trials, "rounding trials");
  approx->add_option("--output", output_path, "write the report here instead of stdout");

  std::string outcome_csv;
  auto* prop = app.add_subcommand("prop", "proportionality tools");
  prop->require_subcommand(1);
  auto* prop_greedy = prop->add_subcommand("greedy", "build a proportional outcome");
  auto* prop_check = prop->add_subcommand("check", "test an outcome for proportionality");
  auto* prop_transform = prop->add_subcommand("transform", "repair an outcome, keeping egal");
  auto* prop_pjr = prop->add_subcommand("pjr", "strong proportional justified representation");
  for (auto* sub : {prop_greedy, prop_check, prop_transform, prop_pjr}) {
    sub->add_option("--instance", instance_path, "instance file (- for stdin)")->required();
    sub->add_option("--output", output_path, "write the report here instead of stdout");
  }
  for (auto* sub : {prop_check, prop_transform, prop_pjr})
    sub->add_option("--outcome", outcome_csv, "comma-separated project names")->required();

  std::string measure_label = "poprop";
  auto* price = app.add_subcommand("price", "price of proportionality");
  price->add_option("--instance", instance_path, "instance file (- for stdin)")->required();
  price->add_option("--measure", measure_label, "poprop | spoprop");
  price->add_option("--objective", objective_label, "util | egal");
  price->add_option("--output", output_path, "write the report here instead of stdout");

  std::string mechanism_label = "mlex", property_arg = "sp";
  bool cp_only = false;
  int agent_arg = 0;
  auto* audit = app.add_subcommand("audit", "manipulability audits");
  audit->add_option("--instance", instance_path, "instance file (- for stdin)")->required();
  audit->add_option("--mechanism", mechanism_label, "mlex | greedyutil");
  audit->add_option("--property", property_arg, "sp | nom");
  audit->add_flag("--cp-only", cp_only, "restrict reports to nonempty approval sets");
  audit->add_option("--agent", agent_arg, "audit a single agent (1-based)");
  audit->add_option("--output", output_path, "write the report here instead of stdout");

  std::string source_path;
  int cover_k = 0, dominate_kappa = 1;
  auto* reduce = app.add_subcommand("reduce", "hardness reductions as generators");
  reduce->require_subcommand(1);
  auto* reduce_vc = reduce->add_subcommand("vc", "vertex cover to unique preferences");
  reduce_vc->add_option("--input", source_path, "graph file (- for stdin)")->required();
  reduce_vc->add_option("--k", cover_k, "cover size")->required();
  auto* reduce_sat = reduce->add_subcommand("sat", "3-sat to two projects");
  reduce_sat->add_option("--input", source_path, "cnf file (- for stdin)")->required();
  auto* reduce_ds = reduce->add_subcommand("ds", "dominating set to complete preferences");
  reduce_ds->add_option("--input", source_path, "graph file (- for stdin)")->required();
  reduce_ds->add_option("--kappa", dominate_kappa, "dominating set size")->required();
  for (auto* sub : {reduce_vc, reduce_sat, reduce_ds})
    sub->add_option("--output", output_path, "write the instance here instead of stdout");

  std::string model_label = "general";
  int gen_agents = 0, gen_projects = 0, gen_ell = 0;
  double density = 0.5;
  auto* gen = app.add_subcommand("gen", "random instances");
  gen->add_option("--model", model_label, "general | cp | up");
  gen->add_option("--agents", gen_agents, "agent count")->required();
  gen->add_option("--projects", gen_projects, "project count")->required();
  gen->add_option("--ell", gen_ell, "timestep count")->required();
  gen->add_option("--density", density, "approval probability");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--output", output_path, "write the instance here instead of stdout");

  std::vector<const char*> argv;
  argv.push_back("tempvote");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    const int code = app.exit(e, sink, sink);
    out << sink.str();
    if (code != 0) throw std::invalid_argument(sink.str());
    return 0;
  }

  const Budget budget = budget_from_env();

  if (solve->parsed()) {
    const Instance instance = parse_instance(read_input(instance_path));
    const Objective objective = parse_objective(objective_label);
    Report report = report_header("solve", instance);
    report["objective"] = objective_label;
    report["method"] = method;
    report["budget"] = budget.limit;
    const bool integer_welfare = objective.kind == Objective::Kind::utilitarian ||
                                 objective.kind == Objective::Kind::egalitarian;
    const auto put_welfare = [&](double value) {
      if (integer_welfare)
        report["welfare"] = static_cast<long long>(value + (value < 0 ? -0.5 : 0.5));
      else
        report["welfare"] = value;
    };
    if (method == "greedy") {
      const Outcome outcome = greedy_util(instance);
      report["outcome"] = outcome_names(instance, outcome);
      put_welfare(welfare(instance, outcome, objective));
    } else if (method == "brute") {
      const SolveResult result = exhaustive_opt(instance, objective, budget);
      report["outcome"] = outcome_names(instance, result.outcome);
      put_welfare(result.value);
    } else if (method == "dp") {
      const SolveResult result = pmean_dp(instance, objective, budget);
      report["outcome"] = outcome_names(instance, result.outcome);
      put_welfare(result.value);
    } else if (method == "ilp") {
      if (objective.kind != Objective::Kind::egalitarian)
        throw std::invalid_argument("method ilp optimizes the egal objective only");
      const EgalIlpResult result = egal_type_ilp(instance, budget);
      report["outcome"] = outcome_names(instance, result.outcome);
      report["welfare"] = result.lambda;
    } else if (method == "cp2") {
      if (objective.kind != Objective::Kind::egalitarian)
        throw std::invalid_argument("method cp2 decides the egal objective only");
      report["lambda"] = lambda;
      const std::optional<Outcome> outcome = cp2_solve(instance, lambda, budget);
      report["found"] = outcome.has_value();
      if (outcome) report["outcome"] = outcome_names(instance, *outcome);
    } else {
      throw std::invalid_argument("unknown method '" + method +
                                  "' (use greedy, brute, dp, ilp, or cp2)");
    }
    emit(write_report(report), output_path, out);
    return 0;
  }

  if (approx->parsed()) {
    if (trials < 1) throw std::invalid_argument("trials must be at least one");
    const Instance instance = parse_instance(read_input(instance_path));
    const FractionalPlan plan = solve_lp_egal(instance);
    const RoundResult rounded = round_egal(instance, plan, seed, trials);
    Report report = report_header("approx-egal", instance);
    report["seed"] = seed;
    report["trials"] = trials;
    report["eta_star"] = plan.eta_star;
    report["outcome"] = outcome_names(instance, rounded.outcome);
    report["value"] = rounded.value;
    emit(write_report(report), output_path, out);
    return 0;
  }

  if (prop->parsed()) {
    const Instance instance = parse_instance(read_input(instance_path));
    if (prop_greedy->parsed()) {
      const Outcome outcome = greedy_prop(instance);
      Report report = report_header("prop greedy", instance);
      report["outcome"] = outcome_names(instance, outcome);
      report["prop"] = is_prop(instance, outcome).satisfied;
      emit(write_report(report), output_path, out);
      return 0;
    }
    const Outcome given = parse_outcome(instance, outcome_csv);
    if (prop_check->parsed()) {
      const PropReport result = is_prop(instance, given);
      Report report = report_header("prop check", instance);
      report["outcome"] = outcome_names(instance, given);
      report["satisfied"] = result.satisfied;
      Report violations = Report::array();
      for (const PropViolation& v : result.violations) {
        Report one;
        one["agent"] = instance.agents[v.agent];
        one["utility"] = v.utility;
        one["quota"] = v.quota;
        violations.push_back(std::move(one));
      }
      report["violations"] = std::move(violations);
      emit(write_report(report), output_path, out);
      return 0;
    }
    if (prop_transform->parsed()) {
      const Outcome repaired = propify_keep_egal(instance, given);
      Report report = report_header("prop transform", instance);
      report["input_outcome"] = outcome_names(instance, given);
      report["outcome"] = outcome_names(instance, repaired);
      report["egal_before"] = static_cast<long long>(welfare(instance, given, Objective::egalitarian()));
      report["egal_after"] = static_cast<long long>(welfare(instance, repaired, Objective::egalitarian()));
      report["prop"] = is_prop(instance, repaired).satisfied;
      emit(write_report(report), output_path, out);
      return 0;
    }
    const StrongPjrReport result = strong_pjr_check(instance, given);
    Report report = report_header("prop pjr", instance);
    report["outcome"] = outcome_names(instance, given);
    report["satisfied"] = result.satisfied;
    if (result.witness) {
      Report w;
      Report group = Report::array();
      for (int i : result.witness->group) group.push_back(instance.agents[i]);
      w["group"] = std::move(group);
      w["s"] = result.witness->s;
      w["k"] = result.witness->k;
      w["covered_timesteps"] = result.witness->covered_timesteps;
      report["witness"] = std::move(w);
    }
    emit(write_report(report), output_path, out);
    return 0;
  }

  if (price->parsed()) {
    const Instance instance = parse_instance(read_input(instance_path));
    PriceMeasure measure;
    if (measure_label == "poprop")
      measure = PriceMeasure::poprop;
    else if (measure_label == "spoprop")
      measure = PriceMeasure::s_poprop;
    else
      throw std::invalid_argument("unknown measure '" + measure_label +
                                  "' (use poprop or spoprop)");
    const Objective objective = parse_objective(objective_label);
    const PriceReport result = price_of_prop(instance, measure, objective.kind, budget);
    Report report = report_header("price", instance);
    report["measure"] = measure_label;
    report["objective"] = objective_label;
    report["budget"] = budget.limit;
    report["optimum"] = result.optimum;
    report["prop_welfare"] = result.prop_welfare;
    report["infinite"] = result.infinite;
    if (!result.infinite) report["ratio"] = result.ratio.str();
    emit(write_report(report), output_path, out);
    return 0;
  }

  if (audit->parsed()) {
    const Instance instance = parse_instance(read_input(instance_path));
    MechanismKind mechanism;
    if (mechanism_label == "mlex")
      mechanism = MechanismKind::leximin;
    else if (mechanism_label == "greedyutil")
      mechanism = MechanismKind::greedy_util;
    else
      throw std::invalid_argument("unknown mechanism '" + mechanism_label +
                                  "' (use mlex or greedyutil)");
    std::optional<int> agent;
    if (audit->count("--agent")) {
      if (agent_arg < 1 || agent_arg > instance.num_agents())
        throw std::invalid_argument("agent index out of range (agents are 1-based)");
      agent = agent_arg - 1;
    }
    AuditVerdict verdict;
    if (property_arg == "sp") {
      verdict = sp_audit(mechanism, instance, agent, cp_only, budget);
    } else if (property_arg == "nom") {
      const NomUniverse universe{instance.projects, instance.ell, instance.num_agents()};
      const int from = agent ? *agent : 0;
      const int to = agent ? *agent : instance.num_agents() - 1;
      for (int i = from; i <= to; ++i) {
        verdict = nom_audit(mechanism, universe, i, instance.approvals[i], cp_only, budget);
        if (verdict.violated) break;
      }
    } else {
      throw std::invalid_argument("unknown property '" + property_arg + "' (use sp or nom)");
    }
    Report report = report_header("audit", instance);
    report["mechanism"] = mechanism_label;
    report["property"] = property_label(verdict.property);
    report["cp_only"] = cp_only;
    report["budget"] = budget.limit;
    report["violated"] = verdict.violated;
    report["search_space"] = verdict.search_space;
    if (verdict.certificate)
      report["certificate"] = certificate_report(instance, mechanism, *verdict.certificate);
    emit(write_report(report), output_path, out);
    return 0;
  }

  if (reduce->parsed()) {
    Instance instance = [&] {
      if (reduce_vc->parsed()) return from_vertex_cover(parse_graph(read_input(source_path)), cover_k);
      if (reduce_sat->parsed()) return from_3sat(parse_cnf(read_input(source_path)));
      return from_dominating_set(parse_graph(read_input(source_path)), dominate_kappa);
    }();
    emit(serialize_instance(instance), output_path, out);
    return 0;
  }

  // gen
  RandomModel model;
  if (model_label == "general")
    model = RandomModel::general;
  else if (model_label == "cp")
    model = RandomModel::cp;
  else if (model_label == "up")
    model = RandomModel::up;
  else
    throw std::invalid_argument("unknown model '" + model_label + "' (use general, cp, or up)");
  const Instance instance = generate_random(model, gen_agents, gen_projects, gen_ell, density, seed);
  emit(serialize_instance(instance), output_path, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tempvote
