#include "tempvote/io.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace tempvote {

namespace {

using nlohmann::json;

int line_of_byte(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + end, '\n'));
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (std::find_if(known.begin(), known.end(),
                     [&](const char* k) { return key == k; }) == known.end())
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("parse error at line " + std::to_string(line_of_byte(text, e.byte)) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("instance document must be an object");
  reject_unknown_keys(doc, {"projects", "ell", "agents"}, "instance document");
  if (!doc.contains("projects") || !doc["projects"].is_array())
    throw std::invalid_argument("instance document needs a 'projects' array");
  if (!doc.contains("ell") || !doc["ell"].is_number_integer())
    throw std::invalid_argument("instance document needs an integer 'ell'");
  if (!doc.contains("agents") || !doc["agents"].is_array())
    throw std::invalid_argument("instance document needs an 'agents' array");

  std::vector<std::string> projects;
  std::map<std::string, int> project_index;
  for (const auto& entry : doc["projects"]) {
    if (!entry.is_string()) throw std::invalid_argument("project names must be strings");
    project_index.emplace(entry.get<std::string>(), static_cast<int>(projects.size()));
    projects.push_back(entry.get<std::string>());
  }
  const int ell = doc["ell"].get<int>();

  std::vector<std::string> names;
  std::vector<ApprovalVector> approvals;
  for (const auto& agent : doc["agents"]) {
    if (!agent.is_object()) throw std::invalid_argument("agent entries must be objects");
    reject_unknown_keys(agent, {"name", "approvals"}, "agent entry");
    if (!agent.contains("name") || !agent["name"].is_string())
      throw std::invalid_argument("agent entries need a string 'name'");
    if (!agent.contains("approvals") || !agent["approvals"].is_array())
      throw std::invalid_argument("agent entries need an 'approvals' array");
    const std::string name = agent["name"].get<std::string>();
    ApprovalVector vec;
    for (const auto& step : agent["approvals"]) {
      if (!step.is_array())
        throw std::invalid_argument("approvals of agent '" + name +
                                    "' must be arrays of project names");
      ApprovalSet s;
      for (const auto& project : step) {
        if (!project.is_string())
          throw std::invalid_argument("approvals of agent '" + name + "' must name projects");
        const auto it = project_index.find(project.get<std::string>());
        if (it == project_index.end())
          throw std::invalid_argument("unknown project '" + project.get<std::string>() +
                                      "' in approvals of agent '" + name + "'");
        s.push_back(it->second);
      }
      vec.push_back(std::move(s));
    }
    names.push_back(name);
    approvals.push_back(std::move(vec));
  }
  return Instance::make(std::move(projects), ell, std::move(approvals), std::move(names));
}

std::string serialize_instance(const Instance& instance) {
  Report doc;
  doc["projects"] = instance.projects;
  doc["ell"] = instance.ell;
  doc["agents"] = Report::array();
  for (int i = 0; i < instance.num_agents(); ++i) {
    Report entry;
    entry["name"] = instance.agents[i];
    Report steps = Report::array();
    for (const ApprovalSet& s : instance.approvals[i]) {
      Report one = Report::array();
      for (int p : s) one.push_back(instance.projects[p]);
      steps.push_back(std::move(one));
    }
    entry["approvals"] = std::move(steps);
    doc["agents"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string instance_digest(const Instance& instance) {
  const std::string text = serialize_instance(instance);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string digest(16, '0');
  for (int i = 15; i >= 0; --i) {
    digest[i] = hex[h & 0xf];
    h >>= 4;
  }
  return digest;
}

Instance generate_random(RandomModel model, int n, int m, int ell, double density,
                         std::uint64_t seed) {
  if (n < 1 || m < 1 || ell < 1)
    throw std::invalid_argument("instance dimensions must be at least one");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("density must lie in (0, 1]");

  std::mt19937_64 rng(detail::splitmix64(seed));
  const auto coin = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < density; };
  const auto uniform = [&](int bound) { return static_cast<int>(rng() % static_cast<unsigned>(bound)); };

  std::vector<ApprovalVector> approvals(n, ApprovalVector(ell));
  if (model == RandomModel::up) {
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < ell; ++t) approvals[i][t] = {uniform(m)};
  } else {
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < ell; ++t)
        for (int p = 0; p < m; ++p)
          if (coin()) approvals[i][t].push_back(p);
    if (model == RandomModel::cp) {
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < ell; ++t)
          if (approvals[i][t].empty()) approvals[i][t].push_back(uniform(m));
    } else {
      for (int i = 0; i < n; ++i) {
        bool any = false;
        for (const ApprovalSet& s : approvals[i]) any = any || !s.empty();
        if (!any) approvals[i][uniform(ell)].push_back(uniform(m));
      }
    }
  }

  std::vector<std::string> projects;
  for (int p = 0; p < m; ++p) projects.push_back("p" + std::to_string(p + 1));
  return Instance::make(std::move(projects), ell, std::move(approvals));
}

std::string write_report(const Report& report) { return report.dump(2) + "\n"; }

Report report_header(const std::string& command, const Instance& instance) {
  Report report;
  report["command"] = command;
  report["instance"] = instance_digest(instance);
  return report;
}

Report outcome_names(const Instance& instance, const Outcome& outcome) {
  Report names = Report::array();
  for (int p : outcome.choices) names.push_back(instance.projects[p]);
  return names;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  int v = 0, e = 0;
  if (!(in >> v >> e)) throw ParseError("graph file must start with \"vertices edges\"");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < e; ++i) {
    int a = 0, b = 0;
    if (!(in >> a >> b))
      throw ParseError("graph file ended before edge " + std::to_string(i + 1) + " of " +
                       std::to_string(e));
    if (a < 1 || a > v || b < 1 || b > v)
      throw std::invalid_argument("edge endpoint out of range (vertices are 1-based)");
    edges.emplace_back(a - 1, b - 1);
  }
  std::string leftover;
  if (in >> leftover) throw ParseError("trailing content after the declared edges");
  return Graph::make(v, std::move(edges));
}

CnfFormula parse_cnf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int vars = -1, declared = -1;
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;
    if (head == "c") continue;
    if (head == "p") {
      std::string kind;
      if (!(fields >> kind >> vars >> declared) || kind != "cnf")
        throw ParseError("line " + std::to_string(line_number) +
                         ": header must read \"p cnf <vars> <clauses>\"");
      continue;
    }
    if (vars < 0)
      throw ParseError("line " + std::to_string(line_number) + ": clause before the p cnf header");
    fields.clear();
    fields.str(line);
    int lit;
    while (fields >> lit) {
      if (lit == 0) {
        clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
    if (!fields.eof())
      throw ParseError("line " + std::to_string(line_number) + ": clause lines hold integers only");
  }
  if (vars < 0) throw ParseError("missing p cnf header");
  if (!current.empty()) throw ParseError("last clause is not terminated by 0");
  if (declared != static_cast<int>(clauses.size()))
    throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(clauses.size()));
  return CnfFormula::make(vars, std::move(clauses));
}

}  // namespace tempvote
