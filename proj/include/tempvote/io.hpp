#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tempvote/core.hpp"
#include "tempvote/reductions.hpp"

namespace tempvote {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Instance files: {"projects": [names], "ell": L, "agents": [{"name": ...,
// "approvals": [[names] x ell]}]}. Unknown keys are rejected.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance&);

// FNV-1a of the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance&);

enum class RandomModel { general, cp, up };

// general: every (agent, timestep, project) approved with the given density,
// then one uniform approval added for any agent left entirely empty.
// cp: general draw, then a uniform project wherever a set came out empty.
// up: a uniform singleton everywhere (density unused).
Instance generate_random(RandomModel, int n, int m, int ell, double density, std::uint64_t seed);

// Reports carry a stable field order so identical runs emit identical bytes.
using Report = nlohmann::ordered_json;
std::string write_report(const Report&);
Report report_header(const std::string& command, const Instance&);
Report outcome_names(const Instance&, const Outcome&);

// Graph files: "v e" then e lines "a b" with 1-based vertices.
Graph parse_graph(const std::string& text);
// DIMACS-like CNF: optional "c" comments, one "p cnf <vars> <clauses>"
// header, clauses as integer runs terminated by 0.
CnfFormula parse_cnf(const std::string& text);

}  // namespace tempvote
