#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rcdual/program.hpp"
#include "rcdual/reduction.hpp"

namespace rcdual {

/// Optional reduction section of a problem file: the linear map, the body to
/// stay out of, and (optionally) a fixed anchor instead of the unconstrained
/// minimizer of the objective.
struct ReductionSpec {
  Mat T;
  ConvexBody D;
  std::optional<Vec> anchor;

  bool operator==(const ReductionSpec& o) const {
    if (!(T == o.T && D == o.D && anchor.has_value() == o.anchor.has_value())) return false;
    return !anchor || *anchor == *o.anchor;
  }
};

/// Everything a problem file can carry.  `to_program()` validates the parts
/// the solver needs (at least one constraint, matching dimensions); files
/// that only feed the reduction pipeline may omit constraints.
struct ProblemFile {
  std::string name = "problem";
  int n = 0;
  ConvexFunction f = ConvexFunction::affine(Vec::Zero(1), 0.0);
  std::vector<Constraint> constraints;
  Box box;
  std::optional<ReductionSpec> reduction;

  Program to_program() const;
};

/// Parsers throw std::invalid_argument with a field path on any malformed
/// input ("problem parse: constraints[1].a: expected an array ...").
ConvexFunction parse_function(const nlohmann::ordered_json& j, int expected_dim,
                              const std::string& where);
ProblemFile parse_problem(const nlohmann::ordered_json& j);
ProblemFile load_problem_file(const std::string& path);
/// load_problem_file + to_program.
Program load_program(const std::string& path);

nlohmann::ordered_json serialize(const ConvexFunction& g);
nlohmann::ordered_json serialize(const ConvexBody& body);
nlohmann::ordered_json serialize(const ReductionSpec& spec);
nlohmann::ordered_json serialize(const Program& p);
nlohmann::ordered_json serialize(const ProblemFile& pf);

}  // namespace rcdual
