#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ckit/finite_group.hpp"
#include "ckit/int_matrix.hpp"
#include "ckit/pc_group.hpp"

/// Problem description files: one JSON document per problem.
namespace ckit::cli {

struct SnfProblem {
  IntMatrix matrix;
};

struct AbelianPairProblem {
  IntMatrix phi;
  IntMatrix psi;
};

struct AbelianMultiProblem {
  std::vector<IntMatrix> homs;
};

struct FiniteProblem {
  std::shared_ptr<const finite::FiniteGroup> domain;
  std::shared_ptr<const finite::FiniteGroup> codomain;
  std::vector<finite::FiniteHom> homs;
  std::vector<std::string> hom_names;
};

struct NilpotentProblem {
  std::vector<nilpotent::PcHom> homs;
};

using Payload = std::variant<SnfProblem, AbelianPairProblem, AbelianMultiProblem, FiniteProblem,
                             NilpotentProblem>;

struct ProblemFile {
  std::string kind;
  Payload payload;
};

/// Throws InputError with the offending field in the message.
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile parse_problem_file(const std::string& path);

}  // namespace ckit::cli
