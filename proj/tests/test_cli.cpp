#include "doctest.h"

#include "ckit/errors.hpp"
#include "ckit/runner.hpp"

using namespace ckit;
using namespace ckit::cli;

namespace {

std::string problem_path(const std::string& name) { return std::string(CKIT_PROBLEMS_DIR) + "/" + name; }

Report compute(const std::string& name, bool oracle = true) {
  return run(parse_problem_file(problem_path(name)), RunOptions{oracle});
}

std::string field(const Report& r, const std::string& key) {
  const auto& v = r.intermediates.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

TEST_CASE("empty input names the missing kind") {
  CHECK_THROWS_WITH_AS(parse_problem_text(""), doctest::Contains("kind"), InputError);
  CHECK_THROWS_WITH_AS(parse_problem_text("{}"), doctest::Contains("kind"), InputError);
}

TEST_CASE("ragged matrix names the row") {
  const char* text = R"({"kind": "snf", "matrix": [[1, 2], [3]]})";
  CHECK_THROWS_WITH_AS(parse_problem_text(text), doctest::Contains("row 1"), InputError);
}

TEST_CASE("other input errors") {
  CHECK_THROWS_AS(parse_problem_text(R"({"kind": "torus"})"), InputError);
  CHECK_THROWS_AS(parse_problem_text("{not json"), InputError);
  CHECK_THROWS_AS(parse_problem_text(R"({"kind": "abelian-pair", "phi": [[1]], "psi": [[1, 2]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_problem_file(problem_path("does_not_exist.json")), InputError);
  // big values as strings
  const auto p = parse_problem_text(R"({"kind": "snf", "matrix": [["123456789012345678901234567890"]]})");
  CHECK(std::get<SnfProblem>(p.payload).matrix(0, 0) == Integer("123456789012345678901234567890"));
}

TEST_CASE("torus example parses into four 1x3 homs") {
  const auto p = parse_problem_file(problem_path("example2_torus.json"));
  CHECK(p.kind == "abelian-multi");
  const auto& homs = std::get<AbelianMultiProblem>(p.payload).homs;
  REQUIRE(homs.size() == 4);
  for (const auto& h : homs) {
    CHECK(h.rows() == 1);
    CHECK(h.cols() == 3);
  }
}

TEST_CASE("torus example report") {
  const auto r = compute("example2_torus.json");
  CHECK(r.value == Cardinal(10L));
  CHECK(r.oracle == OracleStatus::agreed);
  const auto& subs = r.intermediates.at("sub_systems");
  CHECK(subs.at("R(phi_1,phi_2,phi_3)") == "2");
  CHECK(subs.at("R(phi_1,phi_2,phi_4)") == "1");
  CHECK(subs.at("R(phi_1,phi_3,phi_4)") == "2");
  CHECK(field(r, "sub_systems_with_phi_1_divides") == "4 ∤ 10");
  CHECK(exit_code(r) == 0);
}

TEST_CASE("Poincare sphere example report") {
  const auto r = compute("example1_poincare.json");
  CHECK(r.value == Cardinal(120L));
  CHECK(r.oracle == OracleStatus::agreed);
  CHECK(r.intermediates.at("pairwise").at("R(p,p)") == 9);
  CHECK(r.intermediates.at("pairwise").at("R(p,cbar)") == 1);
  CHECK(field(r, "pairwise_product_divides") == "9 ∤ 120");
  CHECK(r.intermediates.at("codomain_conjugacy_classes") == 9);
}

TEST_CASE("nilmanifold example report") {
  const auto r = compute("example3_nilmanifold.json");
  CHECK(r.value == Cardinal(2L));
  CHECK(r.oracle == OracleStatus::agreed);
  CHECK(field(r, "R_bar") == "1");
  CHECK(field(r, "R_prime") == "2");
  CHECK(field(r, "im_delta") == "1");
}

TEST_CASE("remaining shipped problems") {
  CHECK(compute("heisenberg.json").value == Cardinal(16L));
  CHECK(compute("heisenberg_delta.json").value == Cardinal(8L));
  CHECK(compute("s3_conjugacy.json").value == Cardinal(3L));
  const auto snf = run_snf(parse_problem_file(problem_path("snf_worked_matrix.json")), RunOptions{true});
  CHECK(snf.value == Cardinal(2L));
  CHECK(snf.oracle == OracleStatus::agreed);
  const auto u = compute("unsupported_reduction.json", false);
  CHECK(u.status == ResultStatus::unsupported_reduction);
  CHECK(exit_code(u) == 3);
  CHECK(emit(u, Format::text, false).find("value: undetermined") != std::string::npos);
}

TEST_CASE("check subcommand passes on the shipped problems") {
  for (const char* name : {"example1_poincare.json", "example2_torus.json", "example3_nilmanifold.json",
                           "heisenberg.json", "s3_conjugacy.json"}) {
    INFO(name);
    const auto r = run_check(parse_problem_file(problem_path(name)));
    CHECK_FALSE(r.check_failed);
    CHECK(exit_code(r) == 0);
  }
}

TEST_CASE("emission is deterministic") {
  for (const char* name : {"example1_poincare.json", "example2_torus.json", "example3_nilmanifold.json"}) {
    const auto a = compute(name), b = compute(name);
    for (auto format : {Format::text, Format::structured}) {
      CHECK(emit(a, format, true) == emit(b, format, true));
      CHECK(emit(a, format, false) == emit(a, format, false));
    }
  }
}

TEST_CASE("structured output round-trips") {
  const auto r = compute("example3_nilmanifold.json");
  const auto j = nlohmann::ordered_json::parse(emit(r, Format::structured, true));
  CHECK(j.at("value") == "2");
  CHECK(j.at("oracle_status") == "agreed");
  CHECK(j.at("intermediates") == r.intermediates);
  CHECK(j.at("trace").size() == r.trace.size());
}

TEST_CASE("infinite values use the literal token") {
  const auto p = parse_problem_text(R"({"kind": "abelian-pair", "phi": [[1, 0], [0, 1]], "psi": [[1, 0], [0, 1]]})");
  const auto r = run(p, RunOptions{true});
  CHECK(r.value.is_infinite());
  CHECK(emit(r, Format::text, false).find("value: infinite") != std::string::npos);
  CHECK(nlohmann::json::parse(emit(r, Format::structured, false)).at("value") == "infinite");
}

TEST_CASE("mismatch and failed checks map to exit code 2") {
  Report r;
  r.oracle = OracleStatus::mismatch;
  CHECK(exit_code(r) == 2);
  Report c;
  c.check_failed = true;
  CHECK(exit_code(c) == 2);
}
