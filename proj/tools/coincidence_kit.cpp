#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "ckit/errors.hpp"
#include "ckit/runner.hpp"

namespace {

constexpr const char* kFooter = R"(Exit codes:
  0  success
  1  input error (malformed file, dimension mismatch, invalid homomorphism, cap exceeded)
  2  oracle mismatch, failed property check, or internal consistency failure
  3  unsupported reduction (nilpotent target with infinite R(phi', psi'))

Environment:
  COINCIDENCE_KIT_MAX_CLOSURE  cap on finite-group closure size (default 10000))";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reidemeister coincidence numbers R(phi_1, ..., phi_k) for tori, finite groups and "
               "class-2 nilmanifolds."};
  app.footer(kFooter);
  app.require_subcommand(1);

  std::string path;
  bool oracle = false, trace = false;
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", path, "problem description (JSON)")->required();
    sub->add_flag("--oracle", oracle, "run the independent cross-check and report agreement");
    sub->add_flag("--trace", trace, "include the computation trace");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };
  auto* compute = app.add_subcommand("compute", "compute the Reidemeister number");
  auto* snf = app.add_subcommand("snf", "Smith normal form of the problem's integer matrix");
  auto* check = app.add_subcommand("check", "divisibility verdicts and invariance under reordering the homs");
  for (auto* sub : {compute, snf, check}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto problem = ckit::cli::parse_problem_file(path);
    const ckit::cli::RunOptions options{oracle};
    ckit::cli::Report report;
    if (compute->parsed()) report = ckit::cli::run(problem, options);
    else if (snf->parsed()) report = ckit::cli::run_snf(problem, options);
    else report = ckit::cli::run_check(problem, options);
    const auto fmt = format == "structured" ? ckit::cli::Format::structured : ckit::cli::Format::text;
    std::cout << ckit::cli::emit(report, fmt, trace);
    return ckit::cli::exit_code(report);
  } catch (const ckit::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
