#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ckit/cardinal.hpp"

namespace ckit::cli {

enum class OracleStatus { absent, agreed, mismatch };
enum class ResultStatus { ok, unsupported_reduction };

struct Report {
  std::string kind;
  Cardinal value;
  ResultStatus status = ResultStatus::ok;
  /// Insertion-ordered, so serialization is deterministic.
  nlohmann::ordered_json intermediates = nlohmann::ordered_json::object();
  std::vector<std::string> trace;
  OracleStatus oracle = OracleStatus::absent;
  std::vector<std::string> oracle_details;
  /// A property check failed (check subcommand).
  bool check_failed = false;
};

enum class Format { text, structured };

/// `with_trace` controls whether trace lines are emitted.
std::string emit(const Report& report, Format format, bool with_trace);

/// 0 ok, 2 oracle mismatch or failed check, 3 unsupported reduction.
int exit_code(const Report& report);

std::string to_string(OracleStatus s);
std::string to_string(ResultStatus s);

}  // namespace ckit::cli
