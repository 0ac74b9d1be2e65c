#include "ckit/report.hpp"

#include <sstream>

namespace ckit::cli {

using nlohmann::ordered_json;

std::string to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::agreed:
      return "agreed";
    case OracleStatus::mismatch:
      return "mismatch";
    case OracleStatus::absent:
      break;
  }
  return "absent";
}

std::string to_string(ResultStatus s) {
  return s == ResultStatus::ok ? "ok" : "unsupported-reduction";
}

namespace {

std::string value_text(const Report& r) {
  return r.status == ResultStatus::unsupported_reduction ? "undetermined" : r.value.to_string();
}

void flatten(const ordered_json& v, const std::string& prefix, std::ostream& out) {
  if (v.is_object() && !v.empty()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  out << "  " << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

}  // namespace

std::string emit(const Report& report, Format format, bool with_trace) {
  if (format == Format::structured) {
    ordered_json j;
    j["kind"] = report.kind;
    j["value"] = value_text(report);
    j["status"] = to_string(report.status);
    j["intermediates"] = report.intermediates;
    j["trace"] = with_trace ? report.trace : std::vector<std::string>{};
    j["oracle_status"] = to_string(report.oracle);
    if (!report.oracle_details.empty()) j["oracle_details"] = report.oracle_details;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "kind: " << report.kind << '\n';
  out << "value: " << value_text(report) << '\n';
  out << "status: " << to_string(report.status) << '\n';
  if (!report.intermediates.empty()) {
    out << "intermediates:\n";
    flatten(report.intermediates, "", out);
  }
  if (with_trace && !report.trace.empty()) {
    out << "trace:\n";
    for (const auto& line : report.trace) out << "  " << line << '\n';
  }
  out << "oracle: " << to_string(report.oracle) << '\n';
  for (const auto& line : report.oracle_details) out << "  " << line << '\n';
  return out.str();
}

int exit_code(const Report& report) {
  if (report.oracle == OracleStatus::mismatch || report.check_failed) return 2;
  if (report.status == ResultStatus::unsupported_reduction) return 3;
  return 0;
}

}  // namespace ckit::cli
