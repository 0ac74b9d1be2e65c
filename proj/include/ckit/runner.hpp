#pragma once

#include "ckit/problem.hpp"
#include "ckit/report.hpp"

namespace ckit::cli {

struct RunOptions {
  bool oracle = false;
};

/// `compute`: the Reidemeister number of the problem, plus its intermediates.
Report run(const ProblemFile& problem, const RunOptions& options = {});

/// `snf`: Smith normal form of the problem's matrix (the difference or
/// stacked difference for abelian problems).
Report run_snf(const ProblemFile& problem, const RunOptions& options = {});

/// `check`: divisibility verdicts and invariance under reordering the homs.
Report run_check(const ProblemFile& problem, const RunOptions& options = {});

}  // namespace ckit::cli
