#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qnipm/driver.hpp"

namespace qnipm {

struct CheckEntry {
  std::string name;
  long k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs for inequalities, |lhs - rhs| for equalities
  bool pass = true;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  bool all_pass() const;
  long failures() const;
  const CheckEntry* worst() const;  // smallest margin
};

/// Evaluates every applicable per-iteration identity and bound over the
/// trace. Inapplicable checks are skipped, not passed. Equalities use
/// 1e-10 relative tolerance, inequalities 1e-12 absolute slack.
CheckReport verify_trace(const RunResult& result, const Problem& problem,
                         const SolverOptions& options);

/// Bounds on the aggregated two-step direction for each consecutive
/// full-solve/rank-1 pair. Needs stored directions.
CheckReport composite_error_check(const RunResult& result,
                                  const SolverOptions& options);

struct FitResult {
  double exponent = 0.0;
  double r_squared = 0.0;
};

/// Least-squares slope of log(iterations) against log(n).
FitResult complexity_fit(
    const std::vector<std::pair<double, double>>& n_and_iterations);

}  // namespace qnipm
