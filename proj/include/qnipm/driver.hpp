#pragma once

#include <limits>
#include <vector>

#include "qnipm/broyden.hpp"
#include "qnipm/kkt.hpp"
#include "qnipm/lp.hpp"
#include "qnipm/neighborhoods.hpp"

namespace qnipm {

enum class Variant { FeasibleN2, FeasibleNs, InfeasibleNs };
enum class Mode { Theory, Adaptive };
enum class Status { Converged, IterLimit, StepFailure };

struct SolverOptions {
  Variant variant = Variant::FeasibleN2;
  Mode mode = Mode::Theory;
  double theta = 0.4;
  double gamma = 0.5;
  double beta = 1.0;
  double sigma_min = 0.05;
  double sigma_max = 0.5;
  double alpha_dec = 0.2;
  double sigma = -1.0;  // negative: use the variant's default schedule
  double epsilon = 1e-6;
  long max_iters = 10000;
  int ell = 1;  // rank-1 solves per factorization cycle
  double backtrack_ratio = 0.9;
};

/// Derived constants used by the guaranteed step-size plans and by the
/// trace checker.
struct TheoryConstants {
  double omega = 0.0;
  double C3 = 0.0;
  double C4 = 0.0;
  double C5 = 0.0;
  double C6 = 0.0;
  double kappa = 0.0;
  double l = 0.0;
  double newton_cap_inf = 0.0;  // sigma_min(1-gamma)/(omega^2(1+gamma))
};

struct StepSizes {
  double alpha_newton = 0.0;
  double alpha_qn = 0.0;
};

struct StepRecord {
  long k = 0;
  char step_type = 'N';  // 'N' or 'Q'
  double alpha = 0.0;
  double sigma = 0.0;
  double mu_before = 0.0;
  double mu_after = 0.0;
  double prox_n2 = 0.0;       // of the point after the step
  double ns_min_ratio = 0.0;  // ditto
  double ns_max_ratio = 0.0;
  double norm_rb = 0.0;  // 2-norms after the step
  double norm_rc = 0.0;
  double nu = 1.0;  // product of (1 - alpha_i) over previous steps
  double gamma1 = std::numeric_limits<double>::quiet_NaN();
  double dx_dot_dz = 0.0;
  // full-trace payload; empty when loaded from a slim file
  Direction direction;
  IteratePoint point_before;
  IteratePoint point_after;
  Vec rhs;  // uncorrected right-hand side used for this step
};

struct RunResult {
  Status status = Status::IterLimit;
  std::vector<StepRecord> trace;
  double mu0 = 0.0;
  double init_residual_norm = 0.0;
  IteratePoint final_point;
  bool ell_guarantee = true;  // false when ell != 1
};

/// Throws ConfigError naming the violated condition.
void validate_options(const SolverOptions& options, Eigen::Index n);

/// Effective centering parameter for the variant.
double sigma_for(const SolverOptions& options, Eigen::Index n);

TheoryConstants compute_constants(const SolverOptions& options,
                                  double init_residual_norm, double mu0);

/// Largest guaranteed step sizes for the variant.
StepSizes step_size_plan(const SolverOptions& options, Eigen::Index n,
                         const TheoryConstants& constants);

/// Feasible-case gap recurrence: (1 - alpha (1 - sigma)) * mu.
double mu_after_step(double mu_prev_step, double sigma, double alpha);

RunResult run(const Problem& problem, const IteratePoint& start,
              const SolverOptions& options);

}  // namespace qnipm
