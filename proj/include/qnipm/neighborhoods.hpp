#pragma once

#include "qnipm/lp.hpp"

namespace qnipm {

enum class NeighborhoodKind { N2, Ns, NsInfeasible };

struct NeighborhoodSpec {
  NeighborhoodKind kind = NeighborhoodKind::N2;
  double theta = 0.4;       // N2 only
  double gamma = 0.5;       // Ns kinds
  double beta = 1.0;        // NsInfeasible only
  double init_ratio = 0.0;  // ||(r_b0, r_c0)|| / mu0, 0 for a feasible start
};

/// ||XZe - mu e|| / mu. Membership in the 2-norm neighborhood with
/// parameter theta holds iff the return value is <= theta.
double n2_proximity(const IteratePoint& point);

struct NsCheckResult {
  bool is_member = false;
  double min_ratio = 0.0;  // min_i x_i z_i / mu
  double max_ratio = 0.0;  // max_i x_i z_i / mu
};

/// Componentwise symmetric test: gamma <= x_i z_i / mu <= 1/gamma,
/// with 1e-12 relative slack on the boundary.
NsCheckResult ns_check(const IteratePoint& point, double gamma);

/// Infeasible symmetric test: residual norm bound
/// ||(r_b, r_c)|| <= init_ratio * beta * mu, plus ns_check and positivity.
bool ns_inf_check(const IteratePoint& point, const Residuals& residuals,
                  const NeighborhoodSpec& spec);

/// Feasibility of the point (inf-norm residuals within absolute 1e-8).
bool is_feasible(const Problem& problem, const IteratePoint& point,
                 double tol = 1e-8);

}  // namespace qnipm
