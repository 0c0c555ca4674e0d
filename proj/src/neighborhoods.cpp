#include "qnipm/neighborhoods.hpp"

#include <cmath>

namespace qnipm {

namespace {
constexpr double kMemberSlack = 1e-12;  // relative slack on boundaries
}

double n2_proximity(const IteratePoint& point) {
  if (!point.interior()) {
    throw ContractViolation("n2_proximity: point not interior");
  }
  const Vec prod = point.x.cwiseProduct(point.z);
  const double m = prod.mean();
  if (m <= 0.0) {
    throw NumericError("n2_proximity: degenerate point, mu = 0");
  }
  return (prod.array() - m).matrix().norm() / m;
}

NsCheckResult ns_check(const IteratePoint& point, double gamma) {
  if (!point.interior()) {
    throw ContractViolation("ns_check: point not interior");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ContractViolation("ns_check: gamma must be in (0,1)");
  }
  const Vec prod = point.x.cwiseProduct(point.z);
  const double m = prod.mean();
  NsCheckResult r;
  r.min_ratio = prod.minCoeff() / m;
  r.max_ratio = prod.maxCoeff() / m;
  r.is_member = r.min_ratio >= gamma * (1.0 - kMemberSlack) &&
                r.max_ratio <= (1.0 / gamma) * (1.0 + kMemberSlack);
  return r;
}

bool ns_inf_check(const IteratePoint& point, const Residuals& residuals,
                  const NeighborhoodSpec& spec) {
  if (spec.kind != NeighborhoodKind::NsInfeasible) {
    throw ContractViolation("ns_inf_check: spec kind mismatch");
  }
  if (!point.interior()) return false;
  const double rnorm =
      std::hypot(residuals.r_b.norm(), residuals.r_c.norm());
  const double bound = spec.init_ratio * spec.beta * residuals.mu;
  if (rnorm > bound * (1.0 + kMemberSlack) + kMemberSlack) return false;
  return ns_check(point, spec.gamma).is_member;
}

bool is_feasible(const Problem& problem, const IteratePoint& point,
                 double tol) {
  const Residuals r = evaluate_F(problem, point);
  return r.r_b.lpNorm<Eigen::Infinity>() <= tol &&
         r.r_c.lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace qnipm
