#include "qnipm/lp.hpp"

#include <Eigen/SVD>

namespace qnipm {

Problem Problem::create(Mat A, Vec b, Vec c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (m < 1 || n < 1 || m > n) {
    throw ContractViolation("Problem: need 1 <= m <= n");
  }
  if (b.size() != m || c.size() != n) {
    throw ContractViolation("Problem: b/c dimensions do not match A");
  }
  if (!A.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw NumericError("Problem: non-finite entry in A, b or c");
  }
  Eigen::JacobiSVD<Mat> svd(A);
  const Vec& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * sv(0)) {
    throw ContractViolation("Problem: rows of A are numerically rank-deficient");
  }
  Problem p;
  p.A = std::move(A);
  p.b = std::move(b);
  p.c = std::move(c);
  p.m = m;
  p.n = n;
  return p;
}

Residuals evaluate_F(const Problem& problem, const IteratePoint& point) {
  if (point.x.size() != problem.n || point.z.size() != problem.n ||
      point.lambda.size() != problem.m) {
    throw ContractViolation("evaluate_F: point dimensions do not match problem");
  }
  Residuals r;
  r.r_b = problem.A * point.x - problem.b;
  r.r_c = problem.A.transpose() * point.lambda + point.z - problem.c;
  r.comp = point.x.cwiseProduct(point.z);
  r.mu = r.comp.sum() / static_cast<double>(problem.n);
  if (!r.r_b.allFinite() || !r.r_c.allFinite() || !r.comp.allFinite()) {
    throw NumericError("evaluate_F: non-finite residual");
  }
  return r;
}

double mu(const IteratePoint& point) {
  if (point.x.size() == 0 || point.x.size() != point.z.size()) {
    throw ContractViolation("mu: empty or mismatched x/z");
  }
  return point.x.dot(point.z) / static_cast<double>(point.x.size());
}

}  // namespace qnipm
