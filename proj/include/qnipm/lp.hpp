#pragma once

#include <Eigen/Dense>

#include "qnipm/errors.hpp"

namespace qnipm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Standard-form LP data: min c'x s.t. Ax = b, x >= 0, with full-row-rank A.
struct Problem {
  Mat A;
  Vec b;
  Vec c;
  Eigen::Index m = 0;
  Eigen::Index n = 0;

  /// Validates dimensions, finiteness and rank(A) = m (relative singular
  /// value tolerance 1e-10).
  static Problem create(Mat A, Vec b, Vec c);
};

/// Primal-dual iterate (x, lambda, z) with x, z strictly positive.
struct IteratePoint {
  Vec x;
  Vec lambda;
  Vec z;

  bool interior() const {
    return x.size() > 0 && (x.array() > 0.0).all() && (z.array() > 0.0).all();
  }
};

/// Components of F at a point plus the average complementarity gap.
struct Residuals {
  Vec r_b;   // Ax - b
  Vec r_c;   // A'lambda + z - c
  Vec comp;  // x_i z_i
  double mu = 0.0;
};

Residuals evaluate_F(const Problem& problem, const IteratePoint& point);

/// Average complementarity gap x'z / n.
double mu(const IteratePoint& point);

}  // namespace qnipm
