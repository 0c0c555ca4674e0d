#pragma once

#include "qnipm/lp.hpp"

namespace qnipm {

struct Direction {
  Vec dx;
  Vec dlambda;
  Vec dz;
};

/// Factorization of the full primal-dual system matrix
///   [0 A' I; A 0 0; Z 0 X]
/// at a fixed anchor point, reduced to normal equations A D^2 A' with
/// D^2 = diag(x/z). The factor is reusable for arbitrary right-hand sides.
struct KktFactor {
  Mat A;                 // copy; makes solves independent of the Problem
  IteratePoint anchor;
  Vec d;                 // d_i = sqrt(x_i / z_i)
  Mat chol_lower;        // Cholesky factor of A D^2 A'
  long creation_index = 0;
};

KktFactor factorize(const Problem& problem, const IteratePoint& point,
                    long creation_index = 0);

/// Solves J(anchor) * (dx, dlambda, dz) = rhs, rhs stacked as
/// (block of length n, block of length m, block of length n).
/// The unreduced residual is checked to 1e-8*(1+||rhs||); one refinement
/// pass is attempted when `refine` is set and the check fails.
Direction solve_kkt(const KktFactor& factor, const Vec& rhs,
                    bool refine = false);

/// Right-hand side (c - A'lambda - z, b - Ax, sigma*mu*e - XZe).
Vec newton_rhs(const Problem& problem, const IteratePoint& point,
               double sigma);

/// Dense (2n+m)^2 assembly of the system matrix at a point; test oracle.
Mat dense_jacobian(const Problem& problem, const IteratePoint& point);

Vec stack(const Vec& b1, const Vec& b2, const Vec& b3);
Direction unstack(const Vec& v, Eigen::Index n, Eigen::Index m);

}  // namespace qnipm
