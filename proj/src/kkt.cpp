#include "qnipm/kkt.hpp"

#include <cmath>

namespace qnipm {

namespace {

// Plain lower-triangular Cholesky, no pivoting. Throws on a
// non-positive pivot instead of perturbing.
Mat cholesky_lower(const Mat& S) {
  const Eigen::Index m = S.rows();
  Mat L = Mat::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    double diag = S(j, j);
    for (Eigen::Index k = 0; k < j; ++k) diag -= L(j, k) * L(j, k);
    // relative threshold: a pivot this far below the diagonal scale means
    // the normal matrix is numerically rank deficient
    if (!(diag > 1e-13 * std::abs(S(j, j))) || !std::isfinite(diag)) {
      throw FactorizationError("factorize: non-positive pivot in normal matrix",
                               static_cast<int>(j));
    }
    L(j, j) = std::sqrt(diag);
    for (Eigen::Index i = j + 1; i < m; ++i) {
      double s = S(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

Vec chol_solve(const Mat& L, const Vec& b) {
  const Eigen::Index m = L.rows();
  Vec y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = b(i);
    for (Eigen::Index k = 0; k < i; ++k) s -= L(i, k) * y(k);
    y(i) = s / L(i, i);
  }
  Vec x(m);
  for (Eigen::Index i = m - 1; i >= 0; --i) {
    double s = y(i);
    for (Eigen::Index k = i + 1; k < m; ++k) s -= L(k, i) * x(k);
    x(i) = s / L(i, i);
  }
  return x;
}

Direction solve_once(const KktFactor& f, const Vec& v1, const Vec& v2,
                     const Vec& v3) {
  const Vec& x = f.anchor.x;
  const Vec& z = f.anchor.z;
  // eliminate dz and dx, solve A D^2 A' dlambda = v2 - A((v3 - x.*v1)./z)
  const Vec w = (v3 - x.cwiseProduct(v1)).cwiseQuotient(z);
  const Vec rhs_l = v2 - f.A * w;
  Direction dir;
  dir.dlambda = chol_solve(f.chol_lower, rhs_l);
  dir.dz = v1 - f.A.transpose() * dir.dlambda;
  dir.dx = (v3 - x.cwiseProduct(dir.dz)).cwiseQuotient(z);
  return dir;
}

Vec residual_of(const KktFactor& f, const Direction& d, const Vec& v1,
                const Vec& v2, const Vec& v3) {
  const Vec r1 = f.A.transpose() * d.dlambda + d.dz - v1;
  const Vec r2 = f.A * d.dx - v2;
  const Vec r3 =
      f.anchor.z.cwiseProduct(d.dx) + f.anchor.x.cwiseProduct(d.dz) - v3;
  return stack(r1, r2, r3);
}

}  // namespace

KktFactor factorize(const Problem& problem, const IteratePoint& point,
                    long creation_index) {
  if (!point.interior()) {
    throw ContractViolation("factorize: point not interior");
  }
  if (point.x.size() != problem.n || point.lambda.size() != problem.m) {
    throw ContractViolation("factorize: point dimensions do not match problem");
  }
  KktFactor f;
  f.A = problem.A;
  f.anchor = point;
  f.d = (point.x.cwiseQuotient(point.z)).cwiseSqrt();
  const Mat AD = problem.A * f.d.asDiagonal();
  f.chol_lower = cholesky_lower(AD * AD.transpose());
  f.creation_index = creation_index;
  return f;
}

Direction solve_kkt(const KktFactor& factor, const Vec& rhs, bool refine) {
  const Eigen::Index n = factor.anchor.x.size();
  const Eigen::Index m = factor.A.rows();
  if (rhs.size() != 2 * n + m) {
    throw ContractViolation("solve_kkt: rhs length must be 2n+m");
  }
  const Vec v1 = rhs.head(n);
  const Vec v2 = rhs.segment(n, m);
  const Vec v3 = rhs.tail(n);
  Direction dir = solve_once(factor, v1, v2, v3);
  const double tol = 1e-8 * (1.0 + rhs.norm());
  Vec res = residual_of(factor, dir, v1, v2, v3);
  if (res.norm() > tol && refine) {
    const Direction corr =
        solve_once(factor, -res.head(n), -res.segment(n, m), -res.tail(n));
    dir.dx += corr.dx;
    dir.dlambda += corr.dlambda;
    dir.dz += corr.dz;
    res = residual_of(factor, dir, v1, v2, v3);
  }
  if (res.norm() > tol) {
    throw NumericError("solve_kkt: unreduced residual above tolerance");
  }
  return dir;
}

Vec newton_rhs(const Problem& problem, const IteratePoint& point,
               double sigma) {
  if (sigma < 0.0 || sigma > 1.0) {
    throw ContractViolation("newton_rhs: sigma must be in [0,1]");
  }
  const Residuals r = evaluate_F(problem, point);
  const Vec b3 = Vec::Constant(problem.n, sigma * r.mu) - r.comp;
  return stack(-r.r_c, -r.r_b, b3);
}

Mat dense_jacobian(const Problem& problem, const IteratePoint& point) {
  const Eigen::Index n = problem.n;
  const Eigen::Index m = problem.m;
  Mat J = Mat::Zero(2 * n + m, 2 * n + m);
  J.block(0, n, n, m) = problem.A.transpose();
  J.block(0, n + m, n, n) = Mat::Identity(n, n);
  J.block(n, 0, m, n) = problem.A;
  J.block(n + m, 0, n, n) = point.z.asDiagonal();
  J.block(n + m, n + m, n, n) = point.x.asDiagonal();
  return J;
}

Vec stack(const Vec& b1, const Vec& b2, const Vec& b3) {
  Vec v(b1.size() + b2.size() + b3.size());
  v << b1, b2, b3;
  return v;
}

Direction unstack(const Vec& v, Eigen::Index n, Eigen::Index m) {
  if (v.size() != 2 * n + m) {
    throw ContractViolation("unstack: length must be 2n+m");
  }
  Direction d;
  d.dx = v.head(n);
  d.dlambda = v.segment(n, m);
  d.dz = v.tail(n);
  return d;
}

}  // namespace qnipm
