#include "qnipm/broyden.hpp"

namespace qnipm {

SecantPair record_step(const Problem& problem, const IteratePoint& prev,
                       const IteratePoint& next, const Direction& direction,
                       double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ContractViolation("record_step: alpha must be in (0,1]");
  }
  auto consistent = [alpha](const Vec& a, const Vec& b, const Vec& d) {
    const Vec expect = a + alpha * d;
    return (b - expect).norm() <= 1e-12 * (1.0 + expect.norm());
  };
  if (!consistent(prev.x, next.x, direction.dx) ||
      !consistent(prev.lambda, next.lambda, direction.dlambda) ||
      !consistent(prev.z, next.z, direction.dz)) {
    throw ContractViolation("record_step: next != prev + alpha*direction");
  }
  SecantPair p;
  p.s = stack(alpha * direction.dx, alpha * direction.dlambda,
              alpha * direction.dz);
  const Vec y1 =
      alpha * (problem.A.transpose() * direction.dlambda + direction.dz);
  const Vec y2 = alpha * (problem.A * direction.dx);
  const Vec y3 =
      next.x.cwiseProduct(next.z) - prev.x.cwiseProduct(prev.z);
  p.y = stack(y1, y2, y3);
  p.rho = p.y.squaredNorm();
  if (p.rho < 1e-300) {
    throw NumericError("record_step: degenerate secant, y'y ~ 0");
  }
  return p;
}

Vec gamma_coefficients(const QuasiNewtonState& state, const Vec& v) {
  const std::size_t ell = state.pairs.size();
  if (ell == 0) {
    throw ContractViolation("gamma_coefficients: no stored pairs");
  }
  Vec gammas(static_cast<Eigen::Index>(ell));
  Vec w = v;
  // i = 1 is the newest pair; each step peels off one projector V_{k-i}
  for (std::size_t i = 1; i <= ell; ++i) {
    const SecantPair& p = state.pairs[ell - i];
    const double g = p.y.dot(w) / p.rho;
    gammas(static_cast<Eigen::Index>(i - 1)) = g;
    w -= g * p.y;
  }
  return gammas;
}

Direction qn_direction(const Problem& problem, const QuasiNewtonState& state,
                       const Vec& v) {
  const std::size_t ell = state.pairs.size();
  if (ell == 0) {
    return solve_kkt(state.factor, v);
  }
  if (state.history.size() != ell) {
    throw ContractViolation("qn_direction: history does not match pairs");
  }
  const Vec gammas = gamma_coefficients(state, v);
  const Vec& xa = state.factor.anchor.x;
  const Vec& za = state.factor.anchor.z;
  Vec corr3 = Vec::Zero(problem.n);
  for (std::size_t i = 1; i <= ell; ++i) {
    const StepHistoryEntry& h = state.history[ell - i];
    const double g = gammas(static_cast<Eigen::Index>(i - 1));
    const Vec mid = h.alpha * (za.cwiseProduct(h.direction.dx) +
                               xa.cwiseProduct(h.direction.dz));
    const Vec dprod =
        h.next.x.cwiseProduct(h.next.z) - h.prev.x.cwiseProduct(h.prev.z);
    corr3 += g * (mid - dprod);
  }
  Vec rhs = v;
  rhs.tail(problem.n) += corr3;
  return solve_kkt(state.factor, rhs);
}

Mat dense_broyden_oracle(const Mat& J_anchor_dense,
                         const std::vector<SecantPair>& pairs) {
  const Eigen::Index N = J_anchor_dense.rows();
  Eigen::FullPivLU<Mat> lu(J_anchor_dense);
  if (!lu.isInvertible()) {
    throw NumericError("dense_broyden_oracle: singular anchor matrix");
  }
  const Mat H0 = lu.inverse();

  Mat H = H0;
  for (const SecantPair& p : pairs) {
    H += (p.s - H * p.y) * p.y.transpose() / p.rho;
  }

  // independent product/sum form, cross-checked
  Mat P = Mat::Identity(N, N);
  for (const SecantPair& p : pairs) {
    P = P * (Mat::Identity(N, N) - p.y * p.y.transpose() / p.rho);
  }
  Mat Hprod = H0 * P;
  const std::size_t ell = pairs.size();
  for (std::size_t i = 1; i <= ell; ++i) {
    const SecantPair& p = pairs[ell - i];
    Mat tail = Mat::Identity(N, N);
    for (std::size_t j = ell - i + 1; j < ell; ++j) {
      const SecantPair& q = pairs[j];
      tail = tail * (Mat::Identity(N, N) - q.y * q.y.transpose() / q.rho);
    }
    Hprod += (p.s * p.y.transpose() / p.rho) * tail;
  }
  if ((H - Hprod).norm() > 1e-10 * (1.0 + H.norm())) {
    throw NumericError(
        "dense_broyden_oracle: sequential and product forms disagree");
  }
  return H;
}

}  // namespace qnipm
