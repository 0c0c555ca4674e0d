#pragma once

#include <vector>

#include "qnipm/kkt.hpp"
#include "qnipm/lp.hpp"

namespace qnipm {

/// One secant pair: s is the taken step, y the change in F it produced.
struct SecantPair {
  Vec s;
  Vec y;
  double rho = 0.0;  // y'y
};

/// Everything needed to reconstruct the correction term of a rank-1
/// updated solve: the step size, direction and the bracketing iterates.
struct StepHistoryEntry {
  double alpha = 0.0;
  Direction direction;
  IteratePoint prev;
  IteratePoint next;
};

/// Stale factor plus the secant pairs accumulated since it was formed
/// (oldest first). history is aligned with pairs.
struct QuasiNewtonState {
  KktFactor factor;
  std::vector<SecantPair> pairs;
  std::vector<StepHistoryEntry> history;

  std::size_t ell() const { return pairs.size(); }
};

/// Builds the secant pair for the step prev -> next = prev + alpha*direction.
SecantPair record_step(const Problem& problem, const IteratePoint& prev,
                       const IteratePoint& next, const Direction& direction,
                       double alpha);

/// Projection coefficients gamma_i, i = 1..ell, newest pair first.
/// Rank-1 products are applied to v as vector updates.
Vec gamma_coefficients(const QuasiNewtonState& state, const Vec& v);

/// Rank-1 updated inverse applied to v, computed as one solve with the
/// stale factor against a corrected right-hand side. With no pairs this
/// is exactly solve_kkt(state.factor, v).
Direction qn_direction(const Problem& problem, const QuasiNewtonState& state,
                       const Vec& v);

/// Brute-force dense update sequence starting from inv(J_anchor_dense);
/// the equivalent product/sum form is evaluated and cross-checked to 1e-10.
Mat dense_broyden_oracle(const Mat& J_anchor_dense,
                         const std::vector<SecantPair>& pairs);

}  // namespace qnipm
