#include "qnipm/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qnipm {

namespace {

constexpr double kIneqSlack = 1e-12;

bool has_payload(const StepRecord& r) {
  return r.direction.dx.size() > 0 && r.point_before.x.size() > 0 &&
         r.point_after.x.size() > 0;
}

void add_ineq(CheckReport& rep, const std::string& name, long k, double lhs,
              double rhs) {
  // slack scales with the bound so checks stay meaningful when the
  // compared quantities are many orders of magnitude above 1
  const double slack = kIneqSlack * std::max(1.0, std::abs(rhs));
  CheckEntry e{name, k, lhs, rhs, rhs - lhs, lhs <= rhs + slack};
  rep.entries.push_back(std::move(e));
}

void add_eq(CheckReport& rep, const std::string& name, long k, double lhs,
            double rhs, double rel_tol = 1e-10) {
  const double diff = std::abs(lhs - rhs);
  const double scale = std::max(1.0, std::abs(rhs));
  CheckEntry e{name, k, lhs, rhs, diff, diff <= rel_tol * scale};
  rep.entries.push_back(std::move(e));
}

// secant difference vector of a recorded step, rebuilt from the payload
Vec secant_y(const Problem& problem, const StepRecord& r) {
  const Vec y1 = r.alpha * (problem.A.transpose() * r.direction.dlambda +
                            r.direction.dz);
  const Vec y2 = r.alpha * (problem.A * r.direction.dx);
  const Vec y3 = r.point_after.x.cwiseProduct(r.point_after.z) -
                 r.point_before.x.cwiseProduct(r.point_before.z);
  return stack(y1, y2, y3);
}

}  // namespace

bool CheckReport::all_pass() const {
  for (const CheckEntry& e : entries)
    if (!e.pass) return false;
  return true;
}

long CheckReport::failures() const {
  long c = 0;
  for (const CheckEntry& e : entries)
    if (!e.pass) ++c;
  return c;
}

const CheckEntry* CheckReport::worst() const {
  const CheckEntry* w = nullptr;
  for (const CheckEntry& e : entries) {
    if (w == nullptr || e.margin < w->margin) w = &e;
  }
  return w;
}

CheckReport verify_trace(const RunResult& result, const Problem& problem,
                         const SolverOptions& options) {
  CheckReport rep;
  const std::vector<StepRecord>& trace = result.trace;
  const double nd = static_cast<double>(problem.n);
  const bool feasible = options.variant != Variant::InfeasibleNs;
  // bounds derived under the theorems' step-size caps only apply to
  // theory-mode traces; identities and memberships apply everywhere
  const bool theory = options.mode == Mode::Theory;
  const TheoryConstants constants =
      compute_constants(options, result.init_residual_norm, result.mu0);
  const double feas_tol = 1e-8 * (1.0 + problem.b.lpNorm<Eigen::Infinity>() +
                                  problem.c.lpNorm<Eigen::Infinity>());

  double nu_expect = 1.0;
  for (std::size_t idx = 0; idx < trace.size(); ++idx) {
    const StepRecord& r = trace[idx];
    const StepRecord* prev = idx > 0 ? &trace[idx - 1] : nullptr;

    if (prev != nullptr) {
      add_eq(rep, "mu_chain", r.k, r.mu_before, prev->mu_after, 1e-15);
    }
    add_eq(rep, "nu_product", r.k, r.nu, nu_expect, 1e-12);
    nu_expect *= (1.0 - r.alpha);

    if (r.alpha > 0.0 && r.sigma < 1.0) {
      add_ineq(rep, "mu_monotone", r.k, r.mu_after, r.mu_before);
    }

    if (feasible) {
      add_eq(rep, "gap_linear_update", r.k, r.mu_after,
             mu_after_step(r.mu_before, r.sigma, r.alpha));
      add_ineq(rep, "feasibility_preserved", r.k,
               std::max(r.norm_rb, r.norm_rc), feas_tol);
      if (has_payload(r)) {
        add_ineq(rep, "orthogonality", r.k, std::abs(r.dx_dot_dz),
                 1e-10 * r.direction.dx.norm() * r.direction.dz.norm());
      }
      if (options.variant == Variant::FeasibleN2) {
        add_ineq(rep, "neighborhood_n2", r.k, r.prox_n2, options.theta);
      } else {
        add_ineq(rep, "neighborhood_ns_lower", r.k, options.gamma,
                 r.ns_min_ratio);
        add_ineq(rep, "neighborhood_ns_upper", r.k, r.ns_max_ratio,
                 1.0 / options.gamma);
      }
    } else {
      add_ineq(rep, "sufficient_decrease", r.k, r.mu_after,
               (1.0 - options.alpha_dec * r.alpha) * r.mu_before);
      add_ineq(rep, "neighborhood_ns_inf_lower", r.k, options.gamma,
               r.ns_min_ratio);
      add_ineq(rep, "neighborhood_ns_inf_upper", r.k, r.ns_max_ratio,
               1.0 / options.gamma);
      add_ineq(rep, "neighborhood_ns_inf_residual", r.k,
               std::hypot(r.norm_rb, r.norm_rc),
               result.init_residual_norm / result.mu0 * options.beta *
                   r.mu_after);
      add_eq(rep, "residual_identity_nu", r.k,
             std::hypot(r.norm_rb, r.norm_rc),
             nu_expect * result.init_residual_norm, 1e-8);
    }

    // lower bound on the secant difference under sufficient decrease
    if (has_payload(r)) {
      const double rho = feasible ? 1.0 - r.sigma : options.alpha_dec;
      if (rho > 0.0 && r.alpha > 0.0 &&
          r.mu_after <= (1.0 - rho * r.alpha) * r.mu_before * (1.0 + 1e-12)) {
        const double ynorm = secant_y(problem, r).norm();
        add_ineq(rep, "secant_norm_lower_bound", r.k,
                 0.5 * rho * r.alpha * r.mu_before, ynorm);
      }
    }

    // rank-1 step bounds need the preceding full solve
    if (r.step_type == 'Q' && prev != nullptr && prev->step_type == 'N' &&
        std::isfinite(r.gamma1)) {
      const double ak = prev->alpha;
      const double sk = prev->sigma;
      if (theory && ak > 0.0 && sk < 1.0) {
        switch (options.variant) {
          case Variant::FeasibleN2: {
            const double bound =
                2.0 * (1.0 - ak * (1.0 - sk)) *
                std::sqrt(options.theta * options.theta +
                          (1.0 - r.sigma) * (1.0 - r.sigma) * nd) /
                (ak * (1.0 - sk));
            add_ineq(rep, "gamma1_bound_n2", r.k, std::abs(r.gamma1), bound);
            break;
          }
          case Variant::FeasibleNs:
            add_ineq(rep, "gamma1_bound_ns", r.k, std::abs(r.gamma1),
                     2.0 * std::sqrt(nd) / ((1.0 - sk) * ak * options.gamma));
            break;
          case Variant::InfeasibleNs:
            add_ineq(rep, "gamma1_bound_inf", r.k, std::abs(r.gamma1),
                     constants.C3 * std::sqrt(nd) / ak);
            break;
        }
      }
      if (has_payload(*prev) && r.rhs.size() > 0) {
        const double ynorm = secant_y(problem, *prev).norm();
        if (ynorm > 0.0) {
          add_ineq(rep, "projection_cauchy_bound", r.k, std::abs(r.gamma1),
                   r.rhs.norm() / ynorm);
        }
      }
      // cross terms of the two-step pair vanish in the feasible case
      if (feasible && has_payload(*prev) && has_payload(r)) {
        const double scale = 1e-10 *
                             (prev->direction.dx.norm() + r.direction.dx.norm()) *
                             (prev->direction.dz.norm() + r.direction.dz.norm());
        add_ineq(rep, "cross_orthogonality", r.k,
                 std::max(std::abs(prev->direction.dx.dot(r.direction.dz)),
                          std::abs(prev->direction.dz.dot(r.direction.dx))),
                 scale);
      }
      if (!feasible && theory) {
        add_ineq(rep, "qn_step_mu_lower", r.k, (1.0 - r.alpha) * r.mu_before,
                 r.mu_after);
        add_ineq(rep, "qn_step_mu_decrease", r.k, r.mu_after,
                 (1.0 - options.alpha_dec * r.alpha) * r.mu_before);
        add_ineq(rep, "qn_step_ratio_lower", r.k, options.gamma, r.ns_min_ratio);
        add_ineq(rep, "qn_step_ratio_upper", r.k, r.ns_max_ratio,
                 1.0 / options.gamma);
      }
    }
  }
  return rep;
}

CheckReport composite_error_check(const RunResult& result,
                                  const SolverOptions& options) {
  CheckReport rep;
  const std::vector<StepRecord>& trace = result.trace;
  const bool feasible = options.variant != Variant::InfeasibleNs;
  const bool theory = options.mode == Mode::Theory;
  const TheoryConstants c =
      compute_constants(options, result.init_residual_norm, result.mu0);

  for (std::size_t idx = 0; idx + 1 < trace.size(); ++idx) {
    const StepRecord& rn = trace[idx];
    const StepRecord& rq = trace[idx + 1];
    if (rn.step_type != 'N' || rq.step_type != 'Q') continue;
    if (!has_payload(rn) || !has_payload(rq) || !std::isfinite(rq.gamma1)) {
      continue;
    }
    const double nd = static_cast<double>(rn.point_before.x.size());
    const double ak = rn.alpha;
    const double aq = rq.alpha;
    const double muk = rn.mu_before;
    const double g1 = rq.gamma1;
    const Vec cx = ak * rn.direction.dx + aq * rq.direction.dx;
    const Vec cz = ak * rn.direction.dz + aq * rq.direction.dz;
    const Vec& xk = rn.point_before.x;
    const Vec& zk = rn.point_before.z;

    if (feasible) {
      const Vec lhs = zk.cwiseProduct(cx) + xk.cwiseProduct(cz);
      const double coef = aq + ak * (1.0 - aq);
      const Vec rhs =
          coef * (Vec::Constant(xk.size(), muk) - xk.cwiseProduct(zk)) +
          Vec::Constant(xk.size(), rq.mu_after - muk) -
          (1.0 + g1) * aq * ak * ak *
              rn.direction.dx.cwiseProduct(rn.direction.dz);
      add_eq(rep, "composite_step_identity", rq.k, (lhs - rhs).norm(), 0.0, 1e-10);
    }

    if (!theory) continue;
    const double prod_norm = cx.cwiseProduct(cz).norm();
    const double shrink =
        1.0 - (1.0 - aq * (1.0 - rq.sigma)) * (1.0 - ak * (1.0 - rn.sigma));
    if (options.variant == Variant::FeasibleN2) {
      const double th = options.theta;
      const double q = (th * th + nd * (1.0 - rn.sigma) * (1.0 - rn.sigma)) /
                       (std::pow(2.0, 1.5) * (1.0 - th));
      const double inner =
          (aq + ak * (1.0 - aq)) * th + std::abs(1.0 + g1) * aq * ak * ak * q;
      const double bound = muk / (std::pow(2.0, 1.5) * (1.0 - th)) *
                           (shrink * shrink * nd + inner * inner);
      add_ineq(rep, "composite_bound_n2", rq.k, prod_norm, bound);
    } else if (options.variant == Variant::FeasibleNs) {
      const double g = options.gamma;
      const double inner = (aq + ak * (1.0 - aq)) +
                           std::abs(1.0 + g1) * aq * ak * ak /
                               std::pow(2.0, 1.5);
      const double ratio = (1.0 + g) / g;
      const double bound =
          nd * muk / (std::pow(2.0, 1.5) * g) *
          (inner * inner * ratio * ratio * nd + shrink * shrink);
      add_ineq(rep, "composite_bound_ns", rq.k, prod_norm, bound);
    } else {
      const Vec d = (xk.cwiseQuotient(zk)).cwiseSqrt();
      const double lhs_x = cx.cwiseQuotient(d).norm();
      const double lhs_z = d.cwiseProduct(cz).norm();
      const double head = options.sigma_max + 1.0 / options.gamma +
                          8.0 * options.beta;
      const double bound = (head * (ak + aq) +
                            (ak + c.C3) * c.omega * c.omega * ak * aq) /
                           std::sqrt(options.gamma) * std::pow(nd, 2.5) *
                           std::sqrt(muk);
      add_ineq(rep, "composite_bound_inf", rq.k, std::max(lhs_x, lhs_z),
               bound);
      if (ak <= head / ((1.0 + c.C3) * c.omega * c.omega) &&
          aq <= ak / c.C3 * (1.0 + 1e-12)) {
        add_ineq(rep, "composite_scaled_bound_inf", rq.k, std::max(lhs_x, lhs_z),
                 c.C6 * ak * std::pow(nd, 2.5) * std::sqrt(muk));
      }
    }
  }
  return rep;
}

FitResult complexity_fit(
    const std::vector<std::pair<double, double>>& n_and_iterations) {
  std::vector<double> xs, ys;
  for (const auto& [n, iters] : n_and_iterations) {
    if (!(n > 0.0 && iters > 0.0)) {
      throw ContractViolation("complexity_fit: nonpositive data point");
    }
    xs.push_back(std::log(n));
    ys.push_back(std::log(iters));
  }
  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() < 3) {
    throw ContractViolation("complexity_fit: need at least 3 distinct sizes");
  }
  const double N = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
  const double ss_tot = syy - sy * sy / N;
  const double intercept = (sy - slope * sx) / N;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (slope * xs[i] + intercept);
    ss_res += e * e;
  }
  FitResult f;
  f.exponent = slope;
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace qnipm
