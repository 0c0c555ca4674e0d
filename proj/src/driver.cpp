#include "qnipm/driver.hpp"

#include <algorithm>
#include <cmath>

namespace qnipm {

namespace {

double residual_norm(const Residuals& r) {
  return std::hypot(r.r_b.norm(), r.r_c.norm());
}

IteratePoint advance(const IteratePoint& p, const Direction& d, double alpha) {
  IteratePoint q;
  q.x = p.x + alpha * d.dx;
  q.lambda = p.lambda + alpha * d.dlambda;
  q.z = p.z + alpha * d.dz;
  return q;
}

bool in_neighborhood(const Problem& problem, const IteratePoint& point,
                     const SolverOptions& options, double init_ratio) {
  if (!point.interior()) return false;
  switch (options.variant) {
    case Variant::FeasibleN2:
      return n2_proximity(point) <= options.theta * (1.0 + 1e-12);
    case Variant::FeasibleNs:
      return ns_check(point, options.gamma).is_member;
    case Variant::InfeasibleNs: {
      NeighborhoodSpec spec;
      spec.kind = NeighborhoodKind::NsInfeasible;
      spec.gamma = options.gamma;
      spec.beta = options.beta;
      spec.init_ratio = init_ratio;
      return ns_inf_check(point, evaluate_F(problem, point), spec);
    }
  }
  return false;
}

}  // namespace

double sigma_for(const SolverOptions& options, Eigen::Index n) {
  if (options.sigma >= 0.0) return options.sigma;
  if (options.variant == Variant::FeasibleN2) {
    return 1.0 - 0.4 / std::sqrt(static_cast<double>(n));
  }
  return 0.5 * (options.sigma_min + options.sigma_max);
}

void validate_options(const SolverOptions& options, Eigen::Index n) {
  if (!(options.epsilon > 0.0) || options.max_iters < 1 || options.ell < 1 ||
      !(options.backtrack_ratio > 0.0 && options.backtrack_ratio < 1.0)) {
    throw ConfigError("invalid basic solver options", "basic options");
  }
  switch (options.variant) {
    case Variant::FeasibleN2: {
      if (!(options.theta > 0.0 && options.theta < 16.0 / 25.0)) {
        throw ConfigError("theta outside the admissible range",
                          "theta in (0, 16/25)");
      }
      const double s = sigma_for(options, n);
      const double lhs = (options.theta * options.theta +
                          static_cast<double>(n) * (1.0 - s) * (1.0 - s)) /
                         (std::pow(2.0, 1.5) * (1.0 - options.theta));
      if (lhs > options.theta * s) {
        throw ConfigError(
            "centering/proximity parameters incompatible",
            "(theta^2 + n (1 - sigma)^2) / (2^(3/2) (1 - theta)) <= "
            "theta sigma");
      }
      break;
    }
    case Variant::FeasibleNs: {
      if (!(options.gamma > 0.0 && options.gamma < 1.0)) {
        throw ConfigError("gamma outside (0,1)", "gamma in (0, 1)");
      }
      if (options.gamma < options.sigma_min / 4.0) {
        throw ConfigError("gamma too small for the symmetric neighborhood",
                          "gamma >= sigma_min / 4");
      }
      break;
    }
    case Variant::InfeasibleNs: {
      if (!(options.gamma > 0.0 && options.gamma < 1.0)) {
        throw ConfigError("gamma outside (0,1)", "gamma in (0, 1)");
      }
      if (!(options.beta >= 1.0)) {
        throw ConfigError("beta must be at least 1", "beta >= 1");
      }
      if (options.alpha_dec + options.sigma_max > 1.0 - options.sigma_min) {
        throw ConfigError("decrease and centering budgets exceed 1",
                          "alpha_dec + sigma_max <= 1 - sigma_min");
      }
      const double bound =
          2.0 / (-8.0 * options.beta +
                 std::sqrt(std::pow(8.0 * options.beta + 2.0, 2) +
                           4.0 / (3.0 * options.sigma_min)));
      if (options.gamma < bound) {
        throw ConfigError(
            "gamma too close to zero for the infeasible neighborhood",
            "gamma >= 2 / (-8 beta + sqrt((8 beta + 2)^2 + "
            "4 / (3 sigma_min)))");
      }
      break;
    }
  }
  if (!(options.sigma_min > 0.0 && options.sigma_min <= options.sigma_max &&
        options.sigma_max < 1.0)) {
    throw ConfigError("sigma range invalid",
                      "0 < sigma_min <= sigma_max < 1");
  }
}

TheoryConstants compute_constants(const SolverOptions& options,
                                  double init_residual_norm, double mu0) {
  TheoryConstants c;
  const double g = options.gamma;
  c.omega = 9.0 * options.beta / std::sqrt(g);
  // xi^2 = mu0 for the standard cold start
  const double ratio = init_residual_norm * options.beta * g / mu0;
  c.C3 = 2.0 / (g * options.alpha_dec) * std::sqrt(ratio * ratio + 1.0);
  c.C6 = (options.sigma_max + 1.0 / g + 8.0 * options.beta) *
         (1.0 + 2.0 / c.C3) / std::sqrt(g);
  c.kappa = 2.0 * c.omega * c.omega + c.C6 * c.C6;
  const double sc = options.sigma_min / c.C3;
  c.C4 = sc / (sc + c.kappa);
  c.C5 = sc / (sc + (1.0 + g) / (1.0 - g) * c.kappa);
  c.l = (0.5 * options.sigma_min) /
        ((3.0 / (std::pow(2.0, 1.5) * g)) *
         std::pow(2.0 + 1.0 / (g * (1.0 - options.sigma_max)), 2) *
         std::pow((1.0 + g) / g, 2));
  c.newton_cap_inf =
      options.sigma_min * (1.0 - g) / (c.omega * c.omega * (1.0 + g));
  return c;
}

StepSizes step_size_plan(const SolverOptions& options, Eigen::Index n,
                         const TheoryConstants& constants) {
  const double nd = static_cast<double>(n);
  const double s = sigma_for(options, n);
  StepSizes sz;
  switch (options.variant) {
    case Variant::FeasibleN2: {
      const double bound = std::min((1.0 - s) / (4.0 * s),
                                    s * (1.0 - s) / (10.0 * (1.0 - s) + 4.0));
      sz.alpha_newton = bound;
      sz.alpha_qn = bound;
      break;
    }
    case Variant::FeasibleNs: {
      const double g = options.gamma;
      const double cap =
          std::pow(2.0, 1.5) * g * (1.0 - g) / (1.0 + g) * s / nd;
      sz.alpha_newton =
          std::min(cap, (1.0 - g) * constants.l / (2.0 * nd * nd * nd));
      sz.alpha_qn = 2.0 * sz.alpha_newton;
      break;
    }
    case Variant::InfeasibleNs: {
      const double n5 = std::pow(nd, 5);
      sz.alpha_newton = std::min(
          {1.0, 1.0 / ((1.0 + constants.C3) * constants.omega * constants.omega),
           constants.C5 / n5, constants.newton_cap_inf / (nd * nd)});
      sz.alpha_qn = sz.alpha_newton / constants.C3;
      break;
    }
  }
  return sz;
}

double mu_after_step(double mu_prev_step, double sigma, double alpha) {
  return (1.0 - alpha * (1.0 - sigma)) * mu_prev_step;
}

RunResult run(const Problem& problem, const IteratePoint& start,
              const SolverOptions& options) {
  validate_options(options, problem.n);
  if (!start.interior()) {
    throw ContractViolation("run: start point not interior");
  }

  RunResult result;
  result.ell_guarantee = options.ell == 1;
  const Residuals r0 = evaluate_F(problem, start);
  result.mu0 = r0.mu;
  result.init_residual_norm = residual_norm(r0);
  const double init_ratio = result.init_residual_norm / result.mu0;

  const bool feasible_variant = options.variant != Variant::InfeasibleNs;
  if (feasible_variant) {
    if (!is_feasible(problem, start)) {
      throw ContractViolation("run: start is not primal-dual feasible");
    }
  }
  if (!in_neighborhood(problem, start, options, init_ratio)) {
    throw ContractViolation("run: start outside the chosen neighborhood");
  }

  const TheoryConstants constants =
      compute_constants(options, result.init_residual_norm, result.mu0);
  const StepSizes plan = step_size_plan(options, problem.n, constants);
  const double sigma = sigma_for(options, problem.n);

  IteratePoint current = start;
  Residuals rcur = r0;
  double nu = 1.0;
  QuasiNewtonState state;
  const int cycle = 1 + options.ell;

  for (long k = 0; k < options.max_iters; ++k) {
    const int pos = static_cast<int>(k % cycle);
    const bool newton = pos == 0;
    const Vec rhs = newton_rhs(problem, current, sigma);

    Direction dir;
    double gamma1 = std::numeric_limits<double>::quiet_NaN();
    if (newton) {
      state.factor = factorize(problem, current, k);
      state.pairs.clear();
      state.history.clear();
      dir = solve_kkt(state.factor, rhs);
    } else {
      gamma1 = gamma_coefficients(state, rhs)(0);
      dir = qn_direction(problem, state, rhs);
    }

    double alpha;
    if (options.mode == Mode::Theory) {
      alpha = newton ? plan.alpha_newton : plan.alpha_qn;
    } else {
      alpha = 1.0;
      while (true) {
        const IteratePoint trial = advance(current, dir, alpha);
        bool ok = trial.interior() &&
                  in_neighborhood(problem, trial, options, init_ratio);
        if (ok && options.variant == Variant::InfeasibleNs) {
          ok = mu(trial) <=
               (1.0 - options.alpha_dec * alpha) * rcur.mu;
        }
        if (ok) break;
        alpha *= options.backtrack_ratio;
        if (alpha < 1e-12) {
          result.status = Status::StepFailure;
          result.final_point = current;
          return result;
        }
      }
    }

    const IteratePoint next = advance(current, dir, alpha);
    const Residuals rnext = evaluate_F(problem, next);

    StepRecord rec;
    rec.k = k;
    rec.step_type = newton ? 'N' : 'Q';
    rec.alpha = alpha;
    rec.sigma = sigma;
    rec.mu_before = rcur.mu;
    rec.mu_after = rnext.mu;
    rec.nu = nu;
    rec.gamma1 = gamma1;
    rec.dx_dot_dz = dir.dx.dot(dir.dz);
    rec.norm_rb = rnext.r_b.norm();
    rec.norm_rc = rnext.r_c.norm();
    if (next.interior()) {
      rec.prox_n2 = n2_proximity(next);
      const NsCheckResult nsr = ns_check(next, std::min(options.gamma, 0.5));
      rec.ns_min_ratio = nsr.min_ratio;
      rec.ns_max_ratio = nsr.max_ratio;
    }
    rec.direction = dir;
    rec.point_before = current;
    rec.point_after = next;
    rec.rhs = rhs;
    result.trace.push_back(rec);

    if (!next.interior()) {
      result.status = Status::StepFailure;
      result.final_point = current;
      return result;
    }
    if (feasible_variant) {
      const double predicted = mu_after_step(rcur.mu, sigma, alpha);
      if (std::abs(rnext.mu - predicted) > 1e-10 * rcur.mu) {
        throw NumericError("run: gap recurrence violated in feasible variant");
      }
    }
    if (options.mode == Mode::Theory) {
      bool ok = in_neighborhood(problem, next, options, init_ratio);
      if (ok && options.variant == Variant::InfeasibleNs) {
        ok = rnext.mu <=
             (1.0 - options.alpha_dec * alpha) * rcur.mu;
      }
      if (!ok) {
        result.status = Status::StepFailure;
        result.final_point = next;
        return result;
      }
    }

    state.pairs.push_back(record_step(problem, current, next, dir, alpha));
    state.history.push_back(StepHistoryEntry{alpha, dir, current, next});
    nu *= (1.0 - alpha);
    current = next;
    rcur = rnext;

    if (rcur.mu <= options.epsilon * result.mu0 &&
        residual_norm(rcur) <=
            options.epsilon * (1.0 + result.init_residual_norm)) {
      result.status = Status::Converged;
      result.final_point = current;
      return result;
    }
  }
  result.status = Status::IterLimit;
  result.final_point = current;
  return result;
}

}  // namespace qnipm
