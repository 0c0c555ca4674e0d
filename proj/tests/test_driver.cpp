#include <doctest.h>

#include <cmath>

#include "qnipm/driver.hpp"
#include "qnipm/generator.hpp"

using namespace qnipm;

namespace {

SolverOptions ns_inf_defaults() {
  SolverOptions o;
  o.variant = Variant::InfeasibleNs;
  o.sigma_min = 0.1;
  o.sigma_max = 0.5;
  o.alpha_dec = 0.4;
  o.beta = 1.0;
  o.gamma = 0.76;
  return o;
}

}  // namespace

TEST_CASE("configuration validation names the violated condition") {
  SolverOptions o;
  o.variant = Variant::FeasibleN2;
  o.theta = 0.7;
  try {
    validate_options(o, 4);
    FAIL("theta should be rejected");
  } catch (const ConfigError& e) {
    CHECK(e.condition == "theta in (0, 16/25)");
  }

  o.theta = 0.4;
  o.sigma = 0.1;  // small sigma breaks the centering compatibility bound
  try {
    validate_options(o, 16);
    FAIL("parameter condition should be rejected");
  } catch (const ConfigError& e) {
    CHECK(e.condition ==
          "(theta^2 + n (1 - sigma)^2) / (2^(3/2) (1 - theta)) <= "
          "theta sigma");
  }

  SolverOptions ns;
  ns.variant = Variant::FeasibleNs;
  ns.gamma = 0.05;
  ns.sigma_min = 0.5;
  ns.sigma_max = 0.5;
  try {
    validate_options(ns, 4);
    FAIL("gamma should be rejected");
  } catch (const ConfigError& e) {
    CHECK(e.condition == "gamma >= sigma_min / 4");
  }

  SolverOptions inf = ns_inf_defaults();
  inf.alpha_dec = 0.6;
  inf.sigma_max = 0.5;
  inf.sigma_min = 0.1;
  try {
    validate_options(inf, 4);
    FAIL("budget condition should be rejected");
  } catch (const ConfigError& e) {
    CHECK(e.condition == "alpha_dec + sigma_max <= 1 - sigma_min");
  }

  inf = ns_inf_defaults();
  inf.gamma = 0.4;  // below the symmetric-membership lower bound
  try {
    validate_options(inf, 4);
    FAIL("gamma lower bound should be rejected");
  } catch (const ConfigError& e) {
    CHECK(e.condition ==
          "gamma >= 2 / (-8 beta + sqrt((8 beta + 2)^2 + "
          "4 / (3 sigma_min)))");
  }
}

TEST_CASE("step-size plan hand values") {
  SolverOptions o;
  o.variant = Variant::FeasibleN2;
  const TheoryConstants c = compute_constants(o, 0.0, 1.0);

  StepSizes s = step_size_plan(o, 1, c);
  CHECK(s.alpha_newton == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(s.alpha_qn == doctest::Approx(0.03).epsilon(1e-12));

  s = step_size_plan(o, 4, c);
  CHECK(s.alpha_newton == doctest::Approx(0.16 / 6.0).epsilon(1e-12));
}

TEST_CASE("symmetric-regime constant and step sizes") {
  SolverOptions o;
  o.variant = Variant::FeasibleNs;
  o.gamma = 0.5;
  o.sigma_min = 0.5;
  o.sigma_max = 0.5;
  const TheoryConstants c = compute_constants(o, 0.0, 1.0);
  CHECK(c.l == doctest::Approx(3.637e-4).epsilon(1e-3));
  const StepSizes s = step_size_plan(o, 2, c);
  const double cap =
      std::pow(2.0, 1.5) * 0.5 * 0.5 / 1.5 * 0.5 / 2.0;
  CHECK(s.alpha_newton ==
        doctest::Approx(std::min(cap, 0.5 * c.l / 16.0)).epsilon(1e-12));
  CHECK(s.alpha_qn == doctest::Approx(2.0 * s.alpha_newton).epsilon(1e-15));
}

TEST_CASE("infeasible constants satisfy their internal relations") {
  const SolverOptions o = ns_inf_defaults();
  const TheoryConstants c = compute_constants(o, 50.0, 100.0);
  CHECK(c.omega == doctest::Approx(9.0 / std::sqrt(0.76)).epsilon(1e-12));
  CHECK(c.C3 >= 1.0);
  CHECK(c.kappa == doctest::Approx(2.0 * c.omega * c.omega + c.C6 * c.C6));
  CHECK(c.C5 <= c.C4);
  const StepSizes s = step_size_plan(o, 4, c);
  CHECK(s.alpha_qn == doctest::Approx(s.alpha_newton / c.C3));
  CHECK(s.alpha_newton <= 1.0);
}

TEST_CASE("gap recurrence hand values") {
  CHECK(mu_after_step(2.0, 0.6, 0.5) == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(mu_after_step(3.0, 0.9, 0.0) == doctest::Approx(3.0));
  CHECK(mu_after_step(3.0, 1.0, 1.0) == doctest::Approx(3.0));
}

TEST_CASE("the loop alternates full and rank-1 steps and shrinks mu") {
  const GeneratedInstance inst = generate_centered_lp(4, 2, 1.0, 3);
  SolverOptions o;
  o.variant = Variant::FeasibleN2;
  o.mode = Mode::Theory;
  o.max_iters = 10;
  const RunResult r = run(inst.problem, *inst.central_start, o);
  REQUIRE(r.trace.size() == 10);
  double nu = 1.0;
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const StepRecord& rec = r.trace[i];
    CHECK(rec.step_type == (i % 2 == 0 ? 'N' : 'Q'));
    CHECK(rec.nu == doctest::Approx(nu).epsilon(1e-12));
    nu *= 1.0 - rec.alpha;
    CHECK(rec.mu_after < rec.mu_before);
    CHECK(rec.mu_after ==
          doctest::Approx(mu_after_step(rec.mu_before, rec.sigma, rec.alpha))
              .epsilon(1e-10));
    CHECK(rec.prox_n2 <= 0.4);
    if (rec.step_type == 'Q') CHECK(std::isfinite(rec.gamma1));
  }
}

TEST_CASE("starting outside the neighborhood is rejected") {
  const GeneratedInstance inst = generate_centered_lp(4, 2, 1.0, 3);
  IteratePoint start = *inst.central_start;
  SolverOptions o;
  o.variant = Variant::FeasibleN2;
  IteratePoint off = start;
  off.x(0) *= 50.0;  // destroys feasibility and proximity
  CHECK_THROWS_AS(run(inst.problem, off, o), ContractViolation);
}

TEST_CASE("adaptive mode converges on a small feasible instance") {
  const GeneratedInstance inst = generate_centered_lp(6, 3, 1.0, 8);
  SolverOptions o;
  o.variant = Variant::FeasibleN2;
  o.mode = Mode::Adaptive;
  o.epsilon = 1e-6;
  o.max_iters = 2000;
  const RunResult r = run(inst.problem, *inst.central_start, o);
  CHECK(r.status == Status::Converged);
  CHECK(mu(r.final_point) <= 1e-6 * r.mu0);
}

TEST_CASE("infeasible adaptive run reduces residuals along nu") {
  const GeneratedInstance inst = generate_solved_lp(5, 2, 21);
  SolverOptions o = ns_inf_defaults();
  o.mode = Mode::Adaptive;
  o.epsilon = 1e-6;
  o.max_iters = 4000;
  const IteratePoint start = cold_start(*inst.xi, 5, 2);
  const RunResult r = run(inst.problem, start, o);
  CHECK(r.status == Status::Converged);
  double nu = 1.0;
  for (const StepRecord& rec : r.trace) {
    nu *= 1.0 - rec.alpha;
    const double measured = std::hypot(rec.norm_rb, rec.norm_rc);
    CHECK(measured ==
          doctest::Approx(nu * r.init_residual_norm)
              .epsilon(1e-8)
              .scale(1.0 + r.init_residual_norm));
  }
}
