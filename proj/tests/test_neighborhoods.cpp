#include <doctest.h>

#include <cmath>
#include <random>

#include "qnipm/neighborhoods.hpp"

using namespace qnipm;

namespace {

IteratePoint pt2(double x0, double x1, double z0, double z1) {
  IteratePoint p;
  p.x = Vec(2);
  p.x << x0, x1;
  p.lambda = Vec::Zero(1);
  p.z = Vec(2);
  p.z << z0, z1;
  return p;
}

IteratePoint random_interior(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.2, 3.0);
  IteratePoint p;
  p.x = Vec(n);
  p.z = Vec(n);
  p.lambda = Vec::Zero(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.x(i) = u(rng);
    p.z(i) = u(rng);
  }
  return p;
}

}  // namespace

TEST_CASE("two-norm proximity hand values") {
  IteratePoint p;
  p.x = Vec::Ones(5);
  p.z = Vec::Ones(5);
  p.lambda = Vec::Zero(1);
  CHECK(n2_proximity(p) == doctest::Approx(0.0).epsilon(1e-15));

  const IteratePoint q = pt2(1.2, 0.8, 1.0, 1.0);
  CHECK(n2_proximity(q) == doctest::Approx(0.2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(n2_proximity(q) <= 0.4);  // member at theta = 0.4
}

TEST_CASE("proximity rejects non-interior points") {
  IteratePoint p = pt2(1.0, -1.0, 1.0, 1.0);
  CHECK_THROWS_AS(n2_proximity(p), ContractViolation);
}

TEST_CASE("symmetric neighborhood hand values") {
  IteratePoint p;
  p.x = Vec::Ones(3);
  p.z = Vec::Ones(3);
  p.lambda = Vec::Zero(1);
  NsCheckResult r = ns_check(p, 0.9);
  CHECK(r.is_member);
  CHECK(r.min_ratio == doctest::Approx(1.0));
  CHECK(r.max_ratio == doctest::Approx(1.0));

  r = ns_check(pt2(0.8, 1.2, 1.0, 1.0), 0.5);
  CHECK(r.is_member);
  CHECK(r.min_ratio == doctest::Approx(0.8));
  CHECK(r.max_ratio == doctest::Approx(1.2));

  r = ns_check(pt2(0.4, 1.6, 1.0, 1.0), 0.5);
  CHECK_FALSE(r.is_member);
  CHECK(r.min_ratio == doctest::Approx(0.4));
  CHECK(r.max_ratio == doctest::Approx(1.6));
}

TEST_CASE("infeasible membership combines ratio and residual bounds") {
  NeighborhoodSpec spec;
  spec.kind = NeighborhoodKind::NsInfeasible;
  spec.gamma = 0.5;
  spec.beta = 1.0;
  spec.init_ratio = 0.0;

  IteratePoint p;
  p.x = Vec::Ones(2);
  p.z = Vec::Ones(2);
  p.lambda = Vec::Zero(1);
  Residuals r;
  r.r_b = Vec::Zero(1);
  r.r_c = Vec::Zero(2);
  r.comp = p.x.cwiseProduct(p.z);
  r.mu = 1.0;
  CHECK(ns_inf_check(p, r, spec));

  // cold-start style boundary: residual norm equals init_ratio*beta*mu
  spec.init_ratio = 2.0;
  r.r_b(0) = 2.0;
  CHECK(ns_inf_check(p, r, spec));

  r.r_b(0) = 4.0 + 1e-6;  // twice the allowed bound
  CHECK_FALSE(ns_inf_check(p, r, spec));
}

TEST_CASE("membership is monotone in the parameters") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const IteratePoint p = random_interior(rng, 6);
    const double prox = n2_proximity(p);
    if (prox <= 0.3) CHECK(prox <= 0.6);
    const NsCheckResult a = ns_check(p, 0.6);
    const NsCheckResult b = ns_check(p, 0.3);
    if (a.is_member) CHECK(b.is_member);
  }
}

TEST_CASE("two-norm membership implies symmetric bounds with gamma = 1-theta") {
  std::mt19937_64 rng(12);
  int hits = 0;
  for (int t = 0; t < 200; ++t) {
    IteratePoint p = random_interior(rng, 4);
    // pull the products toward their mean to land inside N2(0.4)
    const double m = mu(p);
    p.z = 0.8 * (m * p.x.cwiseInverse()) + 0.2 * p.z;
    const double theta = n2_proximity(p);
    if (theta >= 0.4) continue;
    ++hits;
    CHECK(ns_check(p, 1.0 - theta).is_member);
  }
  CHECK(hits > 50);
}

TEST_CASE("proximity is invariant under (x,z) -> (tx, z/t)") {
  std::mt19937_64 rng(13);
  const IteratePoint p = random_interior(rng, 5);
  IteratePoint q = p;
  const double t = 7.3;
  q.x *= t;
  q.z /= t;
  CHECK(n2_proximity(q) == doctest::Approx(n2_proximity(p)).epsilon(1e-13));
  const NsCheckResult a = ns_check(p, 0.5);
  const NsCheckResult b = ns_check(q, 0.5);
  CHECK(a.min_ratio == doctest::Approx(b.min_ratio).epsilon(1e-13));
  CHECK(a.max_ratio == doctest::Approx(b.max_ratio).epsilon(1e-13));
}
