#include "qnipm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SVD>

namespace qnipm {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Mat sample_full_rank(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng) {
  for (int attempt = 0; attempt <= 100; ++attempt) {
    Mat A(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) A(i, j) = uniform(rng, -1.0, 1.0);
    Eigen::JacobiSVD<Mat> svd(A);
    const Vec& sv = svd.singularValues();
    if (sv(sv.size() - 1) >= 1e-10 * sv(0)) return A;
  }
  throw GenerationError("sample_full_rank: repeated rank deficiency");
}

}  // namespace

GeneratedInstance generate_centered_lp(Eigen::Index n, Eigen::Index m,
                                       double mu0, std::uint64_t seed) {
  if (!(m >= 1 && m < n)) {
    throw ContractViolation("generate_centered_lp: need 1 <= m < n");
  }
  if (!(mu0 > 0.0)) {
    throw ContractViolation("generate_centered_lp: mu0 must be positive");
  }
  std::mt19937_64 rng(seed);
  Mat A = sample_full_rank(m, n, rng);
  IteratePoint start;
  start.x = Vec(n);
  for (Eigen::Index i = 0; i < n; ++i) start.x(i) = uniform(rng, 0.5, 2.0);
  start.z = mu0 * start.x.cwiseInverse();
  start.lambda = Vec(m);
  for (Eigen::Index i = 0; i < m; ++i) start.lambda(i) = uniform(rng, -1.0, 1.0);
  Vec b = A * start.x;
  Vec c = A.transpose() * start.lambda + start.z;
  GeneratedInstance inst{Problem::create(std::move(A), std::move(b),
                                         std::move(c)),
                         std::nullopt, start, std::nullopt, seed};
  return inst;
}

GeneratedInstance generate_solved_lp(Eigen::Index n, Eigen::Index m,
                                     std::uint64_t seed) {
  if (!(m >= 1 && m < n)) {
    throw ContractViolation("generate_solved_lp: need 1 <= m < n");
  }
  std::mt19937_64 rng(seed);
  Mat A = sample_full_rank(m, n, rng);
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);

  IteratePoint opt;
  opt.x = Vec::Zero(n);
  opt.z = Vec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool in_support = std::find(idx.begin(), idx.begin() + m, i) !=
                            idx.begin() + m;
    if (in_support) {
      opt.x(i) = uniform(rng, 0.5, 2.0);
    } else {
      opt.z(i) = uniform(rng, 0.5, 2.0);
    }
  }
  opt.lambda = Vec(m);
  for (Eigen::Index i = 0; i < m; ++i) opt.lambda(i) = uniform(rng, -1.0, 1.0);
  Vec b = A * opt.x;
  Vec c = A.transpose() * opt.lambda + opt.z;
  const double gap = c.dot(opt.x) - b.dot(opt.lambda);
  if (std::abs(gap) > 1e-10 * (1.0 + std::abs(c.dot(opt.x)))) {
    throw GenerationError("generate_solved_lp: duality gap not closed");
  }
  const double xi = std::ceil(
      std::max(opt.x.lpNorm<Eigen::Infinity>(), opt.z.lpNorm<Eigen::Infinity>()));
  GeneratedInstance inst{Problem::create(std::move(A), std::move(b),
                                         std::move(c)),
                         opt, std::nullopt, xi, seed};
  return inst;
}

IteratePoint cold_start(double xi, Eigen::Index n, Eigen::Index m) {
  if (!(xi > 0.0)) {
    throw ContractViolation("cold_start: xi must be positive");
  }
  IteratePoint p;
  p.x = Vec::Constant(n, xi);
  p.lambda = Vec::Zero(m);
  p.z = Vec::Constant(n, xi);
  return p;
}

}  // namespace qnipm
