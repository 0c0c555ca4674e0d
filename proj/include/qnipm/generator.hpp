#pragma once

#include <cstdint>
#include <optional>

#include "qnipm/lp.hpp"

namespace qnipm {

struct GeneratedInstance {
  Problem problem;
  std::optional<IteratePoint> optimal;
  std::optional<IteratePoint> central_start;
  std::optional<double> xi;
  std::uint64_t seed = 0;
};

/// Random full-rank A, start point with products exactly mu0; b and c
/// are defined from the start, so it lies on the central path.
GeneratedInstance generate_centered_lp(Eigen::Index n, Eigen::Index m,
                                       double mu0, std::uint64_t seed);

/// Random instance with a known strictly complementary optimum; xi is
/// a valid bound for the cold start.
GeneratedInstance generate_solved_lp(Eigen::Index n, Eigen::Index m,
                                     std::uint64_t seed);

/// (xi*e, 0, xi*e); mu = xi^2.
IteratePoint cold_start(double xi, Eigen::Index n, Eigen::Index m);

}  // namespace qnipm
