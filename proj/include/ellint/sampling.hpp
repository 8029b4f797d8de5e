#pragma once

#include <optional>
#include <vector>

#include "ellint/ellipsoid.hpp"
#include "ellint/rng.hpp"

namespace ellint {

// Uniform draw inside an ellipsoid: direction uniform on the sphere, radius
// u^(1/n), mapped through the Cholesky factor and shifted by the center.
Eigen::VectorXd sample_in_ellipsoid(const Ellipsoid& e, Rng& rng);

// Best-effort interior point of the intersection: subgradient descent on
// g(x) = max_i (x - x_i)^T P_i^{-1} (x - x_i) with diminishing steps from the
// average of centers. Returns a point with g <= 1 - 1e-9, or nullopt if the
// iteration budget runs out (which does not prove emptiness).
std::optional<Eigen::VectorXd> intersection_feasible_point(
    const IntersectionSpec& spec);

// Rejection sampling from the member with smallest logdet size. Throws
// SamplingBudgetExceeded (carrying the accepted count) after 10^6 draws.
std::vector<Eigen::VectorXd> sample_intersection(const IntersectionSpec& spec,
                                                 std::size_t count, Rng& rng);

}  // namespace ellint
