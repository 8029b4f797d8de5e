#pragma once

#include <vector>

#include "ellint/ellipsoid.hpp"

namespace ellint {

// Minimum-volume enclosing ellipsoid of a finite point set, via Khachiyan-style
// multiplicative weights on the lifted moment matrix, with away/drop steps.
// Runs until the relative optimality gap of the lifted problem is <= tol.
// The result contains every input point within a (1 + O(tol)) slack.
// Throws DegenerateInput when the points are affinely dependent.
Ellipsoid mvee_of_points(const std::vector<Eigen::VectorXd>& points, double tol);

}  // namespace ellint
