#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace ellint {

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

struct SimplexObjective {
  // Returns the value and fills the gradient at t (t on the simplex).
  std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)> eval;
};

struct PgOptions {
  int max_iterations = 2000;
  double step_tol = 1e-13;     // on the accepted step length
  double armijo_sigma = 1e-4;  // sufficient decrease
  double backtrack = 0.5;
};

struct PgResult {
  Eigen::VectorXd t;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Projected gradient with Armijo backtracking and adaptive step growth,
// started from `start` (projected onto the simplex first).
PgResult projected_gradient_simplex(const SimplexObjective& objective,
                                    const Eigen::VectorXd& start,
                                    const PgOptions& opts = {});

// Best of several starts; ties within `tie_margin` keep the earliest start,
// so putting the barycenter first makes flat objectives deterministic.
PgResult multistart_projected_gradient(const SimplexObjective& objective,
                                       const std::vector<Eigen::VectorXd>& starts,
                                       const PgOptions& opts = {},
                                       double tie_margin = 1e-10);

// Golden-section minimizer on [lo, hi] for a unimodal scalar function.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-11, int max_iters = 200);

}  // namespace ellint
