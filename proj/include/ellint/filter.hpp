#pragma once

#include <vector>

#include "ellint/relaxations.hpp"

namespace ellint {

// Linear bounded-noise system x' = F x + w, y^i = x + v^i with w and v^i
// confined to ellipsoids of shapes Q and R^i.
struct LinearDynamics {
  Eigen::MatrixXd transition;                         // F
  SymMatrix process_noise = SymMatrix::identity(1);   // Q, positive definite
  std::vector<SymMatrix> sensor_noise;                // R^i, positive definite
  double period = 1.0;                                // T

  void validate() const;
};

struct FilterState {
  Ellipsoid estimate;
  int step = 0;
};

// Minkowski-sum bounding prediction:
//   P' = (1/tau1) F P F^T + (1/tau2) Q,  x' = F x,
// with tau1 = sqrt(tr(F P F^T)) / (sqrt(tr(F P F^T)) + sqrt(tr(Q))).
FilterState predict(const FilterState& state, const LinearDynamics& dyn);

// {x : (y - x)^T R^{-1} (y - x) <= 1}: center y, shape R.
Ellipsoid measurement_ellipsoid(const Eigen::VectorXd& y, const SymMatrix& r);

struct UpdateOutcome {
  FilterState state;
  bool empty_intersection_fallback = false;
};

// Fuses the predicted and measurement ellipsoids with the selected
// relaxation. An intersection reported infeasible (numerical slack only)
// falls back to the predicted ellipsoid and flags the event.
UpdateOutcome update(const FilterState& predicted, const Ellipsoid& measurement,
                     Method method, SizeCriterion criterion);

MethodResult fusion_center(const std::vector<Ellipsoid>& locals, Method method,
                           SizeCriterion criterion);

}  // namespace ellint
