#include "ellint/filter.hpp"

#include <cmath>

namespace ellint {

void LinearDynamics::validate() const {
  if (transition.rows() != transition.cols())
    throw DimensionMismatch("LinearDynamics: transition must be square");
  const int n = static_cast<int>(transition.rows());
  if (process_noise.order() != n)
    throw DimensionMismatch("LinearDynamics: process noise order mismatch");
  cholesky_factor(process_noise);
  for (const SymMatrix& r : sensor_noise) {
    if (r.order() != n)
      throw DimensionMismatch("LinearDynamics: sensor noise order mismatch");
    cholesky_factor(r);
  }
  if (period <= 0.0) throw InvalidArgument("LinearDynamics: period must be positive");
}

FilterState predict(const FilterState& state, const LinearDynamics& dyn) {
  const Eigen::MatrixXd& f = dyn.transition;
  if (f.rows() != state.estimate.dimension())
    throw DimensionMismatch("predict: state dimension mismatch");
  Eigen::MatrixXd fpf = f * state.estimate.shape().dense() * f.transpose();
  fpf = 0.5 * (fpf + fpf.transpose()).eval();
  const double trace_fpf = fpf.trace();
  if (trace_fpf <= 0.0)
    throw DegenerateTrace("predict: propagated shape has nonpositive trace");
  const double s1 = std::sqrt(trace_fpf);
  const double s2 = std::sqrt(dyn.process_noise.trace());
  const double tau1 = s1 / (s1 + s2);
  const double tau2 = 1.0 - tau1;
  Eigen::MatrixXd shape = fpf / tau1 + dyn.process_noise.dense() / tau2;
  return FilterState{Ellipsoid(f * state.estimate.center(),
                               SymMatrix::from_dense(shape)),
                     state.step + 1};
}

Ellipsoid measurement_ellipsoid(const Eigen::VectorXd& y, const SymMatrix& r) {
  return Ellipsoid(y, r);
}

UpdateOutcome update(const FilterState& predicted, const Ellipsoid& measurement,
                     Method method, SizeCriterion criterion) {
  const IntersectionSpec pair({predicted.estimate, measurement});
  try {
    MethodResult res = run_method(method, pair, criterion);
    return UpdateOutcome{FilterState{std::move(res.ellipsoid), predicted.step},
                         false};
  } catch (const SolverInfeasible&) {
    // Possible only through numerical slack; keep the prediction.
    return UpdateOutcome{predicted, true};
  } catch (const OptimizerFailed&) {
    // A vanishing intersection can also surface as an unbounded solve.
    return UpdateOutcome{predicted, true};
  }
}

MethodResult fusion_center(const std::vector<Ellipsoid>& locals, Method method,
                           SizeCriterion criterion) {
  return run_method(method, IntersectionSpec(locals), criterion);
}

}  // namespace ellint
