#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ellint/ellipsoid.hpp"
#include "ellint/lmi_solver.hpp"

namespace ellint {

enum class Method {
  FullSdp,
  SProcedure,
  DecoupledSdp,
  InscribedInflate,
  BoundingNoDelta,
  BoundingOptimal,
  CovarianceIntersection,
  RecursiveBounding,
};

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

class WeightVector {
 public:
  enum class Normalization { Nonnegative, Simplex };

  WeightVector(Eigen::VectorXd weights, Normalization norm);

  const Eigen::VectorXd& weights() const { return weights_; }
  Normalization normalization() const { return norm_; }
  int size() const { return static_cast<int>(weights_.size()); }

 private:
  Eigen::VectorXd weights_;
  Normalization norm_;
};

// Parametric fused set for simplex weights t:
//   P_t^{-1} = sum t_i P_i^{-1},  x_t = P_t sum t_i P_i^{-1} x_i,
//   delta_t  = sum t_i x_i^T P_i^{-1} x_i - x_t^T P_t^{-1} x_t.
// The outer ellipsoid (x_t, (1 - delta_t) P_t) contains the intersection.
struct ParametricFusion {
  SymMatrix shape;         // P_t
  Eigen::VectorXd center;  // x_t
  double delta;            // delta_t
};

struct MethodDiagnostics {
  std::string engine;  // "barrier", "projected-gradient", "golden-section", ...
  std::string status = "optimal";
  int iterations = 0;
  double final_mu = 0.0;
  double newton_decrement = 0.0;
  double min_slack_eigenvalue = 0.0;
  double seconds = 0.0;
};

struct MethodResult {
  Method method;
  Ellipsoid ellipsoid;
  double objective = 0.0;
  std::optional<WeightVector> weights;
  MethodDiagnostics diagnostics;
};

ParametricFusion parametric_fuse(const IntersectionSpec& spec,
                                 const WeightVector& t);

// Simplex-optimal P_t without the delta scaling (the CI fusion rule).
MethodResult covariance_intersection(const IntersectionSpec& spec,
                                     SizeCriterion criterion);

// CI weights, then the (1 - delta) tightening of the fused shape.
MethodResult bounding_no_delta(const IntersectionSpec& spec,
                               SizeCriterion criterion);

// Direct minimization of f((1 - delta_t) P_t) by multi-start projected
// gradient over the simplex.
MethodResult bounding_optimal(const IntersectionSpec& spec,
                              SizeCriterion criterion);

// Decoupled SDP in nonnegative weights only, with closed-form recovery of the
// ellipsoid from the optimal weights.
MethodResult decoupled_sdp(const IntersectionSpec& spec, SizeCriterion criterion);

// Full SDP relaxation in (P_0^{-1}, P_0^{-1} x_0, lambda).
MethodResult full_sdp(const IntersectionSpec& spec, SizeCriterion criterion);

// S-procedure relaxation assembled from the members' quadratic forms; after
// the Schur-complement transformation the constraint matrix coincides with
// the full SDP's.
MethodResult s_procedure(const IntersectionSpec& spec, SizeCriterion criterion);

// Maximum-volume ellipsoid inscribed in the intersection, plus its
// multipliers.
std::pair<Ellipsoid, WeightVector> max_inscribed(const IntersectionSpec& spec);

// Factor-n inflation of the inscribed ellipsoid about its own center.
MethodResult inscribed_inflate(const IntersectionSpec& spec,
                               SizeCriterion criterion);

// Sequential pairwise fusion with a scalar weight per stage; with scale_delta
// the (1 - delta) tightening is applied after each stage.
MethodResult recursive_bounding(const IntersectionSpec& spec,
                                SizeCriterion criterion, bool scale_delta = true);

MethodResult run_method(Method method, const IntersectionSpec& spec,
                        SizeCriterion criterion);

// Certificate checks for a candidate outer ellipsoid with given multipliers:
// the S-procedure condition A_0 <= sum tau_i A_i on the quadratic forms, and
// the equivalent block-matrix feasibility test. Both use eigenvalue tests
// with the scaled PSD slack.
bool s_procedure_certificate(const IntersectionSpec& spec,
                             const Ellipsoid& candidate,
                             const Eigen::VectorXd& tau);
bool sdp_certificate(const IntersectionSpec& spec, const Ellipsoid& candidate,
                     const Eigen::VectorXd& lambda);

// Options used by the SDP-backed methods: one order tighter than the solver
// defaults so the corollary orderings hold at their stated slack.
SolverOptions relaxation_solver_options();

}  // namespace ellint
