#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellint/relaxations.hpp"
#include "ellint/rng.hpp"

namespace ellint {

// Seeded random instance with a decisively nonempty intersection: every
// member has eigenvalues in [1, 1.8] and center within 0.2 of the origin, so
// all of them contain the ball of radius 0.8 around the origin.
struct GridInstance {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  IntersectionSpec spec;
};

Ellipsoid random_member(int n, Rng& rng);
IntersectionSpec random_nonempty_spec(int n, int m, Rng& rng);

// Deterministic grid cycling n through {1,2,3,4} and m through {1,2,3,5}.
std::vector<GridInstance> make_instance_grid(std::uint64_t root_seed, int count);

// The three-ellipsoid fusion scenario with the third center's second
// coordinate equal to xi.
IntersectionSpec static_case_spec(double xi);

struct VerifyOptions {
  std::uint64_t seed = 20260314;
  int instance_count = 50;
  int containment_samples = 10000;
  int prop2_candidates = 100;
  double prop1_tol = 1e-4;
  double prop2_obj_tol = 1e-6;
  double prop3_tol = 1e-4;
  double corollary_slack = 1e-8;
  double containment_tol = 1e-9;
  double mvee_margin = 1e-6;
  double identity_tol = 1e-6;
  double monotonicity_tol = 1e-6;
  // Harness-testing hook: shifts the decoupled center so containment must fail.
  bool inject_decoupled_center_fault = false;
};

// Everything the checks need about one instance, computed once.
struct InstanceEvaluation {
  GridInstance instance;
  std::array<std::optional<MethodResult>, 8> logdet;  // indexed by Method
  std::array<double, 8> trace_objective{};
  std::vector<Eigen::VectorXd> samples;
  double mvee_logdet = 0.0;
};

std::vector<InstanceEvaluation> evaluate_grid(const VerifyOptions& opts);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  // failing instance seeds and margins
};

CheckResult check_prop1_equivalence(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts);
CheckResult check_prop2_equivalence(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts);
CheckResult check_prop3_equivalence(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts);
CheckResult check_corollary_orderings(const std::vector<InstanceEvaluation>& evals,
                                      const VerifyOptions& opts);
CheckResult check_containment(const std::vector<InstanceEvaluation>& evals,
                              const VerifyOptions& opts);
CheckResult check_mvee_lower_bound(const std::vector<InstanceEvaluation>& evals,
                                   const VerifyOptions& opts);
CheckResult check_delta_bounds(const std::vector<InstanceEvaluation>& evals,
                               const VerifyOptions& opts);
CheckResult check_monotonicity(const std::vector<InstanceEvaluation>& evals,
                               const VerifyOptions& opts);
CheckResult check_identity_collapse(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts);

// Runs every check above on a freshly evaluated grid.
std::vector<CheckResult> run_invariant_suite(const VerifyOptions& opts);

}  // namespace ellint
