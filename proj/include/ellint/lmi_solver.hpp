#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <vector>

#include "ellint/sym_matrix.hpp"

namespace ellint {

// Affine symmetric-matrix map M(y) = constant + sum_j y_j coeff_j.
class AffineSymMap {
 public:
  AffineSymMap(SymMatrix constant, std::vector<SymMatrix> coeff);

  int order() const { return constant_.order(); }
  int vars() const { return static_cast<int>(coeff_.size()); }
  const SymMatrix& constant() const { return constant_; }
  const SymMatrix& coeff(int j) const { return coeff_.at(j); }

  SymMatrix eval(const Eigen::VectorXd& y) const;

 private:
  SymMatrix constant_;
  std::vector<SymMatrix> coeff_;
};

SymMatrix eval_map(const AffineSymMap& m, const Eigen::VectorXd& y);

enum class ConstraintSense { NegSemidef, PosSemidef };

// Objective functional for the barrier solver: a linear form, the negative
// log-determinant of a designated map, or the trace of its inverse (handled
// internally by an epigraph reformulation).
struct ObjectiveSpec {
  enum class Kind { Linear, LogDet, TraceInverse };
  Kind kind = Kind::Linear;
  Eigen::VectorXd linear;
  int map_index = -1;

  static ObjectiveSpec make_linear(Eigen::VectorXd c);
  static ObjectiveSpec make_logdet(int map_index);
  static ObjectiveSpec make_trace_inverse(int map_index);
};

// minimize phi(y)
//   s.t. maps[k](y) <= 0 or >= 0 for each declared constraint,
//        y_j >= 0 for j in the nonnegative set.
struct LmiProblem {
  int var_count = 0;
  std::vector<AffineSymMap> maps;
  std::vector<std::pair<int, ConstraintSense>> constraints;
  ObjectiveSpec objective;
  std::vector<int> nonneg;

  void validate() const;
};

struct SolverOptions {
  double mu_growth = 8.0;
  double mu_init = 1.0;
  double newton_tol = 1e-9;  // on the half squared Newton decrement
  double path_tol = 1e-8;    // duality-gap surrogate: barrier dimension / t
  int max_outer = 60;
  int max_newton = 50;

  void validate() const;
};

enum class SolveStatus { Optimal, MaxIterations, Infeasible };

struct SolverResult {
  Eigen::VectorXd y;
  double objective = 0.0;
  SolveStatus status = SolveStatus::Infeasible;

  struct Diagnostics {
    double final_mu = 0.0;          // final barrier weight
    double newton_decrement = 0.0;  // half squared decrement at the last center
    double min_slack_eigenvalue = 0.0;
    int outer_iterations = 0;
    int newton_iterations = 0;
    bool used_phase1 = false;
    std::vector<double> center_objectives;  // phi after each centering
  } diagnostics;
};

// Strictly feasible point via the auxiliary problem  min s  s.t.
// M_k(y) <= s I (resp. >= -s I) and y_j + s >= 0, run through the same
// barrier machinery. Returns nullopt when no point with slack margin 1e-6
// is found.
std::optional<Eigen::VectorXd> phase1(const LmiProblem& problem,
                                      const SolverOptions& opts = {});

// Log-barrier path following with exact gradients and Hessians assembled from
// slack inverses. `start` must be strictly feasible when provided; otherwise
// phase1 runs first.
SolverResult solve(const LmiProblem& problem, const SolverOptions& opts = {},
                   const std::optional<Eigen::VectorXd>& start = std::nullopt);

// Scaled upper-triangle flattening of symmetric matrices (off-diagonals
// carry a factor sqrt(2)) so that <A,B>_F = svec(A)^T svec(B).
int svec_size(int order);
std::vector<SymMatrix> sym_basis(int order);
Eigen::VectorXd svec(const SymMatrix& a);
SymMatrix smat(const Eigen::VectorXd& v, int order);

}  // namespace ellint
