#pragma once

#include <Eigen/Core>
#include <vector>

#include "ellint/sym_matrix.hpp"

namespace ellint {

enum class SizeCriterion { Trace, LogDet };

// Ellipsoid {x : (x - c)^T P^{-1} (x - c) <= 1} with P symmetric positive
// definite. Validated on construction; the Cholesky factor of P is cached and
// every P^{-1} application is a triangular solve against it.
class Ellipsoid {
 public:
  Ellipsoid(Eigen::VectorXd center, SymMatrix shape);

  int dimension() const { return static_cast<int>(center_.size()); }
  const Eigen::VectorXd& center() const { return center_; }
  const SymMatrix& shape() const { return shape_; }
  const Eigen::MatrixXd& cholesky() const { return chol_; }

  // Value of the defining quadratic form at x.
  double form_value(const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd center_;
  SymMatrix shape_;
  Eigen::MatrixXd chol_;  // lower factor, shape = chol * chol^T
};

Ellipsoid make_ellipsoid(const Eigen::VectorXd& center, const SymMatrix& shape);

bool contains(const Ellipsoid& e, const Eigen::VectorXd& x, double tol);

// trace(P) or logdet(P); logdet from the cached Cholesky factor.
double size_value(const Ellipsoid& e, SizeCriterion criterion);
double logdet(const SymMatrix& spd);

// Quadratic-form view: xi = [x^T 1]^T, set = {xi : xi^T A xi <= 0} with
// A = [[P^{-1}, -P^{-1} x], [-x^T P^{-1}, x^T P^{-1} x - 1]].
class QuadraticForm {
 public:
  explicit QuadraticForm(SymMatrix a);
  const SymMatrix& matrix() const { return a_; }
  int dimension() const { return a_.order() - 1; }
  // Recovers (center, shape) from the blocks of A.
  Ellipsoid to_ellipsoid() const;

 private:
  SymMatrix a_;
};

QuadraticForm quadratic_form(const Ellipsoid& e);

// Ordered members whose intersection is the feasible region.
class IntersectionSpec {
 public:
  explicit IntersectionSpec(std::vector<Ellipsoid> members);

  int size() const { return static_cast<int>(members_.size()); }
  int dimension() const { return members_.front().dimension(); }
  const Ellipsoid& member(int i) const { return members_.at(i); }
  const std::vector<Ellipsoid>& members() const { return members_; }

 private:
  std::vector<Ellipsoid> members_;
};

}  // namespace ellint
