#include "ellint/ellipsoid.hpp"

#include <cmath>
#include <utility>

namespace ellint {

Ellipsoid::Ellipsoid(Eigen::VectorXd center, SymMatrix shape)
    : center_(std::move(center)), shape_(std::move(shape)) {
  if (center_.size() != shape_.order())
    throw DimensionMismatch("Ellipsoid: center length must equal shape order");
  chol_ = cholesky_factor(shape_);
}

double Ellipsoid::form_value(const Eigen::VectorXd& x) const {
  if (x.size() != center_.size())
    throw DimensionMismatch("Ellipsoid: point dimension mismatch");
  const Eigen::VectorXd z =
      chol_.triangularView<Eigen::Lower>().solve(x - center_);
  return z.squaredNorm();
}

Ellipsoid make_ellipsoid(const Eigen::VectorXd& center, const SymMatrix& shape) {
  return Ellipsoid(center, shape);
}

bool contains(const Ellipsoid& e, const Eigen::VectorXd& x, double tol) {
  if (tol < 0.0) throw InvalidArgument("contains: tol must be >= 0");
  return e.form_value(x) <= 1.0 + tol;
}

double logdet(const SymMatrix& spd) {
  const Eigen::MatrixXd l = cholesky_factor(spd);
  double v = 0.0;
  for (int i = 0; i < l.rows(); ++i) v += std::log(l(i, i));
  return 2.0 * v;
}

double size_value(const Ellipsoid& e, SizeCriterion criterion) {
  if (criterion == SizeCriterion::Trace) return e.shape().trace();
  double v = 0.0;
  for (int i = 0; i < e.dimension(); ++i) v += std::log(e.cholesky()(i, i));
  return 2.0 * v;
}

QuadraticForm::QuadraticForm(SymMatrix a) : a_(std::move(a)) {
  if (a_.order() < 2)
    throw DimensionMismatch("QuadraticForm: order must be at least 2");
}

QuadraticForm quadratic_form(const Ellipsoid& e) {
  const int n = e.dimension();
  const Eigen::MatrixXd& l = e.cholesky();
  // P^{-1} = L^{-T} L^{-1}, symmetrized to kill round-off asymmetry.
  Eigen::MatrixXd linv =
      l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd pinv = linv.transpose() * linv;
  pinv = 0.5 * (pinv + pinv.transpose()).eval();
  const Eigen::VectorXd px = pinv * e.center();

  SymMatrix a(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a.set(i, j, pinv(i, j));
    a.set(i, n, -px[i]);
  }
  a.set(n, n, e.center().dot(px) - 1.0);
  return QuadraticForm(a);
}

Ellipsoid QuadraticForm::to_ellipsoid() const {
  const int n = dimension();
  const Eigen::MatrixXd dense = a_.dense();
  const SymMatrix pinv = SymMatrix::from_dense(dense.topLeftCorner(n, n));
  const Eigen::MatrixXd l = cholesky_factor(pinv);
  const Eigen::VectorXd rhs = -dense.topRightCorner(n, 1);
  // center = P * (P^{-1} x) via two triangular solves
  Eigen::VectorXd center = l.triangularView<Eigen::Lower>().solve(rhs);
  center = l.transpose().triangularView<Eigen::Upper>().solve(center);
  Eigen::MatrixXd linv =
      l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd p = linv.transpose() * linv;
  return Ellipsoid(center, SymMatrix::from_dense(p));
}

IntersectionSpec::IntersectionSpec(std::vector<Ellipsoid> members)
    : members_(std::move(members)) {
  if (members_.empty())
    throw DimensionMismatch("IntersectionSpec: at least one ellipsoid required");
  const int n = members_.front().dimension();
  for (const Ellipsoid& e : members_)
    if (e.dimension() != n)
      throw DimensionMismatch("IntersectionSpec: members must share a dimension");
}

}  // namespace ellint
