#include "ellint/sym_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ellint {

SymMatrix::SymMatrix(int order) : order_(order) {
  if (order < 1) throw DimensionMismatch("SymMatrix: order must be >= 1");
  data_.assign(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0);
}

int SymMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= order_ || j >= order_)
    throw DimensionMismatch("SymMatrix: index out of range");
  if (i > j) std::swap(i, j);
  // row-major packed upper triangle
  return i * order_ - i * (i - 1) / 2 + (j - i);
}

SymMatrix SymMatrix::identity(int order) {
  SymMatrix m(order);
  for (int i = 0; i < order; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("SymMatrix::from_dense: matrix not square");
  SymMatrix m(static_cast<int>(a.rows()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j) m.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return m;
}

Eigen::MatrixXd SymMatrix::dense() const {
  Eigen::MatrixXd a(order_, order_);
  for (int i = 0; i < order_; ++i)
    for (int j = i; j < order_; ++j) a(i, j) = a(j, i) = (*this)(i, j);
  return a;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < order_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::max_diagonal() const {
  double m = (*this)(0, 0);
  for (int i = 1; i < order_; ++i) m = std::max(m, (*this)(i, i));
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.order_ != order_)
    throw DimensionMismatch("SymMatrix: order mismatch in +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

void SymMatrix::accumulate_into(std::vector<double>& packed, double scale) const {
  if (packed.size() != data_.size())
    throw DimensionMismatch("SymMatrix: packed size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) packed[k] += scale * data_[k];
}

double pd_pivot_threshold(const SymMatrix& a) {
  return 1e-10 * (1.0 + std::max(0.0, a.max_diagonal()));
}

bool try_cholesky_factor(const SymMatrix& a, Eigen::MatrixXd& factor) {
  const int n = a.order();
  const double eps = pd_pivot_threshold(a);
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= eps) return false;
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  factor = std::move(l);
  return true;
}

Eigen::MatrixXd cholesky_factor(const SymMatrix& a) {
  Eigen::MatrixXd l;
  if (!try_cholesky_factor(a, l))
    throw NotPositiveDefinite("matrix is not positive definite (Cholesky pivot)");
  return l;
}

double psd_tolerance(double spectral_norm_estimate) {
  return 1e-8 * (1.0 + std::abs(spectral_norm_estimate));
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool schur_psd(const SymMatrix& a, const Eigen::MatrixXd& b, const SymMatrix& c) {
  const int p = a.order();
  const int q = c.order();
  if (b.rows() != p || b.cols() != q)
    throw DimensionMismatch("schur_psd: block dimensions not conformal");
  Eigen::MatrixXd m(p + q, p + q);
  m.topLeftCorner(p, p) = a.dense();
  m.topRightCorner(p, q) = b;
  m.bottomLeftCorner(q, p) = b.transpose();
  m.bottomRightCorner(q, q) = c.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  const double norm = std::max(std::abs(lo), std::abs(hi));
  return lo >= -psd_tolerance(norm);
}

}  // namespace ellint
