#pragma once

#include <Eigen/Core>
#include <vector>

#include "ellint/errors.hpp"

namespace ellint {

// Symmetric matrix with a single stored copy of each entry (packed upper
// triangle, row-major). Guarantees entries(i,j) == entries(j,i) exactly.
class SymMatrix {
 public:
  explicit SymMatrix(int order);
  static SymMatrix identity(int order);
  static SymMatrix diagonal(const Eigen::VectorXd& d);
  // Averages a(i,j) and a(j,i); the packed store is the canonical copy.
  static SymMatrix from_dense(const Eigen::MatrixXd& a);

  int order() const { return order_; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, double value) { data_[index(i, j)] = value; }
  void add(int i, int j, double value) { data_[index(i, j)] += value; }

  Eigen::MatrixXd dense() const;
  double trace() const;
  double max_diagonal() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator*=(double scale);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

  // y += s * this (packed axpy, used by affine map evaluation)
  void accumulate_into(std::vector<double>& packed, double scale) const;
  const std::vector<double>& packed() const { return data_; }
  std::vector<double>& packed() { return data_; }

 private:
  int index(int i, int j) const;

  int order_;
  std::vector<double> data_;
};

// Pivot acceptance threshold for Cholesky-based positive definiteness checks.
double pd_pivot_threshold(const SymMatrix& a);

// Lower Cholesky factor of a symmetric positive definite matrix.
// Throws NotPositiveDefinite when a pivot falls at or below the threshold.
Eigen::MatrixXd cholesky_factor(const SymMatrix& a);

// Non-throwing variant; empty optional-style flag via boolean return.
bool try_cholesky_factor(const SymMatrix& a, Eigen::MatrixXd& factor);

// Feasibility slack for PSD tests, scaled to the matrix at hand:
// eps = 1e-8 * (1 + max |eigenvalue|).
double psd_tolerance(double spectral_norm_estimate);

// True iff [[A, B], [B^T, C]] >= -eps_psd * I, decided by eigenvalues of the
// assembled block matrix.
bool schur_psd(const SymMatrix& a, const Eigen::MatrixXd& b, const SymMatrix& c);

// Smallest eigenvalue of a symmetric matrix (dense eigensolver).
double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace ellint
