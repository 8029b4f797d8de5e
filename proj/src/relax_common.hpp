#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ellint/ellipsoid.hpp"

namespace ellint::detail {

// Per-member quantities every relaxation needs: P_i^{-1}, P_i^{-1} x_i and
// x_i^T P_i^{-1} x_i, computed once from the cached Cholesky factors.
struct FusionData {
  int n = 0;
  int m = 0;
  std::vector<Eigen::MatrixXd> pinv;
  std::vector<Eigen::VectorXd> pinv_x;
  std::vector<double> x_pinv_x;

  explicit FusionData(const IntersectionSpec& spec) {
    n = spec.dimension();
    m = spec.size();
    pinv.reserve(m);
    pinv_x.reserve(m);
    x_pinv_x.reserve(m);
    for (const Ellipsoid& e : spec.members()) {
      const Eigen::MatrixXd linv =
          e.cholesky().triangularView<Eigen::Lower>().solve(
              Eigen::MatrixXd::Identity(n, n));
      Eigen::MatrixXd inv = linv.transpose() * linv;
      inv = 0.5 * (inv + inv.transpose()).eval();
      pinv_x.push_back(inv * e.center());
      x_pinv_x.push_back(e.center().dot(pinv_x.back()));
      pinv.push_back(std::move(inv));
    }
  }

  Eigen::MatrixXd combine(const Eigen::VectorXd& w) const {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < m; ++i)
      if (w[i] != 0.0) s += w[i] * pinv[i];
    return s;
  }

  Eigen::VectorXd combine_centers(const Eigen::VectorXd& w) const {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
      if (w[i] != 0.0) b += w[i] * pinv_x[i];
    return b;
  }
};

}  // namespace ellint::detail
