#include "ellint/mvee.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ellint {

namespace {

Eigen::MatrixXd lifted_inverse(const Eigen::MatrixXd& q,
                               const Eigen::VectorXd& u) {
  const int d = static_cast<int>(q.rows());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < q.cols(); ++j)
    if (u[j] > 0.0) m += u[j] * q.col(j) * q.col(j).transpose();
  return m.ldlt().solve(Eigen::MatrixXd::Identity(d, d));
}

}  // namespace

Ellipsoid mvee_of_points(const std::vector<Eigen::VectorXd>& points, double tol) {
  if (points.empty()) throw DegenerateInput("mvee_of_points: no points");
  if (tol <= 0.0) throw InvalidArgument("mvee_of_points: tol must be positive");
  const int n = static_cast<int>(points.front().size());
  const int count = static_cast<int>(points.size());
  for (const auto& p : points)
    if (p.size() != n) throw DimensionMismatch("mvee_of_points: mixed dimensions");

  // Affine independence: the centered point matrix must have full rank n.
  if (count < n + 1)
    throw DegenerateInput("mvee_of_points: need at least n+1 points");
  {
    Eigen::MatrixXd centered(n, count - 1);
    for (int j = 1; j < count; ++j) centered.col(j - 1) = points[j] - points[0];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(centered);
    qr.setThreshold(1e-10);
    if (qr.rank() < n)
      throw DegenerateInput("mvee_of_points: points are affinely dependent");
  }

  const int d = n + 1;
  Eigen::MatrixXd q(d, count);
  for (int j = 0; j < count; ++j) {
    q.col(j).head(n) = points[j];
    q(n, j) = 1.0;
  }

  Eigen::VectorXd u = Eigen::VectorXd::Constant(count, 1.0 / count);
  Eigen::MatrixXd minv = lifted_inverse(q, u);
  Eigen::VectorXd kappa(count);
  for (int j = 0; j < count; ++j) kappa[j] = q.col(j).dot(minv * q.col(j));

  const long max_iters = 200000;
  const int refresh_period = 512;
  for (long iter = 0; iter < max_iters; ++iter) {
    int plus = 0;
    double kplus = -std::numeric_limits<double>::infinity();
    int minus = -1;
    double kminus = std::numeric_limits<double>::infinity();
    for (int j = 0; j < count; ++j) {
      if (kappa[j] > kplus) {
        kplus = kappa[j];
        plus = j;
      }
      if (u[j] > 0.0 && kappa[j] < kminus) {
        kminus = kappa[j];
        minus = j;
      }
    }
    const double eps_plus = kplus / d - 1.0;
    const double eps_minus = minus >= 0 ? 1.0 - kminus / d : 0.0;
    if (std::max(eps_plus, eps_minus) <= tol) break;

    // Step toward the worst violator or away from the weakest support point,
    // whichever closes more of the gap.
    int j;
    double lambda;
    if (eps_plus >= eps_minus) {
      j = plus;
      lambda = (kplus - d) / (d * (kplus - 1.0));
    } else {
      j = minus;
      lambda = (kminus - d) / (d * (kminus - 1.0));       // negative
      lambda = std::max(lambda, -u[j] / (1.0 - u[j]));    // drop step floor
    }
    u *= (1.0 - lambda);
    u[j] += lambda;
    if (u[j] < 0.0) u[j] = 0.0;

    const double denom = 1.0 - lambda + lambda * kappa[j];
    if ((iter + 1) % refresh_period == 0 || denom <= 1e-12) {
      minv = lifted_inverse(q, u);
      for (int k = 0; k < count; ++k) kappa[k] = q.col(k).dot(minv * q.col(k));
    } else {
      // Sherman-Morrison: M' = (1-l) M + l q q^T, so
      // M'^{-1} = M^{-1}/(1-l) - l/((1-l) denom) * w w^T with w = M^{-1} q.
      const Eigen::VectorXd w = minv * q.col(j);
      minv /= (1.0 - lambda);
      minv -= (lambda / ((1.0 - lambda) * denom)) * (w * w.transpose());
      const Eigen::VectorXd qw = q.transpose() * w;
      for (int k = 0; k < count; ++k)
        kappa[k] = kappa[k] / (1.0 - lambda) -
                   (lambda * qw[k] * qw[k]) / ((1.0 - lambda) * denom);
    }
  }

  Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < count; ++j) center += u[j] * points[j];
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < count; ++j)
    if (u[j] > 0.0) second += u[j] * points[j] * points[j].transpose();
  Eigen::MatrixXd sigma = second - center * center.transpose();
  Eigen::MatrixXd p = static_cast<double>(n) * 0.5 * (sigma + sigma.transpose());
  return Ellipsoid(center, SymMatrix::from_dense(p));
}

}  // namespace ellint
