#include "ellint/sampling.hpp"

#include <cmath>
#include <limits>

namespace ellint {

Eigen::VectorXd sample_in_ellipsoid(const Ellipsoid& e, Rng& rng) {
  const int n = e.dimension();
  Eigen::VectorXd dir(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) dir[i] = rng.normal();
    norm2 = dir.squaredNorm();
  } while (norm2 == 0.0);
  const double radius = std::pow(rng.uniform(), 1.0 / n);
  dir *= radius / std::sqrt(norm2);
  return e.center() + e.cholesky() * dir;
}

namespace {

// Worst member value and its index.
std::pair<double, int> max_form_value(const IntersectionSpec& spec,
                                      const Eigen::VectorXd& x) {
  double best = -std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < spec.size(); ++i) {
    const double v = spec.member(i).form_value(x);
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  return {best, arg};
}

}  // namespace

std::optional<Eigen::VectorXd> intersection_feasible_point(
    const IntersectionSpec& spec) {
  const int n = spec.dimension();
  const int m = spec.size();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (const Ellipsoid& e : spec.members()) x += e.center();
  x /= m;

  double spread = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      spread = std::max(spread,
                        (spec.member(i).center() - spec.member(j).center()).norm());

  constexpr int kMaxIters = 5000;
  constexpr double kTarget = 1.0 - 1e-9;

  auto [g, worst] = max_form_value(spec, x);
  if (g <= kTarget) return x;
  Eigen::VectorXd best_x = x;
  double best_g = g;

  for (int k = 1; k <= kMaxIters && spread > 0.0; ++k) {
    // Subgradient of the active member: 2 P_i^{-1} (x - x_i).
    const Ellipsoid& e = spec.member(worst);
    Eigen::VectorXd grad =
        e.cholesky().triangularView<Eigen::Lower>().solve(x - e.center());
    grad = e.cholesky().transpose().triangularView<Eigen::Upper>().solve(grad);
    grad *= 2.0;
    const double gnorm = grad.norm();
    if (gnorm == 0.0) break;
    x -= (spread / std::sqrt(static_cast<double>(k))) * grad / gnorm;
    std::tie(g, worst) = max_form_value(spec, x);
    if (g < best_g) {
      best_g = g;
      best_x = x;
    }
    if (best_g <= kTarget) return best_x;
  }
  return std::nullopt;
}

std::vector<Eigen::VectorXd> sample_intersection(const IntersectionSpec& spec,
                                                 std::size_t count, Rng& rng) {
  int proposal = 0;
  double best_size = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.size(); ++i) {
    const double s = size_value(spec.member(i), SizeCriterion::LogDet);
    if (s < best_size) {
      best_size = s;
      proposal = i;
    }
  }

  constexpr std::size_t kBudget = 1000000;
  std::vector<Eigen::VectorXd> accepted;
  accepted.reserve(count);
  for (std::size_t draw = 0; draw < kBudget && accepted.size() < count; ++draw) {
    Eigen::VectorXd x = sample_in_ellipsoid(spec.member(proposal), rng);
    bool inside = true;
    for (int i = 0; inside && i < spec.size(); ++i)
      inside = contains(spec.member(i), x, 0.0);
    if (inside) accepted.push_back(std::move(x));
  }
  if (accepted.size() < count)
    throw SamplingBudgetExceeded("sample_intersection: draw budget exhausted",
                                 accepted.size());
  return accepted;
}

}  // namespace ellint
