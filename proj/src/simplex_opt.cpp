#include "ellint/simplex_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ellint/errors.hpp"

namespace ellint {

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  if (n == 0) throw InvalidArgument("project_to_simplex: empty vector");
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  int support = 0;
  for (int k = 0; k < n; ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / (k + 1);
    if (u[k] - candidate > 0.0) {
      theta = candidate;
      support = k + 1;
    }
  }
  (void)support;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(0.0, v[i] - theta);
  const double s = out.sum();
  if (s > 0.0) out /= s;  // absorb round-off so the sum is exactly renormalized
  return out;
}

PgResult projected_gradient_simplex(const SimplexObjective& objective,
                                    const Eigen::VectorXd& start,
                                    const PgOptions& opts) {
  PgResult res;
  Eigen::VectorXd t = project_to_simplex(start);
  Eigen::VectorXd grad(t.size());
  double value = objective.eval(t, grad);
  double alpha = 1.0;

  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    bool accepted = false;
    Eigen::VectorXd candidate;
    double candidate_value = 0.0;
    double a = alpha;
    for (int bt = 0; bt < 60; ++bt) {
      candidate = project_to_simplex(t - a * grad);
      const Eigen::VectorXd step = candidate - t;
      if (step.lpNorm<Eigen::Infinity>() <= opts.step_tol) {
        res.converged = true;
        res.t = t;
        res.value = value;
        return res;
      }
      Eigen::VectorXd cgrad(t.size());
      candidate_value = objective.eval(candidate, cgrad);
      if (candidate_value <= value + opts.armijo_sigma * grad.dot(step)) {
        t = candidate;
        value = candidate_value;
        grad = cgrad;
        accepted = true;
        break;
      }
      a *= opts.backtrack;
    }
    if (!accepted) {
      res.converged = true;  // no descent available at any step length
      break;
    }
    alpha = std::min(a / opts.backtrack, 1e6);  // grow the trial step again
  }
  res.t = t;
  res.value = value;
  return res;
}

PgResult multistart_projected_gradient(const SimplexObjective& objective,
                                       const std::vector<Eigen::VectorXd>& starts,
                                       const PgOptions& opts, double tie_margin) {
  if (starts.empty())
    throw InvalidArgument("multistart_projected_gradient: no starts");
  PgResult best;
  bool first = true;
  for (const Eigen::VectorXd& s : starts) {
    PgResult r = projected_gradient_simplex(objective, s, opts);
    if (first || r.value < best.value - tie_margin) {
      best = std::move(r);
      first = false;
    }
  }
  return best;
}

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int max_iters) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iters && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  // Endpoints can be optimal (e.g. one ellipsoid already inside the other).
  const double fm = f(mid), flo = f(lo), fhi = f(hi);
  if (flo <= fm && flo <= fhi) return lo;
  if (fhi <= fm && fhi <= flo) return hi;
  return mid;
}

}  // namespace ellint
