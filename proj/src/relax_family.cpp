#include <Eigen/Dense>
#include <chrono>
#include <cmath>

#include "ellint/relaxations.hpp"
#include "ellint/rng.hpp"
#include "ellint/simplex_opt.hpp"
#include "relax_common.hpp"

namespace ellint {

namespace {

constexpr double kDeltaCap = 1.0 - 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct FusePieces {
  Eigen::MatrixXd s;       // P_t^{-1}
  Eigen::MatrixXd s_chol;  // lower factor of s
  Eigen::VectorXd center;  // x_t
  double delta = 0.0;      // unclamped
};

FusePieces fuse_pieces(const detail::FusionData& data, const Eigen::VectorXd& t) {
  FusePieces f;
  f.s = data.combine(t);
  if (!try_cholesky_factor(SymMatrix::from_dense(f.s), f.s_chol))
    throw SingularCombination("parametric fusion: combined shape lost definiteness");
  const Eigen::VectorXd b = data.combine_centers(t);
  Eigen::VectorXd z = f.s_chol.triangularView<Eigen::Lower>().solve(b);
  f.delta = -z.squaredNorm();  // -b^T S^{-1} b so far
  f.center = f.s_chol.transpose().triangularView<Eigen::Upper>().solve(z);
  for (int i = 0; i < data.m; ++i) f.delta += t[i] * data.x_pinv_x[i];
  return f;
}

Eigen::MatrixXd inverse_from_chol(const Eigen::MatrixXd& l) {
  const Eigen::MatrixXd linv = l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(l.rows(), l.cols()));
  Eigen::MatrixXd inv = linv.transpose() * linv;
  return 0.5 * (inv + inv.transpose()).eval();
}

double chol_logdet(const Eigen::MatrixXd& l) {
  double v = 0.0;
  for (int i = 0; i < l.rows(); ++i) v += std::log(l(i, i));
  return 2.0 * v;
}

// f(P_t) and its gradient in t (the CI objective).
SimplexObjective ci_objective(const detail::FusionData& data,
                              SizeCriterion criterion) {
  SimplexObjective obj;
  obj.eval = [&data, criterion](const Eigen::VectorXd& t, Eigen::VectorXd& grad) {
    const FusePieces f = fuse_pieces(data, t);
    const Eigen::MatrixXd sinv = inverse_from_chol(f.s_chol);
    grad.resize(data.m);
    if (criterion == SizeCriterion::LogDet) {
      for (int i = 0; i < data.m; ++i)
        grad[i] = -sinv.cwiseProduct(data.pinv[i]).sum();
      return -chol_logdet(f.s_chol);
    }
    for (int i = 0; i < data.m; ++i)
      grad[i] = -(sinv * data.pinv[i]).cwiseProduct(sinv).sum();
    return sinv.trace();
  };
  return obj;
}

// f((1 - delta_t) P_t) and its gradient in t.
SimplexObjective bounding_objective(const detail::FusionData& data,
                                    SizeCriterion criterion) {
  SimplexObjective obj;
  obj.eval = [&data, criterion](const Eigen::VectorXd& t, Eigen::VectorXd& grad) {
    const FusePieces f = fuse_pieces(data, t);
    const double delta = std::min(std::max(f.delta, 0.0), kDeltaCap);
    const double one_minus = 1.0 - delta;
    const Eigen::MatrixXd sinv = inverse_from_chol(f.s_chol);
    grad.resize(data.m);
    Eigen::VectorXd ddelta(data.m);
    for (int i = 0; i < data.m; ++i) {
      const Eigen::VectorXd r = data.pinv[i] * (f.center);
      ddelta[i] = data.x_pinv_x[i] - 2.0 * f.center.dot(data.pinv_x[i]) +
                  f.center.dot(r);
    }
    if (criterion == SizeCriterion::LogDet) {
      const double n = data.n;
      for (int i = 0; i < data.m; ++i)
        grad[i] = -n * ddelta[i] / one_minus -
                  sinv.cwiseProduct(data.pinv[i]).sum();
      return n * std::log(one_minus) - chol_logdet(f.s_chol);
    }
    const double tr = sinv.trace();
    for (int i = 0; i < data.m; ++i)
      grad[i] = -ddelta[i] * tr -
                one_minus * (sinv * data.pinv[i]).cwiseProduct(sinv).sum();
    return one_minus * tr;
  };
  return obj;
}

std::vector<Eigen::VectorXd> convex_starts(int m) {
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Constant(m, 1.0 / m));  // barycenter first
  for (int i = 0; i < m; ++i) starts.push_back(Eigen::VectorXd::Unit(m, i));
  return starts;
}

std::vector<Eigen::VectorXd> multistart_points(int m) {
  std::vector<Eigen::VectorXd> starts = convex_starts(m);
  Rng rng(0x5D1CEB01DULL + static_cast<std::uint64_t>(m));
  while (starts.size() < 16) {
    Eigen::VectorXd t(m);
    for (int i = 0; i < m; ++i) t[i] = -std::log(1.0 - rng.uniform());
    starts.push_back(t / t.sum());  // Dirichlet(1) draw
  }
  return starts;
}

MethodResult single_member_result(Method method, const IntersectionSpec& spec,
                                  SizeCriterion criterion) {
  MethodResult res{method, spec.member(0), 0.0,
                   WeightVector(Eigen::VectorXd::Ones(1),
                                WeightVector::Normalization::Simplex),
                   {}};
  res.objective = size_value(res.ellipsoid, criterion);
  res.diagnostics.engine = "closed-form";
  return res;
}

MethodResult simplex_search_result(Method method, const IntersectionSpec& spec,
                                   SizeCriterion criterion, bool apply_delta,
                                   bool optimize_delta) {
  const auto t0 = Clock::now();
  if (spec.size() == 1) {
    MethodResult r = single_member_result(method, spec, criterion);
    r.diagnostics.seconds = seconds_since(t0);
    return r;
  }
  const detail::FusionData data(spec);
  const SimplexObjective obj = optimize_delta
                                   ? bounding_objective(data, criterion)
                                   : ci_objective(data, criterion);
  const std::vector<Eigen::VectorXd> starts =
      optimize_delta ? multistart_points(data.m) : convex_starts(data.m);
  const PgResult pg = multistart_projected_gradient(obj, starts);
  if (!std::isfinite(pg.value))
    throw OptimizerFailed("simplex search produced a non-finite objective");

  const FusePieces f = fuse_pieces(data, pg.t);
  const double delta = std::min(std::max(f.delta, 0.0), kDeltaCap);
  Eigen::MatrixXd shape = inverse_from_chol(f.s_chol);
  if (apply_delta) shape *= (1.0 - delta);

  MethodResult res{method, Ellipsoid(f.center, SymMatrix::from_dense(shape)),
                   0.0,
                   WeightVector(pg.t, WeightVector::Normalization::Simplex),
                   {}};
  res.objective = size_value(res.ellipsoid, criterion);
  res.diagnostics.engine = "projected-gradient";
  res.diagnostics.status = pg.converged ? "optimal" : "max-iterations";
  res.diagnostics.iterations = pg.iterations;
  res.diagnostics.seconds = seconds_since(t0);
  return res;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::FullSdp: return "sdp";
    case Method::SProcedure: return "sproc";
    case Method::DecoupledSdp: return "decoupled";
    case Method::InscribedInflate: return "inscribed";
    case Method::BoundingNoDelta: return "bounding";
    case Method::BoundingOptimal: return "bounding-opt";
    case Method::CovarianceIntersection: return "ci";
    case Method::RecursiveBounding: return "recursive";
  }
  return "unknown";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : {Method::FullSdp, Method::SProcedure, Method::DecoupledSdp,
                   Method::InscribedInflate, Method::BoundingNoDelta,
                   Method::BoundingOptimal, Method::CovarianceIntersection,
                   Method::RecursiveBounding})
    if (method_name(m) == name) return m;
  return std::nullopt;
}

WeightVector::WeightVector(Eigen::VectorXd weights, Normalization norm)
    : weights_(std::move(weights)), norm_(norm) {
  if (weights_.size() == 0) throw InvalidArgument("WeightVector: empty");
  for (int i = 0; i < weights_.size(); ++i)
    if (!(weights_[i] >= 0.0))
      throw InvalidArgument("WeightVector: weights must be nonnegative");
  if (norm_ == Normalization::Simplex &&
      std::abs(weights_.sum() - 1.0) > 1e-12)
    throw InvalidArgument("WeightVector: simplex weights must sum to one");
}

ParametricFusion parametric_fuse(const IntersectionSpec& spec,
                                 const WeightVector& t) {
  if (t.normalization() != WeightVector::Normalization::Simplex)
    throw InvalidArgument("parametric_fuse: weights must be on the simplex");
  if (t.size() != spec.size())
    throw DimensionMismatch("parametric_fuse: weight count mismatch");
  const detail::FusionData data(spec);
  const FusePieces f = fuse_pieces(data, t.weights());
  return ParametricFusion{SymMatrix::from_dense(inverse_from_chol(f.s_chol)),
                          f.center, f.delta};
}

MethodResult covariance_intersection(const IntersectionSpec& spec,
                                     SizeCriterion criterion) {
  return simplex_search_result(Method::CovarianceIntersection, spec, criterion,
                               /*apply_delta=*/false, /*optimize_delta=*/false);
}

MethodResult bounding_no_delta(const IntersectionSpec& spec,
                               SizeCriterion criterion) {
  return simplex_search_result(Method::BoundingNoDelta, spec, criterion,
                               /*apply_delta=*/true, /*optimize_delta=*/false);
}

MethodResult bounding_optimal(const IntersectionSpec& spec,
                              SizeCriterion criterion) {
  return simplex_search_result(Method::BoundingOptimal, spec, criterion,
                               /*apply_delta=*/true, /*optimize_delta=*/true);
}

MethodResult recursive_bounding(const IntersectionSpec& spec,
                                SizeCriterion criterion, bool scale_delta) {
  const auto t0 = Clock::now();
  if (spec.size() == 1) {
    MethodResult r = single_member_result(Method::RecursiveBounding, spec,
                                          criterion);
    r.weights.reset();
    r.diagnostics.seconds = seconds_since(t0);
    return r;
  }

  Ellipsoid running = spec.member(0);
  int evaluations = 0;
  for (int k = 1; k < spec.size(); ++k) {
    const IntersectionSpec pair({running, spec.member(k)});
    const detail::FusionData data(pair);
    const auto objective = [&](double t) {
      ++evaluations;
      Eigen::VectorXd w(2);
      w << t, 1.0 - t;
      const FusePieces f = fuse_pieces(data, w);
      if (criterion == SizeCriterion::LogDet) return -chol_logdet(f.s_chol);
      return inverse_from_chol(f.s_chol).trace();
    };
    const double t_star = golden_section_min(objective, 0.0, 1.0);
    Eigen::VectorXd w(2);
    w << t_star, 1.0 - t_star;
    const FusePieces f = fuse_pieces(data, w);
    Eigen::MatrixXd shape = inverse_from_chol(f.s_chol);
    if (scale_delta) {
      const double delta = std::min(std::max(f.delta, 0.0), kDeltaCap);
      shape *= (1.0 - delta);
    }
    running = Ellipsoid(f.center, SymMatrix::from_dense(shape));
  }

  MethodResult res{Method::RecursiveBounding, running, 0.0, std::nullopt, {}};
  res.objective = size_value(res.ellipsoid, criterion);
  res.diagnostics.engine = "golden-section";
  res.diagnostics.iterations = evaluations;
  res.diagnostics.seconds = seconds_since(t0);
  return res;
}

MethodResult run_method(Method method, const IntersectionSpec& spec,
                        SizeCriterion criterion) {
  switch (method) {
    case Method::FullSdp: return full_sdp(spec, criterion);
    case Method::SProcedure: return s_procedure(spec, criterion);
    case Method::DecoupledSdp: return decoupled_sdp(spec, criterion);
    case Method::InscribedInflate: return inscribed_inflate(spec, criterion);
    case Method::BoundingNoDelta: return bounding_no_delta(spec, criterion);
    case Method::BoundingOptimal: return bounding_optimal(spec, criterion);
    case Method::CovarianceIntersection:
      return covariance_intersection(spec, criterion);
    case Method::RecursiveBounding: return recursive_bounding(spec, criterion);
  }
  throw InvalidArgument("run_method: unknown method");
}

}  // namespace ellint
