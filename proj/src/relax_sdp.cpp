#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>

#include "ellint/relaxations.hpp"
#include "relax_common.hpp"

namespace ellint {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ObjectiveSpec size_objective(SizeCriterion criterion, int map_index) {
  // Variables carry P_0^{-1}, so logdet(P_0) = -logdet(map) and
  // trace(P_0) = trace(map^{-1}).
  return criterion == SizeCriterion::LogDet
             ? ObjectiveSpec::make_logdet(map_index)
             : ObjectiveSpec::make_trace_inverse(map_index);
}

MethodDiagnostics barrier_diagnostics(const SolverResult& sr, double seconds) {
  MethodDiagnostics d;
  d.engine = "barrier";
  d.status = sr.status == SolveStatus::Optimal ? "optimal"
             : sr.status == SolveStatus::MaxIterations ? "max-iterations"
                                                       : "infeasible";
  d.iterations = sr.diagnostics.newton_iterations;
  d.final_mu = sr.diagnostics.final_mu;
  d.newton_decrement = sr.diagnostics.newton_decrement;
  d.min_slack_eigenvalue = sr.diagnostics.min_slack_eigenvalue;
  d.seconds = seconds;
  return d;
}

void require_usable(const SolverResult& sr, const char* what) {
  if (sr.status == SolveStatus::Infeasible)
    throw SolverInfeasible(std::string(what) + ": problem infeasible");
  if (sr.status == SolveStatus::MaxIterations)
    throw OptimizerFailed(std::string(what) + ": barrier iteration limit");
}

Eigen::VectorXd clamp_nonneg(const Eigen::VectorXd& v) {
  return v.cwiseMax(0.0);
}

// Shared recovery for the SDP-flavoured methods: P_0 = Y^{-1}, x_0 = Y^{-1} xt.
Ellipsoid recover_ellipsoid(const Eigen::MatrixXd& y_dense,
                            const Eigen::VectorXd& xt) {
  const SymMatrix y = SymMatrix::from_dense(y_dense);
  const Eigen::MatrixXd l = cholesky_factor(y);
  const Eigen::MatrixXd linv = l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(l.rows(), l.cols()));
  Eigen::MatrixXd p = linv.transpose() * linv;
  p = 0.5 * (p + p.transpose()).eval();
  Eigen::VectorXd z = l.triangularView<Eigen::Lower>().solve(xt);
  Eigen::VectorXd center = l.transpose().triangularView<Eigen::Upper>().solve(z);
  return Ellipsoid(center, SymMatrix::from_dense(p));
}

}  // namespace

SolverOptions relaxation_solver_options() {
  SolverOptions opts;
  opts.path_tol = 1e-9;
  return opts;
}

MethodResult decoupled_sdp(const IntersectionSpec& spec, SizeCriterion criterion) {
  const auto t0 = Clock::now();
  const detail::FusionData data(spec);
  const int n = data.n;
  const int m = data.m;

  LmiProblem problem;
  problem.var_count = m;

  // Designated map: sum lambda_i P_i^{-1}.
  {
    std::vector<SymMatrix> coeff;
    for (int i = 0; i < m; ++i)
      coeff.push_back(SymMatrix::from_dense(data.pinv[i]));
    problem.maps.emplace_back(SymMatrix(n), std::move(coeff));
  }
  // Weight-feasibility block of order n+1, scalar block first.
  {
    SymMatrix constant(n + 1);
    constant.set(0, 0, 1.0);
    std::vector<SymMatrix> coeff;
    for (int i = 0; i < m; ++i) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, n + 1);
      c(0, 0) = data.x_pinv_x[i] - 1.0;
      c.block(1, 0, n, 1) = data.pinv_x[i];
      c.block(0, 1, 1, n) = data.pinv_x[i].transpose();
      c.block(1, 1, n, n) = data.pinv[i];
      coeff.push_back(SymMatrix::from_dense(c));
    }
    problem.maps.emplace_back(std::move(constant), std::move(coeff));
    problem.constraints.emplace_back(1, ConstraintSense::PosSemidef);
  }
  problem.objective = size_objective(criterion, 0);
  for (int i = 0; i < m; ++i) problem.nonneg.push_back(i);

  const SolverResult sr = solve(problem, relaxation_solver_options());
  require_usable(sr, "decoupled_sdp");

  const Eigen::VectorXd lambda = clamp_nonneg(sr.y);
  const Eigen::MatrixXd s = data.combine(lambda);
  MethodResult res{Method::DecoupledSdp,
                   recover_ellipsoid(s, data.combine_centers(lambda)), 0.0,
                   WeightVector(lambda, WeightVector::Normalization::Nonnegative),
                   barrier_diagnostics(sr, seconds_since(t0))};
  res.objective = size_value(res.ellipsoid, criterion);
  return res;
}

namespace {

// Constraint matrix shared by the full SDP and the S-procedure after its
// Schur-complement transformation; only the source of the member blocks
// differs between the two assembly routes.
struct SdpAssembly {
  LmiProblem problem;
  int q = 0;  // svec length of the shape block
};

SdpAssembly assemble_sdp(const int n, const int m,
                         const std::vector<Eigen::MatrixXd>& member_block,
                         SizeCriterion criterion) {
  // member_block[i] is the (n+1)x(n+1) quadratic-form block of member i.
  SdpAssembly out;
  const int q = svec_size(n);
  out.q = q;
  const int p = q + n + m;
  const int d = 2 * n + 1;
  const std::vector<SymMatrix> basis = sym_basis(n);

  LmiProblem& problem = out.problem;
  problem.var_count = p;

  // Map 0: the shape-inverse block Y.
  {
    std::vector<SymMatrix> coeff(static_cast<std::size_t>(p), SymMatrix(n));
    for (int k = 0; k < q; ++k) coeff[k] = basis[k];
    problem.maps.emplace_back(SymMatrix(n), std::move(coeff));
  }
  // Map 1: the big block, required negative semidefinite.
  {
    SymMatrix constant(d);
    constant.set(n, n, -1.0);
    std::vector<SymMatrix> coeff;
    coeff.reserve(p);
    for (int k = 0; k < q; ++k) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
      const Eigen::MatrixXd b = basis[k].dense();
      c.topLeftCorner(n, n) = b;
      c.bottomRightCorner(n, n) = -b;
      coeff.push_back(SymMatrix::from_dense(c));
    }
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
      c(j, n) = c(n, j) = -1.0;
      c(n, n + 1 + j) = c(n + 1 + j, n) = 1.0;
      coeff.push_back(SymMatrix::from_dense(c));
    }
    for (int i = 0; i < m; ++i) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
      c.topLeftCorner(n + 1, n + 1) = -member_block[i];
      coeff.push_back(SymMatrix::from_dense(c));
    }
    problem.maps.emplace_back(std::move(constant), std::move(coeff));
    problem.constraints.emplace_back(1, ConstraintSense::NegSemidef);
  }
  problem.objective = size_objective(criterion, 0);
  for (int i = 0; i < m; ++i) problem.nonneg.push_back(q + n + i);
  return out;
}

MethodResult solve_sdp_assembly(Method method, const SdpAssembly& assembly,
                                const IntersectionSpec& spec,
                                SizeCriterion criterion,
                                Clock::time_point t0) {
  const int n = spec.dimension();
  const int m = spec.size();
  const SolverResult sr = solve(assembly.problem, relaxation_solver_options());
  require_usable(sr, method_name(method).c_str());

  const Eigen::MatrixXd y =
      smat(sr.y.head(assembly.q), n).dense();
  const Eigen::VectorXd xt = sr.y.segment(assembly.q, n);
  const Eigen::VectorXd multipliers = clamp_nonneg(sr.y.tail(m));
  MethodResult res{
      method, recover_ellipsoid(y, xt), 0.0,
      WeightVector(multipliers, WeightVector::Normalization::Nonnegative),
      barrier_diagnostics(sr, seconds_since(t0))};
  res.objective = size_value(res.ellipsoid, criterion);
  return res;
}

}  // namespace

MethodResult full_sdp(const IntersectionSpec& spec, SizeCriterion criterion) {
  const auto t0 = Clock::now();
  const detail::FusionData data(spec);
  std::vector<Eigen::MatrixXd> blocks;
  for (int i = 0; i < data.m; ++i) {
    Eigen::MatrixXd a(data.n + 1, data.n + 1);
    a.topLeftCorner(data.n, data.n) = data.pinv[i];
    a.topRightCorner(data.n, 1) = -data.pinv_x[i];
    a.bottomLeftCorner(1, data.n) = -data.pinv_x[i].transpose();
    a(data.n, data.n) = data.x_pinv_x[i] - 1.0;
    blocks.push_back(std::move(a));
  }
  const SdpAssembly assembly =
      assemble_sdp(data.n, data.m, blocks, criterion);
  return solve_sdp_assembly(Method::FullSdp, assembly, spec, criterion, t0);
}

MethodResult s_procedure(const IntersectionSpec& spec, SizeCriterion criterion) {
  const auto t0 = Clock::now();
  const int n = spec.dimension();
  const int m = spec.size();
  // Source the member blocks from the quadratic-form view.
  std::vector<Eigen::MatrixXd> blocks;
  for (int i = 0; i < m; ++i)
    blocks.push_back(quadratic_form(spec.member(i)).matrix().dense());
  const SdpAssembly assembly = assemble_sdp(n, m, blocks, criterion);
  return solve_sdp_assembly(Method::SProcedure, assembly, spec, criterion, t0);
}

bool s_procedure_certificate(const IntersectionSpec& spec,
                             const Ellipsoid& candidate,
                             const Eigen::VectorXd& tau) {
  if (tau.size() != spec.size())
    throw DimensionMismatch("s_procedure_certificate: multiplier count");
  if (candidate.dimension() != spec.dimension())
    throw DimensionMismatch("s_procedure_certificate: dimension mismatch");
  Eigen::MatrixXd r = -quadratic_form(candidate).matrix().dense();
  for (int i = 0; i < spec.size(); ++i)
    r += tau[i] * quadratic_form(spec.member(i)).matrix().dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double norm = std::max(std::abs(lo), std::abs(es.eigenvalues().maxCoeff()));
  return lo >= -psd_tolerance(norm);
}

bool sdp_certificate(const IntersectionSpec& spec, const Ellipsoid& candidate,
                     const Eigen::VectorXd& lambda) {
  if (lambda.size() != spec.size())
    throw DimensionMismatch("sdp_certificate: multiplier count");
  if (candidate.dimension() != spec.dimension())
    throw DimensionMismatch("sdp_certificate: dimension mismatch");
  const detail::FusionData data(spec);
  const int n = data.n;
  const QuadraticForm cand = quadratic_form(candidate);
  const Eigen::MatrixXd a0 = cand.matrix().dense();
  const Eigen::MatrixXd y = a0.topLeftCorner(n, n);
  const Eigen::VectorXd xt = -a0.topRightCorner(n, 1);

  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * n + 1, 2 * n + 1);
  big.topLeftCorner(n, n) = y - data.combine(lambda);
  const Eigen::VectorXd off = -xt + data.combine_centers(lambda);
  big.block(0, n, n, 1) = off;
  big.block(n, 0, 1, n) = off.transpose();
  double mid = -1.0;
  for (int i = 0; i < spec.size(); ++i)
    mid -= lambda[i] * (data.x_pinv_x[i] - 1.0);
  big(n, n) = mid;
  big.block(n, n + 1, 1, n) = xt.transpose();
  big.block(n + 1, n, n, 1) = xt;
  big.bottomRightCorner(n, n) = -y;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(big, Eigen::EigenvaluesOnly);
  const double hi = es.eigenvalues().maxCoeff();
  const double norm = std::max(std::abs(hi), std::abs(es.eigenvalues().minCoeff()));
  return hi <= psd_tolerance(norm);
}

std::pair<Ellipsoid, WeightVector> max_inscribed(const IntersectionSpec& spec) {
  const int n = spec.dimension();
  const int m = spec.size();
  const int q = svec_size(n);
  const int p = q + n + m;
  const int d = 2 * n + 1;
  const std::vector<SymMatrix> basis = sym_basis(n);

  LmiProblem problem;
  problem.var_count = p;
  // Map 0: the square-root block E0 (kept symmetric positive definite).
  {
    std::vector<SymMatrix> coeff(static_cast<std::size_t>(p), SymMatrix(n));
    for (int k = 0; k < q; ++k) coeff[k] = basis[k];
    problem.maps.emplace_back(SymMatrix(n), std::move(coeff));
  }
  // One block per member:
  // [[-P_i, x_i - c, E0], [(x_i - c)^T, tau_i - 1, 0], [E0, 0, -tau_i I]] <= 0.
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd constant = Eigen::MatrixXd::Zero(d, d);
    constant.topLeftCorner(n, n) = -spec.member(i).shape().dense();
    constant.block(0, n, n, 1) = spec.member(i).center();
    constant.block(n, 0, 1, n) = spec.member(i).center().transpose();
    constant(n, n) = -1.0;

    std::vector<SymMatrix> coeff(static_cast<std::size_t>(p), SymMatrix(d));
    for (int k = 0; k < q; ++k) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
      c.block(0, n + 1, n, n) = basis[k].dense();
      c.block(n + 1, 0, n, n) = basis[k].dense();
      coeff[k] = SymMatrix::from_dense(c);
    }
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
      c(j, n) = c(n, j) = -1.0;
      coeff[q + j] = SymMatrix::from_dense(c);
    }
    {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
      c(n, n) = 1.0;
      c.bottomRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
      coeff[q + n + i] = SymMatrix::from_dense(c);
    }
    problem.maps.emplace_back(SymMatrix::from_dense(constant), std::move(coeff));
    problem.constraints.emplace_back(static_cast<int>(problem.maps.size()) - 1,
                                     ConstraintSense::NegSemidef);
  }
  problem.objective = ObjectiveSpec::make_logdet(0);
  for (int i = 0; i < m; ++i) problem.nonneg.push_back(q + n + i);

  const SolverResult sr = solve(problem, relaxation_solver_options());
  require_usable(sr, "max_inscribed");

  const Eigen::MatrixXd e0 = smat(sr.y.head(q), n).dense();
  Eigen::MatrixXd shape = e0 * e0;  // P = E0^T E0 with symmetric E0
  shape = 0.5 * (shape + shape.transpose()).eval();
  const Eigen::VectorXd center = sr.y.segment(q, n);
  return {Ellipsoid(center, SymMatrix::from_dense(shape)),
          WeightVector(clamp_nonneg(sr.y.tail(m)),
                       WeightVector::Normalization::Nonnegative)};
}

MethodResult inscribed_inflate(const IntersectionSpec& spec,
                               SizeCriterion criterion) {
  const auto t0 = Clock::now();
  const int n = spec.dimension();
  auto [inner, tau] = max_inscribed(spec);
  SymMatrix shape = inner.shape();
  shape *= static_cast<double>(n) * static_cast<double>(n);
  MethodResult res{Method::InscribedInflate, Ellipsoid(inner.center(), shape),
                   0.0, std::move(tau), {}};
  res.objective = size_value(res.ellipsoid, criterion);
  res.diagnostics.engine = "barrier";
  res.diagnostics.seconds = seconds_since(t0);
  return res;
}

}  // namespace ellint
