#include "ellint/lmi_solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "ellint/ellipsoid.hpp"

namespace ellint {

AffineSymMap::AffineSymMap(SymMatrix constant, std::vector<SymMatrix> coeff)
    : constant_(std::move(constant)), coeff_(std::move(coeff)) {
  for (const SymMatrix& c : coeff_)
    if (c.order() != constant_.order())
      throw DimensionMismatch("AffineSymMap: coefficient block order mismatch");
}

SymMatrix AffineSymMap::eval(const Eigen::VectorXd& y) const {
  if (y.size() != vars())
    throw DimensionMismatch("AffineSymMap: variable count mismatch");
  SymMatrix out = constant_;
  std::vector<double>& packed = out.packed();
  for (int j = 0; j < vars(); ++j)
    if (y[j] != 0.0) coeff_[j].accumulate_into(packed, y[j]);
  return out;
}

SymMatrix eval_map(const AffineSymMap& m, const Eigen::VectorXd& y) {
  return m.eval(y);
}

ObjectiveSpec ObjectiveSpec::make_linear(Eigen::VectorXd c) {
  ObjectiveSpec o;
  o.kind = Kind::Linear;
  o.linear = std::move(c);
  return o;
}

ObjectiveSpec ObjectiveSpec::make_logdet(int map_index) {
  ObjectiveSpec o;
  o.kind = Kind::LogDet;
  o.map_index = map_index;
  return o;
}

ObjectiveSpec ObjectiveSpec::make_trace_inverse(int map_index) {
  ObjectiveSpec o;
  o.kind = Kind::TraceInverse;
  o.map_index = map_index;
  return o;
}

void LmiProblem::validate() const {
  if (var_count < 1) throw InvalidArgument("LmiProblem: no variables");
  for (const AffineSymMap& m : maps)
    if (m.vars() != var_count)
      throw DimensionMismatch("LmiProblem: map variable count mismatch");
  for (const auto& [idx, sense] : constraints) {
    (void)sense;
    if (idx < 0 || idx >= static_cast<int>(maps.size()))
      throw InvalidArgument("LmiProblem: constraint references unknown map");
  }
  if (objective.kind == ObjectiveSpec::Kind::Linear) {
    if (objective.linear.size() != var_count)
      throw DimensionMismatch("LmiProblem: linear objective length mismatch");
  } else {
    if (objective.map_index < 0 ||
        objective.map_index >= static_cast<int>(maps.size()))
      throw InvalidArgument("LmiProblem: objective map not among declared maps");
  }
  if (constraints.empty() && nonneg.empty())
    throw InvalidArgument("LmiProblem: problem has no constraints");
  for (int j : nonneg)
    if (j < 0 || j >= var_count)
      throw InvalidArgument("LmiProblem: nonneg index out of range");
}

void SolverOptions::validate() const {
  if (mu_growth <= 1.0) throw InvalidArgument("SolverOptions: mu_growth must exceed 1");
  if (mu_init <= 0.0 || newton_tol <= 0.0 || path_tol <= 0.0 || max_outer < 1 ||
      max_newton < 1)
    throw InvalidArgument("SolverOptions: all options must be positive");
}

int svec_size(int order) { return order * (order + 1) / 2; }

std::vector<SymMatrix> sym_basis(int order) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<SymMatrix> basis;
  basis.reserve(svec_size(order));
  for (int i = 0; i < order; ++i)
    for (int j = i; j < order; ++j) {
      SymMatrix b(order);
      b.set(i, j, i == j ? 1.0 : inv_sqrt2);
      basis.push_back(std::move(b));
    }
  return basis;
}

Eigen::VectorXd svec(const SymMatrix& a) {
  const int n = a.order();
  Eigen::VectorXd v(svec_size(n));
  const double sqrt2 = std::sqrt(2.0);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) v[k++] = (i == j) ? a(i, j) : sqrt2 * a(i, j);
  return v;
}

SymMatrix smat(const Eigen::VectorXd& v, int order) {
  if (v.size() != svec_size(order))
    throw DimensionMismatch("smat: vector length does not match order");
  SymMatrix a(order);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  int k = 0;
  for (int i = 0; i < order; ++i)
    for (int j = i; j < order; ++j) {
      a.set(i, j, (i == j) ? v[k] : inv_sqrt2 * v[k]);
      ++k;
    }
  return a;
}

namespace {

// Slack in "S(y) >= 0" normal form, blocks stored dense.
struct SlackTerm {
  Eigen::MatrixXd c0;
  std::vector<Eigen::MatrixXd> cj;
  int order = 0;
};

struct ScalarTerm {  // a^T y + b >= 0
  Eigen::VectorXd a;
  double b = 0.0;
};

struct InternalProblem {
  int p = 0;
  std::vector<SlackTerm> slacks;
  std::vector<ScalarTerm> scalars;
  ObjectiveSpec::Kind kind = ObjectiveSpec::Kind::Linear;
  Eigen::VectorXd linear;
  SlackTerm objective_map;  // LogDet only (TraceInverse is rewritten)
  double barrier_dim = 0.0;
};

SlackTerm to_slack(const AffineSymMap& map, double sign, int p) {
  SlackTerm s;
  s.order = map.order();
  s.c0 = sign * map.constant().dense();
  s.cj.resize(p, Eigen::MatrixXd::Zero(s.order, s.order));
  for (int j = 0; j < map.vars(); ++j) s.cj[j] = sign * map.coeff(j).dense();
  return s;
}

Eigen::MatrixXd eval_slack(const SlackTerm& s, const Eigen::VectorXd& y) {
  Eigen::MatrixXd m = s.c0;
  for (int j = 0; j < y.size(); ++j)
    if (y[j] != 0.0) m += y[j] * s.cj[j];
  return m;
}

// The phase-1 view: user constraints plus positive semidefiniteness of the
// designated objective map, over the base variables only. The epigraph block
// of a trace-inverse rewrite stays out because its auxiliary variables are
// unbounded upward, which would leave the phase-1 merit without a minimizer;
// a feasible base point lifts into it analytically instead.
InternalProblem build_phase1_base(const LmiProblem& problem) {
  problem.validate();
  InternalProblem ip;
  const int p0 = problem.var_count;
  ip.p = p0;
  for (const auto& [idx, sense] : problem.constraints) {
    const double sign = sense == ConstraintSense::NegSemidef ? -1.0 : 1.0;
    ip.slacks.push_back(to_slack(problem.maps[idx], sign, p0));
  }
  if (problem.objective.kind != ObjectiveSpec::Kind::Linear)
    ip.slacks.push_back(
        to_slack(problem.maps[problem.objective.map_index], 1.0, p0));
  for (int j : problem.nonneg) {
    ScalarTerm t;
    t.a = Eigen::VectorXd::Zero(ip.p);
    t.a[j] = 1.0;
    ip.scalars.push_back(std::move(t));
  }
  ip.kind = ObjectiveSpec::Kind::Linear;
  ip.linear = Eigen::VectorXd::Zero(ip.p);
  for (const SlackTerm& s : ip.slacks) ip.barrier_dim += s.order;
  ip.barrier_dim += static_cast<double>(ip.scalars.size());
  return ip;
}

InternalProblem build_internal(const LmiProblem& problem) {
  problem.validate();
  InternalProblem ip;
  const int p0 = problem.var_count;
  const bool trace_inverse =
      problem.objective.kind == ObjectiveSpec::Kind::TraceInverse;
  const int g_order =
      problem.objective.kind == ObjectiveSpec::Kind::Linear
          ? 0
          : problem.maps[problem.objective.map_index].order();
  ip.p = trace_inverse ? p0 + svec_size(g_order) : p0;

  for (const auto& [idx, sense] : problem.constraints) {
    const double sign = sense == ConstraintSense::NegSemidef ? -1.0 : 1.0;
    SlackTerm s = to_slack(problem.maps[idx], sign, p0);
    s.cj.resize(ip.p, Eigen::MatrixXd::Zero(s.order, s.order));
    ip.slacks.push_back(std::move(s));
  }
  for (int j : problem.nonneg) {
    ScalarTerm t;
    t.a = Eigen::VectorXd::Zero(ip.p);
    t.a[j] = 1.0;
    ip.scalars.push_back(std::move(t));
  }

  switch (problem.objective.kind) {
    case ObjectiveSpec::Kind::Linear: {
      ip.kind = ObjectiveSpec::Kind::Linear;
      ip.linear = Eigen::VectorXd::Zero(ip.p);
      ip.linear.head(p0) = problem.objective.linear;
      break;
    }
    case ObjectiveSpec::Kind::LogDet: {
      ip.kind = ObjectiveSpec::Kind::LogDet;
      SlackTerm g = to_slack(problem.maps[problem.objective.map_index], 1.0, p0);
      g.cj.resize(ip.p, Eigen::MatrixXd::Zero(g.order, g.order));
      // Keep the designated map positive definite along the path.
      ip.slacks.push_back(g);
      ip.objective_map = std::move(g);
      break;
    }
    case ObjectiveSpec::Kind::TraceInverse: {
      // Epigraph rewrite: minimize trace(Z) subject to [[Z, I], [I, G(y)]] >= 0
      // with Z a fresh symmetric block in svec coordinates.
      ip.kind = ObjectiveSpec::Kind::Linear;
      const SlackTerm g =
          to_slack(problem.maps[problem.objective.map_index], 1.0, p0);
      SlackTerm epi;
      epi.order = 2 * g_order;
      epi.c0 = Eigen::MatrixXd::Zero(epi.order, epi.order);
      epi.c0.topRightCorner(g_order, g_order) =
          Eigen::MatrixXd::Identity(g_order, g_order);
      epi.c0.bottomLeftCorner(g_order, g_order) =
          Eigen::MatrixXd::Identity(g_order, g_order);
      epi.c0.bottomRightCorner(g_order, g_order) = g.c0;
      epi.cj.resize(ip.p, Eigen::MatrixXd::Zero(epi.order, epi.order));
      for (int j = 0; j < p0; ++j)
        epi.cj[j].bottomRightCorner(g_order, g_order) = g.cj[j];
      const std::vector<SymMatrix> basis = sym_basis(g_order);
      ip.linear = Eigen::VectorXd::Zero(ip.p);
      for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
        epi.cj[p0 + k].topLeftCorner(g_order, g_order) = basis[k].dense();
        ip.linear[p0 + k] = basis[k].dense().trace();
      }
      ip.slacks.push_back(std::move(epi));
      break;
    }
  }

  for (const SlackTerm& s : ip.slacks) ip.barrier_dim += s.order;
  ip.barrier_dim += static_cast<double>(ip.scalars.size());
  return ip;
}

bool slack_cholesky(const Eigen::MatrixXd& s, Eigen::LLT<Eigen::MatrixXd>& llt) {
  llt.compute(s);
  return llt.info() == Eigen::Success;
}

// Objective value, +inf when the logdet map is not positive definite.
double objective_value(const InternalProblem& ip, const Eigen::VectorXd& y) {
  if (ip.kind == ObjectiveSpec::Kind::Linear) return ip.linear.dot(y);
  const Eigen::MatrixXd g = eval_slack(ip.objective_map, y);
  Eigen::LLT<Eigen::MatrixXd> llt;
  if (!slack_cholesky(g, llt)) return std::numeric_limits<double>::infinity();
  double ld = 0.0;
  const Eigen::MatrixXd l = llt.matrixL();
  for (int i = 0; i < l.rows(); ++i) ld += std::log(l(i, i));
  return -2.0 * ld;
}

// Centering works on the scaled merit phi(y) + barrier(y) / t: the same
// minimizer and Newton direction as t * phi + barrier, but the values stay
// O(1) as t grows, which keeps the line search out of floating-point noise.
// +inf outside the strictly feasible region.
double merit_value(const InternalProblem& ip, double t, const Eigen::VectorXd& y) {
  double value = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (const SlackTerm& s : ip.slacks) {
    if (!slack_cholesky(eval_slack(s, y), llt))
      return std::numeric_limits<double>::infinity();
    const Eigen::MatrixXd l = llt.matrixL();
    double ld = 0.0;
    for (int i = 0; i < l.rows(); ++i) {
      if (!(l(i, i) > 0.0)) return std::numeric_limits<double>::infinity();
      ld += std::log(l(i, i));
    }
    value -= 2.0 * ld;
  }
  for (const ScalarTerm& sc : ip.scalars) {
    const double v = sc.a.dot(y) + sc.b;
    if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
    value -= std::log(v);
  }
  const double phi = objective_value(ip, y);
  if (!std::isfinite(phi)) return std::numeric_limits<double>::infinity();
  return phi + value / t;
}

// Gradient and Hessian of the merit via Cholesky congruence: for a slack
// S = L L^T and W_j = L^{-1} C_j L^{-T},
//   d(-logdet S)/dy_j   = -tr(W_j)
//   d^2(-logdet S)/dy_j dy_l = <W_j, W_l>_F.
void add_logdet_terms(const SlackTerm& s, const Eigen::VectorXd& y, double weight,
                      Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
  const int p = static_cast<int>(y.size());
  Eigen::LLT<Eigen::MatrixXd> llt;
  if (!slack_cholesky(eval_slack(s, y), llt))
    throw OptimizerFailed("barrier: slack lost positive definiteness");
  const Eigen::MatrixXd l = llt.matrixL();
  std::vector<Eigen::MatrixXd> w(p);
  for (int j = 0; j < p; ++j) {
    if (s.cj[j].isZero(0.0)) continue;
    Eigen::MatrixXd tmp = l.triangularView<Eigen::Lower>().solve(s.cj[j]);
    tmp = l.triangularView<Eigen::Lower>()
              .solve(tmp.transpose())
              .transpose()
              .eval();
    w[j] = std::move(tmp);
    grad[j] -= weight * w[j].trace();
  }
  for (int j = 0; j < p; ++j) {
    if (w[j].size() == 0) continue;
    for (int l2 = j; l2 < p; ++l2) {
      if (w[l2].size() == 0) continue;
      const double h = weight * w[j].cwiseProduct(w[l2]).sum();
      hess(j, l2) += h;
      if (l2 != j) hess(l2, j) += h;
    }
  }
}

// Gradient and Hessian of the scaled merit phi + barrier / t.
void assemble(const InternalProblem& ip, double t, const Eigen::VectorXd& y,
              Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
  grad.setZero(ip.p);
  hess.setZero(ip.p, ip.p);
  const double w = 1.0 / t;
  for (const SlackTerm& s : ip.slacks) add_logdet_terms(s, y, w, grad, hess);
  for (const ScalarTerm& sc : ip.scalars) {
    const double v = sc.a.dot(y) + sc.b;
    grad -= w * sc.a / v;
    hess += w * (sc.a * sc.a.transpose()) / (v * v);
  }
  if (ip.kind == ObjectiveSpec::Kind::Linear)
    grad += ip.linear;
  else
    add_logdet_terms(ip.objective_map, y, 1.0, grad, hess);
}

struct CenterOutcome {
  bool converged = false;
  double decrement = 0.0;
  int newton_steps = 0;
};

CenterOutcome center(const InternalProblem& ip, double t, Eigen::VectorXd& y,
                     const SolverOptions& opts) {
  CenterOutcome out;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  for (int it = 0; it < opts.max_newton; ++it) {
    assemble(ip, t, y, grad, hess);
    if (std::getenv("ELLINT_DEBUG_FD")) {
      Eigen::VectorXd fd(ip.p);
      const double h = 1e-6;
      for (int j = 0; j < ip.p; ++j) {
        Eigen::VectorXd yp = y, ym = y;
        yp[j] += h;
        ym[j] -= h;
        fd[j] = (merit_value(ip, t, yp) - merit_value(ip, t, ym)) / (2 * h);
      }
      std::fprintf(stderr, "  fd check it=%d t=%.3g |g-fd|=%.3g |g|=%.3g |fd|=%.3g\n",
                   it, t, (grad - fd).norm(), grad.norm(), fd.norm());
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    Eigen::VectorXd dir = -ldlt.solve(grad);
    if (ldlt.info() != Eigen::Success || !dir.allFinite() ||
        (hess * dir + grad).norm() > 1e-8 * (1.0 + grad.norm())) {
      // Flat directions happen when members coincide; regularize and retry.
      Eigen::MatrixXd reg = hess;
      reg.diagonal().array() += 1e-10 * (1.0 + hess.diagonal().maxCoeff());
      dir = -Eigen::LDLT<Eigen::MatrixXd>(reg).solve(grad);
      if (!dir.allFinite())
        throw OptimizerFailed("barrier: Newton system unsolvable");
    }
    // Classic decrement of t*phi + barrier is t times the scaled one.
    const double lambda2 = t * std::max(0.0, -grad.dot(dir));
    out.decrement = 0.5 * lambda2;
    if (std::getenv("ELLINT_DEBUG_NEWTON"))
      std::fprintf(stderr,
                   "  check it=%d t=%.3g raw_gd=%.6g |g|=%.3g |d|=%.3g\n", it,
                   t, -grad.dot(dir), grad.norm(), dir.norm());
    if (out.decrement <= opts.newton_tol) {
      out.converged = true;
      return out;
    }

    ++out.newton_steps;
    // Quadratic phase: for a self-concordant merit the full step is safe
    // once the decrement is small, and the merit differences are already
    // below what the Armijo test can resolve.
    if (std::sqrt(lambda2) <= 0.25) {
      double alpha = 1.0;
      while (alpha > 1e-18 &&
             !std::isfinite(merit_value(ip, t, y + alpha * dir)))
        alpha *= 0.5;
      if (alpha <= 1e-18) {
        out.converged = out.decrement <= std::sqrt(opts.newton_tol);
        return out;
      }
      y += alpha * dir;
      continue;
    }

    const double f0 = merit_value(ip, t, y);
    const double slope = grad.dot(dir);
    double alpha = 1.0;
    bool stepped = false;
    while (alpha > 1e-18) {
      const double f1 = merit_value(ip, t, y + alpha * dir);
      if (std::isfinite(f1) && f1 <= f0 + 1e-4 * alpha * slope) {
        y += alpha * dir;
        stepped = true;
        break;
      }
      alpha *= 0.5;
    }
    if (std::getenv("ELLINT_DEBUG_NEWTON")) {
      std::ostringstream ys;
      for (int i = 0; i < y.size(); ++i) ys << y[i] << ' ';
      std::fprintf(stderr,
                   "  newton it=%d t=%.3g lambda2=%.6g alpha=%.3g f0=%.9g "
                   "stepped=%d y=[%s]\n",
                   it, t, lambda2, alpha, f0, stepped ? 1 : 0, ys.str().c_str());
    }
    if (!stepped) {
      // No admissible step: accept the center as converged when the
      // decrement is already small, otherwise report failure upward.
      out.converged = out.decrement <= std::sqrt(opts.newton_tol);
      return out;
    }
  }
  return out;
}

double min_slack_eig(const InternalProblem& ip, const Eigen::VectorXd& y) {
  double lo = std::numeric_limits<double>::infinity();
  for (const SlackTerm& s : ip.slacks)
    lo = std::min(lo, min_eigenvalue(eval_slack(s, y)));
  for (const ScalarTerm& sc : ip.scalars) lo = std::min(lo, sc.a.dot(y) + sc.b);
  return lo;
}

bool strictly_feasible(const InternalProblem& ip, const Eigen::VectorXd& y) {
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (const SlackTerm& s : ip.slacks)
    if (!slack_cholesky(eval_slack(s, y), llt)) return false;
  for (const ScalarTerm& sc : ip.scalars)
    if (!(sc.a.dot(y) + sc.b > 0.0)) return false;
  if (ip.kind == ObjectiveSpec::Kind::LogDet &&
      !std::isfinite(objective_value(ip, y)))
    return false;
  return true;
}

struct PathOutcome {
  SolveStatus status = SolveStatus::MaxIterations;
  double final_t = 0.0;
  double decrement = 0.0;
  int outer = 0;
  int newton = 0;
  std::vector<double> center_objectives;
};

// Follows the central path; early_stop (optional) is checked after each
// centering and ends the path with Optimal status when it fires.
template <typename EarlyStop>
PathOutcome follow_path(const InternalProblem& ip, Eigen::VectorXd& y,
                        const SolverOptions& opts, EarlyStop early_stop) {
  PathOutcome out;
  double t = opts.mu_init;
  for (int outer = 0; outer < opts.max_outer; ++outer) {
    const CenterOutcome c = center(ip, t, y, opts);
    out.outer = outer + 1;
    out.newton += c.newton_steps;
    out.decrement = c.decrement;
    out.final_t = t;
    out.center_objectives.push_back(objective_value(ip, y));
    if (!c.converged) return out;
    if (early_stop(y)) {
      out.status = SolveStatus::Optimal;
      return out;
    }
    if (ip.barrier_dim / t <= opts.path_tol) {
      out.status = SolveStatus::Optimal;
      return out;
    }
    t *= opts.mu_growth;
  }
  return out;
}

// Phase-1 problem over (y, s): every slack gains +s I, every scalar gains +s.
InternalProblem phase1_problem(const InternalProblem& ip) {
  InternalProblem aux;
  aux.p = ip.p + 1;
  aux.kind = ObjectiveSpec::Kind::Linear;
  aux.linear = Eigen::VectorXd::Zero(aux.p);
  aux.linear[ip.p] = 1.0;
  for (const SlackTerm& s : ip.slacks) {
    SlackTerm t = s;
    t.cj.resize(aux.p, Eigen::MatrixXd::Zero(t.order, t.order));
    t.cj[ip.p] = Eigen::MatrixXd::Identity(t.order, t.order);
    aux.slacks.push_back(std::move(t));
  }
  for (const ScalarTerm& sc : ip.scalars) {
    ScalarTerm t;
    t.a = Eigen::VectorXd::Zero(aux.p);
    t.a.head(ip.p) = sc.a;
    t.a[ip.p] = 1.0;
    t.b = sc.b;
    aux.scalars.push_back(std::move(t));
  }
  aux.barrier_dim = ip.barrier_dim;
  return aux;
}

constexpr double kPhase1Margin = 1e-6;

std::optional<Eigen::VectorXd> run_phase1(const InternalProblem& ip,
                                          const SolverOptions& opts) {
  InternalProblem aux = phase1_problem(ip);
  if (std::getenv("ELLINT_DEBUG_AUX")) {
    for (std::size_t k = 0; k < aux.slacks.size(); ++k) {
      std::ostringstream ss;
      ss << "slack " << k << " c0:\n" << aux.slacks[k].c0 << "\n";
      for (std::size_t j = 0; j < aux.slacks[k].cj.size(); ++j)
        ss << " cj[" << j << "]:\n" << aux.slacks[k].cj[j] << "\n";
      std::fprintf(stderr, "%s", ss.str().c_str());
    }
    for (const ScalarTerm& sc : aux.scalars) {
      std::ostringstream ss;
      ss << "scalar a: " << sc.a.transpose() << " b: " << sc.b << "\n";
      std::fprintf(stderr, "%s", ss.str().c_str());
    }
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(aux.p);
  double s0 = 0.0;
  for (const SlackTerm& s : aux.slacks)
    s0 = std::max(s0, -min_eigenvalue(s.c0));
  for (const ScalarTerm& sc : aux.scalars) s0 = std::max(s0, -sc.b);
  z[ip.p] = s0 + 1.0;

  // Stop as soon as the point is comfortably interior; for infeasible
  // problems the path runs out and s stays nonnegative.
  const double deep_enough = -std::max(1e-4, 1e-3 * (1.0 + s0));
  SolverOptions p1 = opts;
  p1.path_tol = std::max(opts.path_tol, 1e-9);
  const PathOutcome out = follow_path(
      aux, z, p1, [&](const Eigen::VectorXd& v) { return v[ip.p] <= deep_enough; });
  if (std::getenv("ELLINT_DEBUG_PHASE1"))
    std::fprintf(stderr,
                 "phase1: status=%d outer=%d newton=%d s=%.6g dec=%.3g\n",
                 static_cast<int>(out.status), out.outer, out.newton, z[ip.p],
                 out.decrement);
  if (z[ip.p] > -kPhase1Margin) return std::nullopt;
  Eigen::VectorXd y = z.head(ip.p);
  if (!strictly_feasible(ip, y)) return std::nullopt;
  return y;
}

// Extends a user start with epigraph variables when needed; empty optional
// when the start is unusable.
std::optional<Eigen::VectorXd> adapt_start(const LmiProblem& problem,
                                           const InternalProblem& ip,
                                           const Eigen::VectorXd& start) {
  if (start.size() != problem.var_count) return std::nullopt;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ip.p);
  y.head(problem.var_count) = start;
  if (problem.objective.kind == ObjectiveSpec::Kind::TraceInverse) {
    const SymMatrix g =
        problem.maps[problem.objective.map_index].eval(start);
    Eigen::MatrixXd gl;
    if (!try_cholesky_factor(g, gl)) return std::nullopt;
    const int order = g.order();
    Eigen::MatrixXd ginv = gl.triangularView<Eigen::Lower>().solve(
        Eigen::MatrixXd::Identity(order, order));
    ginv = (ginv.transpose() * ginv).eval();
    y.tail(svec_size(order)) = svec(SymMatrix::from_dense(2.0 * ginv));
  }
  if (!strictly_feasible(ip, y)) return std::nullopt;
  return y;
}

}  // namespace

std::optional<Eigen::VectorXd> phase1(const LmiProblem& problem,
                                      const SolverOptions& opts) {
  opts.validate();
  return run_phase1(build_phase1_base(problem), opts);
}

SolverResult solve(const LmiProblem& problem, const SolverOptions& opts,
                   const std::optional<Eigen::VectorXd>& start) {
  opts.validate();
  const InternalProblem ip = build_internal(problem);

  SolverResult result;
  std::optional<Eigen::VectorXd> y0;
  if (start) y0 = adapt_start(problem, ip, *start);
  if (!y0) {
    auto base = run_phase1(build_phase1_base(problem), opts);
    result.diagnostics.used_phase1 = true;
    if (base) y0 = adapt_start(problem, ip, *base);
    if (!y0) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
  }

  Eigen::VectorXd y = *y0;
  const PathOutcome out =
      follow_path(ip, y, opts, [](const Eigen::VectorXd&) { return false; });

  result.y = y.head(problem.var_count);
  result.status = out.status;
  result.diagnostics.final_mu = out.final_t;
  result.diagnostics.newton_decrement = out.decrement;
  result.diagnostics.outer_iterations = out.outer;
  result.diagnostics.newton_iterations = out.newton;
  result.diagnostics.min_slack_eigenvalue = min_slack_eig(ip, y);
  result.diagnostics.center_objectives = out.center_objectives;

  switch (problem.objective.kind) {
    case ObjectiveSpec::Kind::Linear:
      result.objective = problem.objective.linear.dot(result.y);
      break;
    case ObjectiveSpec::Kind::LogDet:
      result.objective =
          -logdet(problem.maps[problem.objective.map_index].eval(result.y));
      break;
    case ObjectiveSpec::Kind::TraceInverse: {
      const SymMatrix g = problem.maps[problem.objective.map_index].eval(result.y);
      const Eigen::MatrixXd l = cholesky_factor(g);
      const Eigen::MatrixXd linv = l.triangularView<Eigen::Lower>().solve(
          Eigen::MatrixXd::Identity(g.order(), g.order()));
      result.objective = linv.squaredNorm();  // trace(G^{-1})
      break;
    }
  }
  return result;
}

}  // namespace ellint
