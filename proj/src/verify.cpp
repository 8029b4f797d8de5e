#include "ellint/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "ellint/mvee.hpp"
#include "ellint/sampling.hpp"

namespace ellint {

namespace {

constexpr int kMethodCount = 8;

int idx(Method m) { return static_cast<int>(m); }

const std::array<Method, kMethodCount> kAllMethods = {
    Method::FullSdp,          Method::SProcedure,
    Method::DecoupledSdp,     Method::InscribedInflate,
    Method::BoundingNoDelta,  Method::BoundingOptimal,
    Method::CovarianceIntersection, Method::RecursiveBounding,
};

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) ss << ", ";
    ss << seeds[i];
  }
  return ss.str();
}

}  // namespace

Ellipsoid random_member(int n, Rng& rng) {
  const Eigen::MatrixXd q = random_orthogonal(n, rng);
  Eigen::VectorXd eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = rng.uniform(1.0, 1.8);
  Eigen::MatrixXd p = q * eigs.asDiagonal() * q.transpose();
  Eigen::VectorXd dir(n);
  for (int i = 0; i < n; ++i) dir[i] = rng.normal();
  if (dir.norm() == 0.0) dir.setZero();
  else dir *= 0.2 * std::pow(rng.uniform(), 1.0 / n) / dir.norm();
  return Ellipsoid(dir, SymMatrix::from_dense(p));
}

IntersectionSpec random_nonempty_spec(int n, int m, Rng& rng) {
  std::vector<Ellipsoid> members;
  members.reserve(m);
  for (int i = 0; i < m; ++i) members.push_back(random_member(n, rng));
  return IntersectionSpec(std::move(members));
}

std::vector<GridInstance> make_instance_grid(std::uint64_t root_seed, int count) {
  const int ns[] = {1, 2, 3, 4};
  const int ms[] = {1, 2, 3, 5};
  std::vector<GridInstance> grid;
  grid.reserve(count);
  const Rng root(root_seed);
  for (int k = 0; k < count; ++k) {
    const int n = ns[k % 4];
    const int m = ms[(k / 4) % 4];
    Rng rng = root.split(static_cast<std::uint64_t>(k));
    grid.push_back(GridInstance{n, m, root_seed + static_cast<std::uint64_t>(k),
                                random_nonempty_spec(n, m, rng)});
  }
  return grid;
}

IntersectionSpec static_case_spec(double xi) {
  SymMatrix p1(2), p2(2), p3(2);
  p1.set(0, 0, 6.0);
  p1.set(0, 1, -5.0);
  p1.set(1, 1, 12.0);
  p2.set(0, 0, 10.0);
  p2.set(0, 1, 1.0);
  p2.set(1, 1, 3.0);
  p3.set(0, 0, 5.0);
  p3.set(0, 1, 5.0);
  p3.set(1, 1, 9.0);
  return IntersectionSpec({Ellipsoid(Eigen::Vector2d(12.0, 11.0), p1),
                           Ellipsoid(Eigen::Vector2d(12.0, 10.0), p2),
                           Ellipsoid(Eigen::Vector2d(12.0, xi), p3)});
}

std::vector<InstanceEvaluation> evaluate_grid(const VerifyOptions& opts) {
  std::vector<GridInstance> grid =
      make_instance_grid(opts.seed, opts.instance_count);
  std::vector<InstanceEvaluation> evals;
  evals.reserve(grid.size());
  const Rng root(opts.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    InstanceEvaluation ev{std::move(grid[g]), {}, {}, {}, 0.0};
    for (Method m : kAllMethods) {
      MethodResult res = run_method(m, ev.instance.spec, SizeCriterion::LogDet);
      if (m == Method::DecoupledSdp && opts.inject_decoupled_center_fault) {
        Eigen::VectorXd c = res.ellipsoid.center();
        c[0] += 0.5;
        res.ellipsoid = Ellipsoid(c, res.ellipsoid.shape());
        res.objective = size_value(res.ellipsoid, SizeCriterion::LogDet);
      }
      ev.logdet[idx(m)] = std::move(res);
    }
    for (Method m : kAllMethods) {
      if (m == Method::InscribedInflate) {
        ev.trace_objective[idx(m)] =
            size_value(ev.logdet[idx(m)]->ellipsoid, SizeCriterion::Trace);
        continue;
      }
      ev.trace_objective[idx(m)] =
          run_method(m, ev.instance.spec, SizeCriterion::Trace).objective;
    }
    Rng rng = root.split(static_cast<std::uint64_t>(g));
    ev.samples =
        sample_intersection(ev.instance.spec, opts.containment_samples, rng);
    ev.mvee_logdet =
        size_value(mvee_of_points(ev.samples, 1e-6), SizeCriterion::LogDet);
    evals.push_back(std::move(ev));
  }
  return evals;
}

CheckResult check_prop1_equivalence(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts) {
  CheckResult out{"prop1-full-vs-decoupled", true, ""};
  std::vector<std::uint64_t> bad;
  double worst = 0.0;
  for (const InstanceEvaluation& ev : evals) {
    const double d_log = std::abs(ev.logdet[idx(Method::FullSdp)]->objective -
                                  ev.logdet[idx(Method::DecoupledSdp)]->objective);
    const double d_tr = std::abs(ev.trace_objective[idx(Method::FullSdp)] -
                                 ev.trace_objective[idx(Method::DecoupledSdp)]);
    worst = std::max({worst, d_log, d_tr});
    if (d_log > opts.prop1_tol || d_tr > opts.prop1_tol)
      bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "max |full - decoupled| = " << worst << " (tol " << opts.prop1_tol << ")";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

namespace {

// Candidate tuples for the Prop-2 predicate comparison: scaled and jittered
// versions of the optimal tuple plus fully random ones, kept decisively away
// from the common feasibility boundary.
struct Candidate {
  Ellipsoid ellipsoid;
  Eigen::VectorXd tau;
};

std::vector<Candidate> prop2_candidates(const InstanceEvaluation& ev, int count,
                                        Rng& rng) {
  const MethodResult& opt = *ev.logdet[idx(Method::SProcedure)];
  const int n = ev.instance.spec.dimension();
  const int m = ev.instance.spec.size();
  const double scales[] = {0.7, 0.85, 0.95, 1.05, 1.2, 1.5, 2.0, 3.0};
  std::vector<Candidate> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    if (k % 3 != 2) {
      const double gamma = scales[static_cast<std::size_t>(k) % 8];
      SymMatrix shape = opt.ellipsoid.shape();
      shape *= gamma;
      Eigen::VectorXd center = opt.ellipsoid.center();
      for (int i = 0; i < n; ++i) center[i] += 0.02 * (rng.uniform() - 0.5);
      Eigen::VectorXd tau = opt.weights->weights();
      for (int i = 0; i < m; ++i) tau[i] *= 1.0 + 0.2 * (rng.uniform() - 0.5);
      out.push_back(Candidate{Ellipsoid(center, shape), tau});
    } else {
      Eigen::MatrixXd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
      Eigen::MatrixXd p = g * g.transpose() +
                          rng.uniform(0.5, 4.0) * Eigen::MatrixXd::Identity(n, n);
      Eigen::VectorXd center(n);
      for (int i = 0; i < n; ++i) center[i] = rng.uniform(-1.0, 1.0);
      Eigen::VectorXd tau(m);
      for (int i = 0; i < m; ++i) tau[i] = rng.uniform(0.0, 2.0);
      out.push_back(Candidate{Ellipsoid(center, SymMatrix::from_dense(p)), tau});
    }
  }
  return out;
}

}  // namespace

CheckResult check_prop2_equivalence(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts) {
  CheckResult out{"prop2-sdp-vs-sprocedure", true, ""};
  std::vector<std::uint64_t> bad;
  double worst = 0.0;
  int disagreements = 0;
  const Rng root(opts.seed ^ 0x517CC1B727220A95ULL);
  for (std::size_t g = 0; g < evals.size(); ++g) {
    const InstanceEvaluation& ev = evals[g];
    const double d = std::abs(ev.logdet[idx(Method::FullSdp)]->objective -
                              ev.logdet[idx(Method::SProcedure)]->objective);
    worst = std::max(worst, d);
    bool ok = d <= opts.prop2_obj_tol;
    Rng rng = root.split(static_cast<std::uint64_t>(g));
    for (const Candidate& c :
         prop2_candidates(ev, opts.prop2_candidates, rng)) {
      const bool a = s_procedure_certificate(ev.instance.spec, c.ellipsoid, c.tau);
      const bool b = sdp_certificate(ev.instance.spec, c.ellipsoid, c.tau);
      if (a != b) {
        ++disagreements;
        ok = false;
      }
    }
    if (!ok) bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "max |sdp - sproc| = " << worst << " (tol " << opts.prop2_obj_tol
     << "), predicate disagreements = " << disagreements;
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

CheckResult check_prop3_equivalence(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts) {
  CheckResult out{"prop3-decoupled-vs-bounding-opt", true, ""};
  std::vector<std::uint64_t> bad;
  double worst = 0.0;
  for (const InstanceEvaluation& ev : evals) {
    const double d_log =
        std::abs(ev.logdet[idx(Method::DecoupledSdp)]->objective -
                 ev.logdet[idx(Method::BoundingOptimal)]->objective);
    const double d_tr = std::abs(ev.trace_objective[idx(Method::DecoupledSdp)] -
                                 ev.trace_objective[idx(Method::BoundingOptimal)]);
    worst = std::max({worst, d_log, d_tr});
    if (d_log > opts.prop3_tol || d_tr > opts.prop3_tol)
      bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "max |decoupled - bounding-opt| = " << worst << " (tol "
     << opts.prop3_tol << ")";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

CheckResult check_corollary_orderings(const std::vector<InstanceEvaluation>& evals,
                                      const VerifyOptions& opts) {
  CheckResult out{"corollary-orderings", true, ""};
  std::vector<std::uint64_t> bad;
  double worst = 0.0;
  for (const InstanceEvaluation& ev : evals) {
    const double dec = ev.logdet[idx(Method::DecoupledSdp)]->objective;
    const double nod = ev.logdet[idx(Method::BoundingNoDelta)]->objective;
    const double ci = ev.logdet[idx(Method::CovarianceIntersection)]->objective;
    const double dec_t = ev.trace_objective[idx(Method::DecoupledSdp)];
    const double nod_t = ev.trace_objective[idx(Method::BoundingNoDelta)];
    const double ci_t = ev.trace_objective[idx(Method::CovarianceIntersection)];
    const double viol = std::max({dec - nod, nod - ci, dec - ci, dec_t - nod_t,
                                  nod_t - ci_t, dec_t - ci_t});
    worst = std::max(worst, viol);
    if (viol > opts.corollary_slack) bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "max ordering violation = " << worst << " (slack "
     << opts.corollary_slack << ")";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

CheckResult check_containment(const std::vector<InstanceEvaluation>& evals,
                              const VerifyOptions& opts) {
  CheckResult out{"sampled-containment", true, ""};
  std::vector<std::uint64_t> bad;
  int violations = 0;
  for (const InstanceEvaluation& ev : evals) {
    bool instance_ok = true;
    for (Method m : kAllMethods) {
      const Ellipsoid& e = ev.logdet[idx(m)]->ellipsoid;
      for (const Eigen::VectorXd& x : ev.samples) {
        if (!contains(e, x, opts.containment_tol)) {
          ++violations;
          instance_ok = false;
          break;
        }
      }
    }
    if (!instance_ok) bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << violations << " method/instance containment violations (tol "
     << opts.containment_tol << ")";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

CheckResult check_mvee_lower_bound(const std::vector<InstanceEvaluation>& evals,
                                   const VerifyOptions& opts) {
  CheckResult out{"mvee-lower-bound", true, ""};
  std::vector<std::uint64_t> bad;
  double worst = 0.0;
  for (const InstanceEvaluation& ev : evals) {
    bool ok = true;
    for (Method m : kAllMethods) {
      const double shortfall = ev.mvee_logdet - ev.logdet[idx(m)]->objective;
      worst = std::max(worst, shortfall);
      if (shortfall > opts.mvee_margin) ok = false;
    }
    if (!ok) bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "max (mvee - method) logdet = " << worst << " (margin "
     << opts.mvee_margin << ")";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

CheckResult check_delta_bounds(const std::vector<InstanceEvaluation>& evals,
                               const VerifyOptions& opts) {
  CheckResult out{"delta-bounds", true, ""};
  std::vector<std::uint64_t> bad;
  double lo = 0.0, hi = 1.0;
  const Rng root(opts.seed ^ 0xD1B54A32D192ED03ULL);
  for (std::size_t g = 0; g < evals.size(); ++g) {
    const InstanceEvaluation& ev = evals[g];
    const int m = ev.instance.spec.size();
    std::vector<Eigen::VectorXd> points;
    points.push_back(Eigen::VectorXd::Constant(m, 1.0 / m));
    for (int i = 0; i < m; ++i) points.push_back(Eigen::VectorXd::Unit(m, i));
    Rng rng = root.split(static_cast<std::uint64_t>(g));
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd t(m);
      for (int i = 0; i < m; ++i) t[i] = -std::log(1.0 - rng.uniform());
      points.push_back(t / t.sum());
    }
    if (ev.logdet[idx(Method::BoundingNoDelta)]->weights)
      points.push_back(
          ev.logdet[idx(Method::BoundingNoDelta)]->weights->weights());
    bool ok = true;
    for (const Eigen::VectorXd& t : points) {
      const ParametricFusion f = parametric_fuse(
          ev.instance.spec,
          WeightVector(t, WeightVector::Normalization::Simplex));
      lo = std::min(lo, f.delta);
      hi = std::max(hi, f.delta);
      if (f.delta < -1e-9 || f.delta > 1.0 + 1e-9) ok = false;
    }
    if (!ok) bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "delta range observed [" << lo << ", " << hi << "]";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

CheckResult check_monotonicity(const std::vector<InstanceEvaluation>& evals,
                               const VerifyOptions& opts) {
  CheckResult out{"monotonicity-append-member", true, ""};
  std::vector<std::uint64_t> bad;
  double worst = 0.0;
  const Rng root(opts.seed ^ 0x2545F4914F6CDD1DULL);
  const std::size_t limit = std::min<std::size_t>(evals.size(), 8);
  for (std::size_t g = 0; g < limit; ++g) {
    const InstanceEvaluation& ev = evals[g];
    Rng rng = root.split(static_cast<std::uint64_t>(g));
    std::vector<Ellipsoid> members = ev.instance.spec.members();
    members.push_back(random_member(ev.instance.spec.dimension(), rng));
    const IntersectionSpec extended(members);
    const double dec_new =
        decoupled_sdp(extended, SizeCriterion::LogDet).objective;
    const double full_new = full_sdp(extended, SizeCriterion::LogDet).objective;
    const double inc_dec =
        dec_new - ev.logdet[idx(Method::DecoupledSdp)]->objective;
    const double inc_full = full_new - ev.logdet[idx(Method::FullSdp)]->objective;
    worst = std::max({worst, inc_dec, inc_full});
    if (inc_dec > opts.monotonicity_tol || inc_full > opts.monotonicity_tol)
      bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "max objective increase = " << worst << " (tol "
     << opts.monotonicity_tol << ")";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

CheckResult check_identity_collapse(const std::vector<InstanceEvaluation>& evals,
                                    const VerifyOptions& opts) {
  CheckResult out{"identity-collapse", true, ""};
  std::vector<std::uint64_t> bad;
  double worst = 0.0;
  std::vector<int> seen;
  for (const InstanceEvaluation& ev : evals) {
    const int n = ev.instance.spec.dimension();
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    const Ellipsoid& base = ev.instance.spec.member(0);
    const IntersectionSpec identical({base, base, base});
    bool ok = true;
    for (Method m : kAllMethods) {
      if (m == Method::InscribedInflate) continue;  // inflates by design
      const MethodResult res = run_method(m, identical, SizeCriterion::LogDet);
      double err = (res.ellipsoid.center() - base.center()).norm();
      err = std::max(err, (res.ellipsoid.shape().dense() -
                           base.shape().dense())
                              .cwiseAbs()
                              .maxCoeff());
      worst = std::max(worst, err);
      if (err > opts.identity_tol) ok = false;
    }
    if (!ok) bad.push_back(ev.instance.seed);
  }
  std::ostringstream ss;
  ss << "max identity deviation = " << worst << " (tol " << opts.identity_tol
     << ")";
  if (!bad.empty()) {
    out.passed = false;
    ss << "; failing seeds: " << join_seeds(bad);
  }
  out.detail = ss.str();
  return out;
}

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& opts) {
  const std::vector<InstanceEvaluation> evals = evaluate_grid(opts);
  return {
      check_prop1_equivalence(evals, opts),
      check_prop2_equivalence(evals, opts),
      check_prop3_equivalence(evals, opts),
      check_corollary_orderings(evals, opts),
      check_containment(evals, opts),
      check_mvee_lower_bound(evals, opts),
      check_delta_bounds(evals, opts),
      check_monotonicity(evals, opts),
      check_identity_collapse(evals, opts),
  };
}

}  // namespace ellint
