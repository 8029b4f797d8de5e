#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ellint/relaxations.hpp"
#include "ellint/sampling.hpp"
#include "ellint/verify.hpp"

using namespace ellint;

namespace {

Ellipsoid interval(double center, double shape) {
  SymMatrix p(1);
  p.set(0, 0, shape);
  return Ellipsoid(Eigen::VectorXd::Constant(1, center), p);
}

// P1 = P2 = [1], centers 0 and 1: the hand-checkable 1D instance.
IntersectionSpec one_d_pair() {
  return IntersectionSpec({interval(0.0, 1.0), interval(1.0, 1.0)});
}

Ellipsoid unit_disk(double x, double y) {
  return Ellipsoid(Eigen::Vector2d(x, y), SymMatrix::identity(2));
}

WeightVector simplex(std::initializer_list<double> w) {
  Eigen::VectorXd v(static_cast<int>(w.size()));
  int i = 0;
  for (double x : w) v[i++] = x;
  return WeightVector(v, WeightVector::Normalization::Simplex);
}

}  // namespace

TEST_CASE("weight vector validation") {
  CHECK_THROWS_AS(simplex({0.5, 0.4}), InvalidArgument);
  CHECK_THROWS_AS(WeightVector(Eigen::Vector2d(-0.1, 1.1),
                               WeightVector::Normalization::Nonnegative),
                  InvalidArgument);
  CHECK_NOTHROW(WeightVector(Eigen::Vector2d(3.0, 0.0),
                             WeightVector::Normalization::Nonnegative));
}

TEST_CASE("parametric fusion on the stated examples") {
  SUBCASE("single member is returned unchanged") {
    const IntersectionSpec spec({unit_disk(0.3, -0.1)});
    const ParametricFusion f = parametric_fuse(spec, simplex({1.0}));
    CHECK((f.center - Eigen::Vector2d(0.3, -0.1)).norm() < 1e-14);
    CHECK(f.delta == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("equal centers give delta zero for every t") {
    SymMatrix p2(2);
    p2.set(0, 0, 2.0);
    p2.set(1, 1, 0.5);
    const IntersectionSpec spec(
        {unit_disk(0.7, 0.2), Ellipsoid(Eigen::Vector2d(0.7, 0.2), p2)});
    for (double t : {0.1, 0.5, 0.9}) {
      const ParametricFusion f = parametric_fuse(spec, simplex({t, 1.0 - t}));
      CHECK(std::abs(f.delta) < 1e-12);
      CHECK((f.center - Eigen::Vector2d(0.7, 0.2)).norm() < 1e-12);
    }
  }
  SUBCASE("1D pair at equal weights: P_t = 1, x_t = 0.5, delta = 0.25") {
    const ParametricFusion f = parametric_fuse(one_d_pair(), simplex({0.5, 0.5}));
    CHECK(f.shape(0, 0) == doctest::Approx(1.0));
    CHECK(f.center[0] == doctest::Approx(0.5));
    CHECK(f.delta == doctest::Approx(0.25));
  }
}

TEST_CASE("covariance intersection") {
  SUBCASE("single member") {
    const MethodResult r = covariance_intersection(
        IntersectionSpec({unit_disk(1.0, 2.0)}), SizeCriterion::LogDet);
    CHECK((r.ellipsoid.center() - Eigen::Vector2d(1.0, 2.0)).norm() < 1e-12);
  }
  SUBCASE("identical members tie-break to the barycenter") {
    const IntersectionSpec spec({unit_disk(0, 0), unit_disk(0, 0)});
    const MethodResult r = covariance_intersection(spec, SizeCriterion::LogDet);
    REQUIRE(r.weights.has_value());
    CHECK(r.weights->weights()[0] == doctest::Approx(0.5));
    CHECK((r.ellipsoid.shape().dense() - Eigen::Matrix2d::Identity()).norm() <
          1e-9);
  }
  SUBCASE("1D pair: objective constant in t, tie -> center 0.5") {
    const MethodResult r =
        covariance_intersection(one_d_pair(), SizeCriterion::LogDet);
    CHECK(r.ellipsoid.shape()(0, 0) == doctest::Approx(1.0));
    CHECK(r.ellipsoid.center()[0] == doctest::Approx(0.5));
  }
}

TEST_CASE("bounding without delta optimization") {
  SUBCASE("1D pair: center 0.5, shape 0.75, covers the true intersection") {
    const MethodResult r = bounding_no_delta(one_d_pair(), SizeCriterion::LogDet);
    CHECK(r.ellipsoid.center()[0] == doctest::Approx(0.5));
    CHECK(r.ellipsoid.shape()(0, 0) == doctest::Approx(0.75));
    // true intersection is [0, 1]
    CHECK(contains(r.ellipsoid, Eigen::VectorXd::Constant(1, 0.0), 1e-12));
    CHECK(contains(r.ellipsoid, Eigen::VectorXd::Constant(1, 1.0), 1e-12));
  }
  SUBCASE("m = 1 returns the member with delta zero") {
    const MethodResult r = bounding_no_delta(IntersectionSpec({unit_disk(2, 1)}),
                                             SizeCriterion::Trace);
    CHECK(r.objective == doctest::Approx(2.0));
  }
}

TEST_CASE("decoupled SDP") {
  SUBCASE("m = 1 forces weight 1 and returns the member") {
    SymMatrix p(2);
    p.set(0, 0, 6.0);
    p.set(0, 1, -5.0);
    p.set(1, 1, 12.0);
    const Ellipsoid e(Eigen::Vector2d(12.0, 11.0), p);
    const MethodResult r =
        decoupled_sdp(IntersectionSpec({e}), SizeCriterion::LogDet);
    REQUIRE(r.weights.has_value());
    CHECK(r.weights->weights()[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK((r.ellipsoid.center() - e.center()).norm() < 1e-6);
    CHECK((r.ellipsoid.shape().dense() - p.dense()).cwiseAbs().maxCoeff() <
          1e-5);
  }
  SUBCASE("1D pair: optimum shape 0.75 at center 0.5") {
    const MethodResult r = decoupled_sdp(one_d_pair(), SizeCriterion::LogDet);
    CHECK(r.ellipsoid.center()[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.ellipsoid.shape()(0, 0) == doctest::Approx(0.75).epsilon(1e-6));
  }
}

TEST_CASE("full SDP vs decoupled on seeded 2D instances") {
  Rng rng(2024);
  for (int rep = 0; rep < 5; ++rep) {
    const IntersectionSpec spec = random_nonempty_spec(2, 3, rng);
    for (const SizeCriterion crit :
         {SizeCriterion::LogDet, SizeCriterion::Trace}) {
      const MethodResult full = full_sdp(spec, crit);
      const MethodResult dec = decoupled_sdp(spec, crit);
      CHECK(std::abs(full.objective - dec.objective) < 1e-4);
    }
  }
}

TEST_CASE("s-procedure equals full SDP and certificates behave") {
  Rng rng(77);
  const IntersectionSpec spec = random_nonempty_spec(2, 3, rng);
  const MethodResult full = full_sdp(spec, SizeCriterion::LogDet);
  const MethodResult sp = s_procedure(spec, SizeCriterion::LogDet);
  CHECK(std::abs(full.objective - sp.objective) < 1e-6);
  CHECK((full.ellipsoid.center() - sp.ellipsoid.center()).norm() < 1e-5);
  CHECK((full.ellipsoid.shape().dense() - sp.ellipsoid.shape().dense())
            .cwiseAbs()
            .maxCoeff() < 1e-5);

  SUBCASE("m = 1 certificate with tau = 1 holds with equality") {
    const IntersectionSpec single({spec.member(0)});
    CHECK(s_procedure_certificate(single, spec.member(0),
                                  Eigen::VectorXd::Ones(1)));
    CHECK(sdp_certificate(single, spec.member(0), Eigen::VectorXd::Ones(1)));
  }
  SUBCASE("a candidate strictly inside the minimal cover has no certificate") {
    SymMatrix small = sp.ellipsoid.shape();
    small *= 0.8;
    const Ellipsoid shrunk(sp.ellipsoid.center(), small);
    Rng srng(5);
    const auto pts = sample_intersection(spec, 2000, srng);
    bool violated = false;
    for (const auto& x : pts)
      if (!contains(shrunk, x, 1e-9)) violated = true;
    CHECK(violated);  // the shrunk candidate misses sampled points
    CHECK_FALSE(s_procedure_certificate(spec, shrunk, sp.weights->weights()));
    CHECK_FALSE(sdp_certificate(spec, shrunk, sp.weights->weights()));
  }
}

TEST_CASE("bounding-optimal matches decoupled and never beats no-delta") {
  Rng rng(31);
  for (int rep = 0; rep < 4; ++rep) {
    const IntersectionSpec spec = random_nonempty_spec(2, 3, rng);
    const MethodResult opt = bounding_optimal(spec, SizeCriterion::LogDet);
    const MethodResult dec = decoupled_sdp(spec, SizeCriterion::LogDet);
    const MethodResult nod = bounding_no_delta(spec, SizeCriterion::LogDet);
    CHECK(std::abs(opt.objective - dec.objective) < 1e-4);
    CHECK(opt.objective <= nod.objective + 1e-8);
  }
}

TEST_CASE("max inscribed ellipsoid") {
  SUBCASE("single unit disk is its own inscribed ellipsoid") {
    auto [e, tau] = max_inscribed(IntersectionSpec({unit_disk(0, 0)}));
    CHECK(e.center().norm() < 1e-5);
    CHECK((e.shape().dense() - Eigen::Matrix2d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-4);
  }
  SUBCASE("two overlapping disks: symmetric axis-aligned inscribed ellipse") {
    const double d = 0.5;
    const IntersectionSpec spec({unit_disk(-d, 0), unit_disk(d, 0)});
    auto [e, tau] = max_inscribed(spec);
    CHECK(std::abs(e.center()[0]) < 1e-5);
    CHECK(std::abs(e.center()[1]) < 1e-5);
    CHECK(std::abs(e.shape()(0, 1)) < 1e-5);
    // containment in both members along sampled boundary directions
    const Eigen::MatrixXd l = e.cholesky();
    for (int k = 0; k < 64; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 64;
      const Eigen::Vector2d x =
          e.center() + l * Eigen::Vector2d(std::cos(a), std::sin(a));
      for (const Ellipsoid& member : spec.members())
        CHECK(contains(member, x, 1e-7));
    }
  }
  SUBCASE("disjoint members are infeasible") {
    const IntersectionSpec spec({unit_disk(0, 0), unit_disk(3, 0)});
    CHECK_THROWS_AS(max_inscribed(spec), SolverInfeasible);
  }
}

TEST_CASE("inscribed-inflate is the factor-n inflation") {
  const MethodResult r = inscribed_inflate(IntersectionSpec({unit_disk(0, 0)}),
                                           SizeCriterion::LogDet);
  // disk of radius 2: shape 4 I
  CHECK((r.ellipsoid.shape().dense() - 4.0 * Eigen::Matrix2d::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-3);
  const MethodResult dec = decoupled_sdp(IntersectionSpec({unit_disk(0, 0)}),
                                         SizeCriterion::LogDet);
  CHECK(r.objective >= dec.objective);
}

TEST_CASE("recursive bounding") {
  SUBCASE("m = 1 returns the member") {
    const MethodResult r = recursive_bounding(IntersectionSpec({unit_disk(1, 1)}),
                                              SizeCriterion::LogDet, true);
    CHECK((r.ellipsoid.center() - Eigen::Vector2d(1, 1)).norm() < 1e-12);
  }
  SUBCASE("m = 2 coincides with bounding-no-delta") {
    Rng rng(99);
    for (int rep = 0; rep < 3; ++rep) {
      const IntersectionSpec spec = random_nonempty_spec(2, 2, rng);
      const MethodResult rec =
          recursive_bounding(spec, SizeCriterion::LogDet, true);
      const MethodResult nod = bounding_no_delta(spec, SizeCriterion::LogDet);
      CHECK(std::abs(rec.objective - nod.objective) < 1e-6);
      CHECK((rec.ellipsoid.center() - nod.ellipsoid.center()).norm() < 1e-5);
    }
  }
  SUBCASE("scale_delta=false reproduces sequential CI at m = 2") {
    Rng rng(123);
    const IntersectionSpec spec = random_nonempty_spec(2, 2, rng);
    const MethodResult rec =
        recursive_bounding(spec, SizeCriterion::LogDet, false);
    const MethodResult ci = covariance_intersection(spec, SizeCriterion::LogDet);
    CHECK(std::abs(rec.objective - ci.objective) < 1e-6);
  }
}

TEST_CASE("containment of sampled intersection points for every method") {
  Rng rng(404);
  const IntersectionSpec spec = random_nonempty_spec(3, 3, rng);
  Rng srng(405);
  const auto pts = sample_intersection(spec, 1000, srng);
  for (Method m :
       {Method::FullSdp, Method::SProcedure, Method::DecoupledSdp,
        Method::InscribedInflate, Method::BoundingNoDelta,
        Method::BoundingOptimal, Method::CovarianceIntersection,
        Method::RecursiveBounding}) {
    const MethodResult r = run_method(m, spec, SizeCriterion::LogDet);
    int outside = 0;
    for (const auto& x : pts)
      if (!contains(r.ellipsoid, x, 1e-9)) ++outside;
    CHECK(outside == 0);
  }
}

TEST_CASE("method names round-trip") {
  for (Method m :
       {Method::FullSdp, Method::SProcedure, Method::DecoupledSdp,
        Method::InscribedInflate, Method::BoundingNoDelta,
        Method::BoundingOptimal, Method::CovarianceIntersection,
        Method::RecursiveBounding})
    CHECK(method_from_name(method_name(m)) == m);
  CHECK_FALSE(method_from_name("nope").has_value());
}
