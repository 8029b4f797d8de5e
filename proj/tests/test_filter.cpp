#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ellint/sampling.hpp"
#include "ellint/simulate.hpp"

using namespace ellint;

namespace {

LinearDynamics cv_dynamics() {
  LinearDynamics dyn;
  dyn.transition = Eigen::MatrixXd{{1.0, 1.0}, {0.0, 1.0}};
  SymMatrix q(2);
  q.set(0, 0, 1.0 / 3.0);
  q.set(0, 1, 0.5);
  q.set(1, 1, 1.0);
  dyn.process_noise = q;
  dyn.sensor_noise = {SymMatrix::diagonal(Eigen::Vector2d(20.0, 20.0))};
  return dyn;
}

}  // namespace

TEST_CASE("prediction weights: tau1 = 0.6 for the unit-shape state") {
  const LinearDynamics dyn = cv_dynamics();
  const FilterState state{Ellipsoid(Eigen::Vector2d::Zero(), SymMatrix::identity(2)),
                          0};
  const FilterState pred = predict(state, dyn);
  // tau1 = sqrt(3) / (sqrt(3) + sqrt(4/3)) = 0.6; shape = FPF'/0.6 + Q/0.4
  Eigen::Matrix2d fpf;
  fpf << 2, 1, 1, 1;
  const Eigen::Matrix2d expect =
      fpf / 0.6 + dyn.process_noise.dense() / 0.4;
  CHECK((pred.estimate.shape().dense() - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pred.estimate.center().norm() < 1e-15);
  CHECK(pred.step == 1);
}

TEST_CASE("vanishing process noise: predicted shape approaches F P F^T") {
  LinearDynamics dyn = cv_dynamics();
  SymMatrix qeps = SymMatrix::identity(2);
  qeps *= 1e-8;
  dyn.process_noise = qeps;
  const FilterState state{Ellipsoid(Eigen::Vector2d::Zero(), SymMatrix::identity(2)),
                          0};
  const FilterState pred = predict(state, dyn);
  Eigen::Matrix2d fpf;
  fpf << 2, 1, 1, 1;
  CHECK((pred.estimate.shape().dense() - fpf).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("prediction keeps propagated truth inside (Monte Carlo)") {
  const LinearDynamics dyn = cv_dynamics();
  const Ellipsoid prior(Eigen::Vector2d(1.0, -0.5), SymMatrix::identity(2));
  const Ellipsoid noise(Eigen::Vector2d::Zero(), dyn.process_noise);
  const FilterState pred = predict(FilterState{prior, 0}, dyn);
  Rng rng(21);
  for (int k = 0; k < 10000; ++k) {
    const Eigen::VectorXd truth = sample_in_ellipsoid(prior, rng);
    const Eigen::VectorXd w = sample_in_ellipsoid(noise, rng);
    CHECK(contains(pred.estimate, dyn.transition * truth + w, 1e-9));
  }
}

TEST_CASE("measurement ellipsoid") {
  CHECK(measurement_ellipsoid(Eigen::Vector2d::Zero(), SymMatrix::identity(2))
            .form_value(Eigen::Vector2d(1.0, 0.0)) == doctest::Approx(1.0));
  const Ellipsoid v = measurement_ellipsoid(
      Eigen::Vector2d(12.0, 10.0), SymMatrix::diagonal(Eigen::Vector2d(18, 22)));
  CHECK(v.center() == Eigen::Vector2d(12.0, 10.0));
  // 1D: y = 5, R = 4 gives the interval [3, 7]
  SymMatrix r1(1);
  r1.set(0, 0, 4.0);
  const Ellipsoid seg =
      measurement_ellipsoid(Eigen::VectorXd::Constant(1, 5.0), r1);
  CHECK(contains(seg, Eigen::VectorXd::Constant(1, 3.0), 1e-12));
  CHECK(contains(seg, Eigen::VectorXd::Constant(1, 7.0), 1e-12));
  CHECK_FALSE(contains(seg, Eigen::VectorXd::Constant(1, 7.1), 0.0));
}

TEST_CASE("update") {
  SUBCASE("identical measurement collapses to the prediction") {
    const FilterState pred{
        Ellipsoid(Eigen::Vector2d(1.0, 1.0), SymMatrix::identity(2)), 1};
    const UpdateOutcome u = update(pred, pred.estimate, Method::DecoupledSdp,
                                   SizeCriterion::LogDet);
    CHECK_FALSE(u.empty_intersection_fallback);
    CHECK((u.state.estimate.center() - pred.estimate.center()).norm() < 1e-6);
    CHECK((u.state.estimate.shape().dense() - Eigen::Matrix2d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-5);
  }
  SUBCASE("1D update contains the true intersection [0, 1]") {
    SymMatrix one(1);
    one.set(0, 0, 1.0);
    const FilterState pred{Ellipsoid(Eigen::VectorXd::Zero(1), one), 1};
    const Ellipsoid meas(Eigen::VectorXd::Constant(1, 1.0), one);
    const UpdateOutcome u =
        update(pred, meas, Method::DecoupledSdp, SizeCriterion::LogDet);
    CHECK(contains(u.state.estimate, Eigen::VectorXd::Constant(1, 0.0), 1e-9));
    CHECK(contains(u.state.estimate, Eigen::VectorXd::Constant(1, 1.0), 1e-9));
  }
  SUBCASE("decoupled update is never larger than the bounding update") {
    Rng rng(51);
    SymMatrix r = SymMatrix::diagonal(Eigen::Vector2d(20, 20));
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::Vector2d c(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const FilterState pred{
          Ellipsoid(c, SymMatrix::diagonal(Eigen::Vector2d(30, 25))), 1};
      const Ellipsoid meas(c + Eigen::Vector2d(rng.uniform(-2, 2),
                                               rng.uniform(-2, 2)),
                           r);
      const double vol_dec =
          size_value(update(pred, meas, Method::DecoupledSdp,
                            SizeCriterion::LogDet)
                         .state.estimate,
                     SizeCriterion::LogDet);
      const double vol_bnd =
          size_value(update(pred, meas, Method::BoundingNoDelta,
                            SizeCriterion::LogDet)
                         .state.estimate,
                     SizeCriterion::LogDet);
      CHECK(vol_dec <= vol_bnd + 1e-8);
    }
  }
}

TEST_CASE("fusion center") {
  const Ellipsoid local(Eigen::Vector2d(0.5, -0.5),
                        SymMatrix::diagonal(Eigen::Vector2d(3, 2)));
  SUBCASE("one local is returned as-is") {
    const MethodResult r =
        fusion_center({local}, Method::DecoupledSdp, SizeCriterion::LogDet);
    CHECK((r.ellipsoid.center() - local.center()).norm() < 1e-6);
  }
  SUBCASE("three identical locals collapse") {
    const MethodResult r = fusion_center({local, local, local},
                                         Method::DecoupledSdp,
                                         SizeCriterion::LogDet);
    CHECK((r.ellipsoid.shape().dense() - local.shape().dense())
              .cwiseAbs()
              .maxCoeff() < 1e-5);
  }
}

TEST_CASE("short simulation: containment and per-step orderings") {
  Scenario sc = paper_scenario();
  sc.steps = 6;
  sc.runs = 4;
  sc.seed = 9;
  const SimulationResult sim = simulate(sc);
  CHECK(sim.all_contained);
  CHECK(sim.fallback_events == 0);
  for (int r = 0; r < sc.runs; ++r)
    for (int k = 0; k < sc.steps; ++k) {
      CHECK(sim.vol_fused(r, k) <= sim.vol_fused_ci(r, k) + 1e-8);
      CHECK(sim.vol_sensor1_update(r, k) <=
            sim.vol_sensor1_baseline(r, k) + 1e-8);
    }
}

TEST_CASE("near-noiseless sensors track tightly") {
  Scenario sc = paper_scenario();
  sc.steps = 8;
  sc.runs = 2;
  sc.seed = 33;
  const double eps = 1e-4;
  sc.dynamics.sensor_noise = {SymMatrix::diagonal(Eigen::Vector2d(eps, eps)),
                              SymMatrix::diagonal(Eigen::Vector2d(eps, eps)),
                              SymMatrix::diagonal(Eigen::Vector2d(eps, eps))};
  const SimulationResult sim = simulate(sc);
  CHECK(sim.all_contained);
  // RMSE bounded by the measurement set radius scale
  CHECK(sim.sensors[0].rmse.back() < std::sqrt(eps) * 2);
}

TEST_CASE("scenario validation") {
  Scenario sc = paper_scenario();
  sc.steps = 0;
  CHECK_THROWS_AS(sc.validate(), InvalidArgument);
  sc = paper_scenario();
  sc.initial_truth = Eigen::Vector3d::Zero();
  CHECK_THROWS_AS(sc.validate(), DimensionMismatch);
}
