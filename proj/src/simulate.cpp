#include "ellint/simulate.hpp"

#include "ellint/sampling.hpp"

namespace ellint {

void Scenario::validate() const {
  dynamics.validate();
  const int n = static_cast<int>(dynamics.transition.rows());
  if (initial_truth.size() != n || initial_center.size() != n ||
      initial_shape.order() != n)
    throw DimensionMismatch("Scenario: initial condition dimension mismatch");
  if (steps < 1 || runs < 1)
    throw InvalidArgument("Scenario: steps and runs must be >= 1");
  if (dynamics.sensor_noise.empty())
    throw InvalidArgument("Scenario: at least one sensor required");
}

Scenario paper_scenario() {
  Scenario sc;
  const double T = 1.0;
  sc.dynamics.transition = Eigen::MatrixXd{{1.0, T}, {0.0, 1.0}};
  SymMatrix q(2);
  q.set(0, 0, T * T * T / 3.0);
  q.set(0, 1, T * T / 2.0);
  q.set(1, 1, T);
  sc.dynamics.process_noise = q;
  sc.dynamics.sensor_noise = {
      SymMatrix::diagonal(Eigen::Vector2d(20.0, 20.0)),
      SymMatrix::diagonal(Eigen::Vector2d(18.0, 22.0)),
      SymMatrix::diagonal(Eigen::Vector2d(22.0, 18.0)),
  };
  sc.dynamics.period = T;
  sc.initial_truth = Eigen::Vector2d(1.0, 1.0);
  sc.initial_center = Eigen::Vector2d(2.0, 2.0);
  sc.initial_shape = SymMatrix::diagonal(Eigen::Vector2d(50.0, 50.0));
  return sc;
}

namespace {

struct Accumulator {
  Eigen::VectorXd err2;
  Eigen::VectorXd volume;
  std::vector<bool> contained;

  explicit Accumulator(int steps)
      : err2(Eigen::VectorXd::Zero(steps)), volume(Eigen::VectorXd::Zero(steps)),
        contained(static_cast<std::size_t>(steps), true) {}

  void record(int k, const Ellipsoid& e, const Eigen::VectorXd& truth) {
    err2[k] += (e.center() - truth).squaredNorm();
    volume[k] += size_value(e, SizeCriterion::LogDet);
    if (!contains(e, truth, 1e-9)) contained[k] = false;
  }

  TrackMetrics finish(int runs) const {
    TrackMetrics m;
    const int steps = static_cast<int>(err2.size());
    m.rmse.resize(steps);
    m.mean_volume.resize(steps);
    for (int k = 0; k < steps; ++k) {
      m.rmse[k] = std::sqrt(err2[k] / runs);
      m.mean_volume[k] = volume[k] / runs;
    }
    m.contained = contained;
    return m;
  }
};

}  // namespace

SimulationResult simulate(const Scenario& scenario) {
  scenario.validate();
  const int sensors = static_cast<int>(scenario.dynamics.sensor_noise.size());
  const int steps = scenario.steps;
  const int runs = scenario.runs;
  const SizeCriterion criterion = SizeCriterion::LogDet;
  const Eigen::VectorXd zero =
      Eigen::VectorXd::Zero(scenario.initial_truth.size());
  const Ellipsoid process_set(zero, scenario.dynamics.process_noise);
  std::vector<Ellipsoid> noise_sets;
  for (const SymMatrix& r : scenario.dynamics.sensor_noise)
    noise_sets.emplace_back(zero, r);

  std::vector<Accumulator> acc_sensors(sensors, Accumulator(steps));
  Accumulator acc_baseline(steps), acc_fused(steps), acc_ci(steps);

  SimulationResult out;
  out.vol_sensor1_update = Eigen::MatrixXd::Zero(runs, steps);
  out.vol_sensor1_baseline = Eigen::MatrixXd::Zero(runs, steps);
  out.vol_fused = Eigen::MatrixXd::Zero(runs, steps);
  out.vol_fused_ci = Eigen::MatrixXd::Zero(runs, steps);

  const Rng root(scenario.seed);
  for (int run = 0; run < runs; ++run) {
    Rng rng = root.split(static_cast<std::uint64_t>(run));
    Eigen::VectorXd truth = scenario.initial_truth;
    const FilterState init{
        Ellipsoid(scenario.initial_center, scenario.initial_shape), 0};
    std::vector<FilterState> states(sensors, init);
    FilterState baseline = init;

    for (int k = 0; k < steps; ++k) {
      truth = scenario.dynamics.transition * truth +
              sample_in_ellipsoid(process_set, rng);
      std::vector<Eigen::VectorXd> measurements;
      measurements.reserve(sensors);
      for (int i = 0; i < sensors; ++i)
        measurements.push_back(truth + sample_in_ellipsoid(noise_sets[i], rng));

      std::vector<Ellipsoid> locals;
      locals.reserve(sensors);
      for (int i = 0; i < sensors; ++i) {
        const FilterState predicted = predict(states[i], scenario.dynamics);
        if (!contains(predicted.estimate, truth, 1e-9)) out.all_contained = false;
        const Ellipsoid meas = measurement_ellipsoid(
            measurements[i], scenario.dynamics.sensor_noise[i]);
        UpdateOutcome u =
            update(predicted, meas, scenario.update_method, criterion);
        if (u.empty_intersection_fallback) ++out.fallback_events;
        states[i] = u.state;
        acc_sensors[i].record(k, states[i].estimate, truth);
        locals.push_back(states[i].estimate);
      }
      out.vol_sensor1_update(run, k) =
          size_value(states[0].estimate, SizeCriterion::LogDet);

      {
        const FilterState predicted = predict(baseline, scenario.dynamics);
        if (!contains(predicted.estimate, truth, 1e-9)) out.all_contained = false;
        const Ellipsoid meas = measurement_ellipsoid(
            measurements[0], scenario.dynamics.sensor_noise[0]);
        UpdateOutcome u =
            update(predicted, meas, Method::BoundingNoDelta, criterion);
        if (u.empty_intersection_fallback) ++out.fallback_events;
        baseline = u.state;
        acc_baseline.record(k, baseline.estimate, truth);
        out.vol_sensor1_baseline(run, k) =
            size_value(baseline.estimate, SizeCriterion::LogDet);
      }

      const MethodResult fused =
          fusion_center(locals, scenario.fusion_method, criterion);
      const MethodResult fused_ci =
          fusion_center(locals, Method::CovarianceIntersection, criterion);
      acc_fused.record(k, fused.ellipsoid, truth);
      acc_ci.record(k, fused_ci.ellipsoid, truth);
      out.vol_fused(run, k) = size_value(fused.ellipsoid, SizeCriterion::LogDet);
      out.vol_fused_ci(run, k) =
          size_value(fused_ci.ellipsoid, SizeCriterion::LogDet);
    }
  }

  for (int i = 0; i < sensors; ++i)
    out.sensors.push_back(acc_sensors[i].finish(runs));
  out.sensor1_baseline = acc_baseline.finish(runs);
  out.fused = acc_fused.finish(runs);
  out.fused_ci = acc_ci.finish(runs);
  for (const Accumulator* a :
       {&acc_baseline, &acc_fused, &acc_ci}) {
    for (bool c : a->contained)
      if (!c) out.all_contained = false;
  }
  for (const Accumulator& a : acc_sensors)
    for (bool c : a.contained)
      if (!c) out.all_contained = false;
  return out;
}

}  // namespace ellint
