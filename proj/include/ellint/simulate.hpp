#pragma once

#include <cstdint>

#include "ellint/filter.hpp"
#include "ellint/rng.hpp"

namespace ellint {

// Full tracking scenario: dynamics plus initial conditions and run controls.
struct Scenario {
  LinearDynamics dynamics;
  Eigen::VectorXd initial_truth;
  Eigen::VectorXd initial_center;
  SymMatrix initial_shape = SymMatrix::identity(1);
  int steps = 50;
  int runs = 100;
  std::uint64_t seed = 1;
  Method update_method = Method::DecoupledSdp;
  Method fusion_method = Method::DecoupledSdp;

  void validate() const;
};

// Constant-velocity target with three full-state sensors as in the tracking
// study: F = [[1, T], [0, 1]], T = 1, Q = [[T^3/3, T^2/2], [T^2/2, T]],
// R^1 = diag(20, 20), R^2 = diag(18, 22), R^3 = diag(22, 18).
Scenario paper_scenario();

// Per-step traces of one tracked quantity (averaged over runs where noted).
struct TrackMetrics {
  std::vector<double> rmse;         // sqrt(mean ||estimate - truth||^2)
  std::vector<double> mean_volume;  // mean logdet of the updated/fused shape
  std::vector<bool> contained;      // truth inside the ellipsoid in every run
};

struct SimulationResult {
  // Tracks: sensors with the configured update method, sensor 1 rerun with
  // the bounding-no-delta update, and the two fusion rules.
  std::vector<TrackMetrics> sensors;
  TrackMetrics sensor1_baseline;
  TrackMetrics fused;      // fusion_method (decoupled by default)
  TrackMetrics fused_ci;   // covariance intersection
  // Per-run volumes (runs x steps) for the per-run ordering checks.
  Eigen::MatrixXd vol_sensor1_update;
  Eigen::MatrixXd vol_sensor1_baseline;
  Eigen::MatrixXd vol_fused;
  Eigen::MatrixXd vol_fused_ci;
  int fallback_events = 0;
  bool all_contained = true;
};

SimulationResult simulate(const Scenario& scenario);

}  // namespace ellint
