#pragma once

#include <Eigen/Dense>

#include "edgeidle/core/geometry.hpp"

namespace edgeidle::tracker {

using StateVector = Eigen::Matrix<double, 8, 1>;
using StateMatrix = Eigen::Matrix<double, 8, 8>;
using MeasurementVector = Eigen::Matrix<double, 4, 1>;

/// Constant-velocity state over (cx, cy, aspect = w/h, h) and their per-frame rates.
struct KalmanState {
    StateVector mean = StateVector::Zero();
    StateMatrix covariance = StateMatrix::Zero();
};

// Noise standard deviations are proportional to the box height.
inline constexpr double kStdWeightPosition = 1.0 / 20.0;
inline constexpr double kStdWeightVelocity = 1.0 / 160.0;

MeasurementVector to_measurement(const BBox& b) noexcept;
BBox to_bbox(const KalmanState& s) noexcept;

KalmanState kalman_init(const BBox& b);
KalmanState kalman_predict(const KalmanState& s);

/// Measurement update (Joseph form). Throws ValidationError on non-finite input.
KalmanState kalman_update(const KalmanState& s, const BBox& b);

}  // namespace edgeidle::tracker
