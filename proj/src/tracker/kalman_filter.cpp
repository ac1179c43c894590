#include "edgeidle/tracker/kalman_filter.hpp"

#include <algorithm>
#include <cmath>

#include "edgeidle/error.hpp"

namespace edgeidle::tracker {
namespace {

constexpr double kMinHeight = 1e-6;
constexpr double kMinAspect = 1e-6;

using MeasurementMatrix = Eigen::Matrix<double, 4, 8>;

const StateMatrix& transition() {
    static const StateMatrix f = [] {
        StateMatrix m = StateMatrix::Identity();
        for (int i = 0; i < 4; ++i) {
            m(i, i + 4) = 1.0;
        }
        return m;
    }();
    return f;
}

const MeasurementMatrix& projection() {
    static const MeasurementMatrix h = [] {
        MeasurementMatrix m = MeasurementMatrix::Zero();
        for (int i = 0; i < 4; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }();
    return h;
}

StateMatrix symmetrized(const StateMatrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

MeasurementVector to_measurement(const BBox& b) noexcept {
    const Point c = bbox_centroid(b);
    MeasurementVector z;
    z << c.x, c.y, b.w / b.h, b.h;
    return z;
}

BBox to_bbox(const KalmanState& s) noexcept {
    const double h = std::max(s.mean(3), kMinHeight);
    const double w = std::max(s.mean(2), kMinAspect) * h;
    return {s.mean(0) - w / 2.0, s.mean(1) - h / 2.0, w, h};
}

KalmanState kalman_init(const BBox& b) {
    require_valid(b, "kalman_init");
    KalmanState s;
    s.mean.head<4>() = to_measurement(b);
    const double h = b.h;
    StateVector std_dev;
    std_dev << 2 * kStdWeightPosition * h, 2 * kStdWeightPosition * h, 1e-2, 2 * kStdWeightPosition * h,
        10 * kStdWeightVelocity * h, 10 * kStdWeightVelocity * h, 1e-5, 10 * kStdWeightVelocity * h;
    s.covariance = std_dev.array().square().matrix().asDiagonal();
    return s;
}

KalmanState kalman_predict(const KalmanState& s) {
    const double h = std::max(s.mean(3), kMinHeight);
    StateVector std_dev;
    std_dev << kStdWeightPosition * h, kStdWeightPosition * h, 1e-2, kStdWeightPosition * h,
        kStdWeightVelocity * h, kStdWeightVelocity * h, 1e-5, kStdWeightVelocity * h;
    const StateMatrix q = std_dev.array().square().matrix().asDiagonal();

    KalmanState out;
    out.mean = transition() * s.mean;
    out.covariance = symmetrized(transition() * s.covariance * transition().transpose() + q);
    return out;
}

KalmanState kalman_update(const KalmanState& s, const BBox& b) {
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.w) || !std::isfinite(b.h)) {
        throw ValidationError("kalman_update: non-finite measurement");
    }
    require_valid(b, "kalman_update");

    const double h = std::max(s.mean(3), kMinHeight);
    Eigen::Vector4d r_std;
    r_std << kStdWeightPosition * h, kStdWeightPosition * h, 1e-1, kStdWeightPosition * h;
    const Eigen::Matrix4d r = r_std.array().square().matrix().asDiagonal();

    const MeasurementMatrix& hm = projection();
    const Eigen::Matrix4d innovation_cov = hm * s.covariance * hm.transpose() + r;
    const Eigen::LLT<Eigen::Matrix4d> chol(innovation_cov);
    if (chol.info() != Eigen::Success) {
        throw InvariantError("kalman_update: innovation covariance is not positive definite");
    }
    // K = P H^T S^-1, solved as S K^T = H P.
    const Eigen::Matrix<double, 8, 4> gain = chol.solve(hm * s.covariance).transpose();
    const MeasurementVector innovation = to_measurement(b) - hm * s.mean;

    KalmanState out;
    out.mean = s.mean + gain * innovation;
    const StateMatrix i_kh = StateMatrix::Identity() - gain * hm;
    out.covariance = symmetrized(i_kh * s.covariance * i_kh.transpose() + gain * r * gain.transpose());
    out.mean(3) = std::max(out.mean(3), kMinHeight);
    return out;
}

}  // namespace edgeidle::tracker
