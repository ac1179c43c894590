#include "edgeidle/idle/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgeidle/error.hpp"

namespace edgeidle::idle {

IdleState other(IdleState s) noexcept { return s == IdleState::Idle ? IdleState::Active : IdleState::Idle; }

std::string_view to_string(IdleState s) noexcept { return s == IdleState::Idle ? "idle" : "active"; }

IdleState idle_state_from_string(std::string_view s) {
    if (s == "idle") return IdleState::Idle;
    if (s == "active") return IdleState::Active;
    throw ValidationError("expected 'idle' or 'active', got '" + std::string(s) + "'");
}

void IdleModel::validate() const {
    if (!std::isfinite(beta0) || !std::isfinite(beta1) || !std::isfinite(beta2)) {
        throw ValidationError("idle model coefficients must be finite");
    }
}

IdleModel reference_model() noexcept { return {2.4613463131, -0.00136793, -0.36581202, IdleState::Idle}; }

double sigmoid(double z) noexcept {
    z = std::clamp(z, -50.0, 50.0);
    return 1.0 / (1.0 + std::exp(-z));
}

double decision_value(const WindowFeatures& f, const IdleModel& m) noexcept {
    return m.beta0 + m.beta1 * f.mad_ad + m.beta2 * f.mad_cd;
}

Classification classify_window(const WindowFeatures& f, const IdleModel& m) noexcept {
    const double p = sigmoid(decision_value(f, m));
    return {p, p >= 0.5 ? m.positive_label : other(m.positive_label)};
}

}  // namespace edgeidle::idle
