#pragma once

#include <string_view>

#include "edgeidle/idle/features.hpp"

namespace edgeidle::idle {

enum class IdleState { Idle, Active };

IdleState other(IdleState s) noexcept;
std::string_view to_string(IdleState s) noexcept;
IdleState idle_state_from_string(std::string_view s);

/// Logistic model p = sigmoid(beta0 + beta1 * MAD_AD + beta2 * MAD_CD), where p
/// is the probability of `positive_label`.
struct IdleModel {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    IdleState positive_label = IdleState::Idle;

    void validate() const;

    friend bool operator==(const IdleModel&, const IdleModel&) = default;
};

/// Coefficients fitted on 200 windows of 15 frames at 10 FPS.
IdleModel reference_model() noexcept;

struct Classification {
    double p = 0.0;
    IdleState state = IdleState::Idle;
};

/// Logistic function with the argument clamped to [-50, 50].
double sigmoid(double z) noexcept;

double decision_value(const WindowFeatures& f, const IdleModel& m) noexcept;

/// state = positive_label when p >= 0.5, otherwise the other label.
Classification classify_window(const WindowFeatures& f, const IdleModel& m) noexcept;

}  // namespace edgeidle::idle
