#pragma once

#include <array>
#include <span>
#include <vector>

#include "edgeidle/idle/model.hpp"

namespace edgeidle::idle {

struct LabeledWindow {
    WindowFeatures features;
    IdleState label = IdleState::Idle;
};

struct FitOptions {
    double l2 = 1e-4;
    double learning_rate = 0.1;
    double gradient_tolerance = 1e-8;  // infinity norm
    int max_iterations = 10000;
    IdleState positive_label = IdleState::Idle;
    // Run the ascent on z-scored features and map the coefficients back.
    bool standardize = true;
};

using Coefficients = std::array<double, 3>;  // intercept, MAD_AD, MAD_CD

/// Mean log-likelihood of a binary logistic model minus (l2 / 2) * |slopes|^2.
class LogisticObjective {
public:
    LogisticObjective(std::vector<std::array<double, 2>> features, std::vector<double> targets, double l2);

    double value(const Coefficients& beta) const;
    Coefficients gradient(const Coefficients& beta) const;

    std::size_t size() const noexcept { return y_.size(); }

private:
    std::vector<std::array<double, 2>> x_;
    std::vector<double> y_;  // 1 for the positive label
    double l2_;
};

struct FitResult {
    IdleModel model;
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = false;
};

/// Maximum penalized-likelihood fit by full-batch gradient ascent.
/// Throws DegenerateTrainingError unless both labels are present.
FitResult fit_model_detailed(std::span<const LabeledWindow> windows, const FitOptions& opts = {});

IdleModel fit_model(std::span<const LabeledWindow> windows, const FitOptions& opts = {});

double training_accuracy(std::span<const LabeledWindow> windows, const IdleModel& model);

}  // namespace edgeidle::idle
