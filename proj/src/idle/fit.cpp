#include "edgeidle/idle/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgeidle/error.hpp"

namespace edgeidle::idle {
namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

LogisticObjective::LogisticObjective(std::vector<std::array<double, 2>> features, std::vector<double> targets,
                                     double l2)
    : x_(std::move(features)), y_(std::move(targets)), l2_(l2) {
    if (x_.size() != y_.size() || x_.empty()) {
        throw ValidationError("logistic objective: feature and target counts must match and be nonzero");
    }
}

double LogisticObjective::value(const Coefficients& b) const {
    double ll = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        const double z = b[0] + b[1] * x_[i][0] + b[2] * x_[i][1];
        // y log p + (1 - y) log(1 - p) = y z - log(1 + e^z)
        ll += y_[i] * z - softplus(z);
    }
    return ll / static_cast<double>(x_.size()) - 0.5 * l2_ * (b[1] * b[1] + b[2] * b[2]);
}

Coefficients LogisticObjective::gradient(const Coefficients& b) const {
    Coefficients g{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < x_.size(); ++i) {
        const double z = b[0] + b[1] * x_[i][0] + b[2] * x_[i][1];
        const double r = y_[i] - logistic(z);
        g[0] += r;
        g[1] += r * x_[i][0];
        g[2] += r * x_[i][1];
    }
    const double n = static_cast<double>(x_.size());
    g[0] /= n;
    g[1] = g[1] / n - l2_ * b[1];
    g[2] = g[2] / n - l2_ * b[2];
    return g;
}

FitResult fit_model_detailed(std::span<const LabeledWindow> windows, const FitOptions& opts) {
    if (windows.size() < 2) {
        throw DegenerateTrainingError("fit_model: need at least 2 windows, got " + std::to_string(windows.size()));
    }
    if (!(opts.learning_rate > 0.0) || !(opts.l2 >= 0.0) || opts.max_iterations < 1) {
        throw ValidationError("fit_model: learning_rate > 0, l2 >= 0 and max_iterations >= 1 required");
    }
    std::size_t positives = 0;
    for (const LabeledWindow& w : windows) {
        if (!std::isfinite(w.features.mad_ad) || !std::isfinite(w.features.mad_cd)) {
            throw ValidationError("fit_model: non-finite window features");
        }
        positives += w.label == opts.positive_label ? 1 : 0;
    }
    if (positives == 0 || positives == windows.size()) {
        throw DegenerateTrainingError("fit_model: training windows contain a single class");
    }

    std::array<double, 2> mean{0.0, 0.0};
    std::array<double, 2> scale{1.0, 1.0};
    const double n = static_cast<double>(windows.size());
    if (opts.standardize) {
        for (const LabeledWindow& w : windows) {
            mean[0] += w.features.mad_ad / n;
            mean[1] += w.features.mad_cd / n;
        }
        std::array<double, 2> var{0.0, 0.0};
        for (const LabeledWindow& w : windows) {
            var[0] += (w.features.mad_ad - mean[0]) * (w.features.mad_ad - mean[0]) / n;
            var[1] += (w.features.mad_cd - mean[1]) * (w.features.mad_cd - mean[1]) / n;
        }
        for (int k = 0; k < 2; ++k) {
            scale[k] = var[k] > 0.0 ? std::sqrt(var[k]) : 1.0;
        }
    }

    std::vector<std::array<double, 2>> x;
    std::vector<double> y;
    x.reserve(windows.size());
    y.reserve(windows.size());
    for (const LabeledWindow& w : windows) {
        x.push_back({(w.features.mad_ad - mean[0]) / scale[0], (w.features.mad_cd - mean[1]) / scale[1]});
        y.push_back(w.label == opts.positive_label ? 1.0 : 0.0);
    }
    const LogisticObjective objective(std::move(x), std::move(y), opts.l2);

    FitResult result;
    Coefficients b{0.0, 0.0, 0.0};
    for (int it = 0; it < opts.max_iterations; ++it) {
        const Coefficients g = objective.gradient(b);
        result.gradient_norm = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
        result.iterations = it;
        if (result.gradient_norm < opts.gradient_tolerance) {
            result.converged = true;
            break;
        }
        for (int k = 0; k < 3; ++k) {
            b[k] += opts.learning_rate * g[k];
        }
        result.iterations = it + 1;
    }

    IdleModel& m = result.model;
    m.beta1 = b[1] / scale[0];
    m.beta2 = b[2] / scale[1];
    m.beta0 = b[0] - m.beta1 * mean[0] - m.beta2 * mean[1];
    m.positive_label = opts.positive_label;
    m.validate();
    return result;
}

IdleModel fit_model(std::span<const LabeledWindow> windows, const FitOptions& opts) {
    return fit_model_detailed(windows, opts).model;
}

double training_accuracy(std::span<const LabeledWindow> windows, const IdleModel& model) {
    if (windows.empty()) {
        return 0.0;
    }
    std::size_t correct = 0;
    for (const LabeledWindow& w : windows) {
        correct += classify_window(w.features, model).state == w.label ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(windows.size());
}

}  // namespace edgeidle::idle
