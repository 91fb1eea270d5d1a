#include "dvrl/optimizer.hpp"

#include <cmath>
#include <string>

namespace dvrl {

OptimizerState::OptimizerState(OptimizerKind kind, double learning_rate)
    : kind_(kind), lr_(learning_rate) {
    if (!(learning_rate > 0.0)) {
        throw ValidationError("optimizer: learning rate must be positive");
    }
}

void OptimizerState::reset() {
    step_ = 0;
    m_.clear();
    v_.clear();
}

void OptimizerState::step(MlpParams& params, const MlpGrads& grads) {
    if (grads.layers.size() != params.layers.size()) {
        throw ShapeError("optimizer: gradient layer count mismatch");
    }
    for (std::size_t i = 0; i < grads.layers.size(); ++i) {
        const auto& g = grads.layers[i];
        const auto& p = params.layers[i];
        if (g.weight.rows() != p.weight.rows() || g.weight.cols() != p.weight.cols() ||
            g.bias.size() != p.bias.size()) {
            throw ShapeError("optimizer: gradient shape mismatch at layer " +
                             std::to_string(i));
        }
        if (!g.weight.all_finite()) {
            throw ValidationError("optimizer: non-finite gradient at layer " +
                                  std::to_string(i) + " weight");
        }
        for (double v : g.bias) {
            if (!std::isfinite(v)) {
                throw ValidationError("optimizer: non-finite gradient at layer " +
                                      std::to_string(i) + " bias");
            }
        }
    }

    const std::size_t total = params.parameter_count();
    if (kind_ == OptimizerKind::Adam && m_.empty()) {
        m_.assign(total, 0.0);
        v_.assign(total, 0.0);
    }
    if (kind_ == OptimizerKind::Adam && m_.size() != total) {
        throw ShapeError("optimizer: moment buffers do not match parameter count");
    }

    ++step_;
    std::size_t offset = 0;
    auto apply = [&](std::span<double> pspan, std::span<const double> gspan) {
        if (kind_ == OptimizerKind::Sgd) {
            for (std::size_t j = 0; j < pspan.size(); ++j) {
                pspan[j] -= lr_ * gspan[j];
            }
        } else {
            const double b1 = AdamDefaults::beta1;
            const double b2 = AdamDefaults::beta2;
            const double bc1 = 1.0 - std::pow(b1, static_cast<double>(step_));
            const double bc2 = 1.0 - std::pow(b2, static_cast<double>(step_));
            for (std::size_t j = 0; j < pspan.size(); ++j) {
                double& m = m_[offset + j];
                double& v = v_[offset + j];
                m = b1 * m + (1.0 - b1) * gspan[j];
                v = b2 * v + (1.0 - b2) * gspan[j] * gspan[j];
                const double mhat = m / bc1;
                const double vhat = v / bc2;
                pspan[j] -= lr_ * mhat / (std::sqrt(vhat) + AdamDefaults::epsilon);
            }
        }
        offset += pspan.size();
    };

    for (std::size_t i = 0; i < params.layers.size(); ++i) {
        apply(params.layers[i].weight.flat(), grads.layers[i].weight.flat());
        apply(params.layers[i].bias,
              std::span<const double>(grads.layers[i].bias));
    }
}

} // namespace dvrl
