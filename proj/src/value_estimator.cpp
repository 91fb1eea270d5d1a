#include "dvrl/value_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dvrl {

ValueEstimator ValueEstimator::create(const ValueEstimatorConfig& config,
                                      std::size_t feature_dim, std::size_t label_dim,
                                      Rng& rng) {
    std::vector<std::size_t> widths{feature_dim + label_dim};
    for (std::size_t h : config.hidden_widths) widths.push_back(h);
    widths.push_back(1);
    MlpParams params = make_mlp(widths, OutputActivation::Sigmoid, rng);
    // Zero output layer: an untrained estimator assigns exactly 0.5 to every
    // sample, so the initial policy is uniform.
    params.layers.back().weight.fill(0.0);
    return ValueEstimator(std::move(params),
                          OptimizerState(config.optimizer, config.learning_rate));
}

DenseMatrix ValueEstimator::encode(const Dataset& batch) const {
    const std::size_t d = batch.feature_dim();
    const std::size_t c = batch.label_dim();
    if (d + c != params_.input_dim()) {
        throw ShapeError("value estimator: batch encodes to " + std::to_string(d + c) +
                         " columns, estimator expects " +
                         std::to_string(params_.input_dim()));
    }
    DenseMatrix out(batch.size(), d + c);
    for (std::size_t r = 0; r < batch.size(); ++r) {
        auto dst = out.row(r);
        auto x = batch.features.row(r);
        auto y = batch.labels.row(r);
        for (std::size_t i = 0; i < d; ++i) dst[i] = x[i];
        for (std::size_t i = 0; i < c; ++i) dst[d + i] = y[i];
    }
    return out;
}

std::vector<double> ValueEstimator::estimate_values(const Dataset& batch) const {
    if (batch.size() < 1) throw ValidationError("estimate_values: empty batch");
    const DenseMatrix out = mlp_forward(params_, encode(batch));
    std::vector<double> w(batch.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::clamp(out.at(i, 0), kSelectionClamp, 1.0 - kSelectionClamp);
    }
    return w;
}

MlpGrads ValueEstimator::log_prob_gradient(const Dataset& batch,
                                           const SelectionVector& s) const {
    if (s.size() != batch.size()) {
        throw ShapeError("log_prob_gradient: selection length " +
                         std::to_string(s.size()) + " vs batch size " +
                         std::to_string(batch.size()));
    }
    ForwardCache cache;
    const DenseMatrix w = mlp_forward(params_, encode(batch), &cache);
    DenseMatrix delta(w.rows(), 1);
    for (std::size_t i = 0; i < w.rows(); ++i) {
        // d log π / dz_i = s_i − σ(z_i)
        delta.at(i, 0) = static_cast<double>(s.bits[i]) - w.at(i, 0);
    }
    return mlp_backward_preactivation(params_, cache, delta);
}

MlpGrads ValueEstimator::reinforce_gradient(const Dataset& batch,
                                            const SelectionVector& s,
                                            double advantage) const {
    MlpGrads g = log_prob_gradient(batch, s);
    g.scale(advantage);
    return g;
}

SelectionVector sample_selection(std::span<const double> w, std::uint64_t seed) {
    Rng rng(seed);
    SelectionVector s;
    s.bits.reserve(w.size());
    for (double p : w) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("sample_selection: probability outside [0,1]");
        }
        s.bits.push_back(rng.bernoulli(p) ? 1 : 0);
    }
    return s;
}

double selection_log_prob(std::span<const double> w, const SelectionVector& s) {
    if (w.size() != s.size()) {
        throw ShapeError("selection_log_prob: " + std::to_string(w.size()) +
                         " probabilities vs " + std::to_string(s.size()) + " bits");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double p = std::clamp(w[i], kSelectionClamp, 1.0 - kSelectionClamp);
        acc += s.bits[i] != 0 ? std::log(p) : std::log1p(-p);
    }
    return acc;
}

} // namespace dvrl
