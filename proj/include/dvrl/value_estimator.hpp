#pragma once
// Data value estimator h_φ: maps (features, label) to a selection probability
// in [ε, 1−ε], with Bernoulli selection sampling and the log-probability of a
// selection vector plus its gradient.

#include <cstdint>
#include <span>
#include <vector>

#include "dvrl/dataset.hpp"
#include "dvrl/mlp.hpp"
#include "dvrl/optimizer.hpp"
#include "dvrl/rng.hpp"

namespace dvrl {

// Clamp on selection probabilities (looser than the cross-entropy clamp);
// keeps log π and its gradient finite for any parameter values.
inline constexpr double kSelectionClamp = 1e-6;

struct SelectionVector {
    std::vector<std::uint8_t> bits;
    std::size_t size() const { return bits.size(); }
};

struct ValueEstimatorConfig {
    std::vector<std::size_t> hidden_widths{100, 100};
    OptimizerKind optimizer = OptimizerKind::Adam;
    double learning_rate = 0.01; // β
};

class ValueEstimator {
public:
    // input dim = feature dim + label dim (one-hot for classification,
    // a single column for regression).
    static ValueEstimator create(const ValueEstimatorConfig& config,
                                 std::size_t feature_dim, std::size_t label_dim,
                                 Rng& rng);

    // [x | label-encoding] rows for the estimator input.
    DenseMatrix encode(const Dataset& batch) const;

    // w_i = clamp(h_φ(x_i, y_i)); deterministic given parameters.
    std::vector<double> estimate_values(const Dataset& batch) const;

    const MlpParams& params() const { return params_; }
    MlpParams& params() { return params_; }
    OptimizerState& optimizer() { return opt_; }

    // ∇_φ log π_φ(batch, s), via the per-sample pre-activation identity
    // dz_i = s_i − w_i.
    MlpGrads log_prob_gradient(const Dataset& batch, const SelectionVector& s) const;

    // One REINFORCE gradient: advantage · ∇_φ log π. Exposed separately so the
    // enumeration tests can drive it with an arbitrary advantage.
    MlpGrads reinforce_gradient(const Dataset& batch, const SelectionVector& s,
                                double advantage) const;

private:
    ValueEstimator(MlpParams params, OptimizerState opt)
        : params_(std::move(params)), opt_(std::move(opt)) {}

    MlpParams params_;
    OptimizerState opt_;
};

// Independent Bernoulli(w_i) bits, seeded.
SelectionVector sample_selection(std::span<const double> w, std::uint64_t seed);

// Σ_i [s_i ln w_i + (1−s_i) ln(1−w_i)] with w clamped to [ε, 1−ε].
double selection_log_prob(std::span<const double> w, const SelectionVector& s);

} // namespace dvrl
