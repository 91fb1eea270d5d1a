#pragma once

#include <cstdint>
#include <vector>

#include "dvrl/mlp.hpp"

namespace dvrl {

enum class OptimizerKind : std::uint8_t { Sgd, Adam };

struct AdamDefaults {
    static constexpr double beta1 = 0.9;
    static constexpr double beta2 = 0.999;
    static constexpr double epsilon = 1e-8;
};

// First-order optimizer over a flat view of MlpParams. Moment buffers are
// lazily sized on the first step and must shape-match thereafter.
class OptimizerState {
public:
    OptimizerState(OptimizerKind kind, double learning_rate);

    OptimizerKind kind() const { return kind_; }
    double learning_rate() const { return lr_; }
    std::uint64_t step_count() const { return step_; }

    // In-place parameter update. Throws ValidationError (with the layer index)
    // on non-finite gradients, ShapeError on shape drift.
    void step(MlpParams& params, const MlpGrads& grads);

    void reset();

private:
    OptimizerKind kind_;
    double lr_;
    std::uint64_t step_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

} // namespace dvrl
