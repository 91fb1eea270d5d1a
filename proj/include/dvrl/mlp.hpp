#pragma once
// Fixed-topology MLP: affine layers with ReLU hidden activations and a
// configurable output activation, plus manual backprop.

#include <cstdint>
#include <span>
#include <vector>

#include "dvrl/matrix.hpp"
#include "dvrl/rng.hpp"

namespace dvrl {

enum class OutputActivation : std::uint8_t { Identity, Sigmoid, Softmax };

struct MlpLayer {
    DenseMatrix weight; // in_dim × out_dim
    std::vector<double> bias; // out_dim
};

struct MlpParams {
    std::vector<MlpLayer> layers;
    OutputActivation output = OutputActivation::Identity;

    std::size_t input_dim() const { return layers.front().weight.rows(); }
    std::size_t output_dim() const { return layers.back().weight.cols(); }
    std::size_t parameter_count() const;

    // Checks the layer-dimension chain; throws ShapeError naming the layer.
    void validate() const;

    // Iterate every parameter array (weight then bias, per layer).
    template <typename Fn>
    void for_each_param(Fn&& fn) {
        for (auto& layer : layers) {
            fn(std::span<double>(layer.weight.flat()));
            fn(std::span<double>(layer.bias));
        }
    }
    template <typename Fn>
    void for_each_param(Fn&& fn) const {
        for (const auto& layer : layers) {
            fn(std::span<const double>(layer.weight.flat()));
            fn(std::span<const double>(layer.bias));
        }
    }
};

// Gradients shaped exactly like MlpParams.
struct MlpGrads {
    std::vector<MlpLayer> layers;

    static MlpGrads zeros_like(const MlpParams& params);
    template <typename Fn>
    void for_each_param(Fn&& fn) {
        for (auto& layer : layers) {
            fn(std::span<double>(layer.weight.flat()));
            fn(std::span<double>(layer.bias));
        }
    }
    void accumulate(const MlpGrads& other);
    void scale(double a);
    bool all_finite() const;
};

// Glorot-uniform init over the given layer widths, e.g. {d, 100, 100, 1}.
MlpParams make_mlp(const std::vector<std::size_t>& widths, OutputActivation output,
                   Rng& rng);

struct ForwardCache {
    DenseMatrix inputs;
    std::vector<DenseMatrix> pre;  // pre-activation per layer
    std::vector<DenseMatrix> post; // post-activation per layer
};

// Batch forward pass. When `cache` is non-null the per-layer activations are
// recorded for backprop.
DenseMatrix mlp_forward(const MlpParams& params, const DenseMatrix& inputs,
                        ForwardCache* cache = nullptr);

// Backprop from d(loss)/d(output), i.e. the post-activation output. Applies
// the output-activation Jacobian, then walks the ReLU/affine chain.
MlpGrads mlp_backward(const MlpParams& params, const ForwardCache& cache,
                      const DenseMatrix& upstream_grad);

// Backprop from d(loss)/d(pre-activation) of the output layer. Used where a
// fused form is numerically better: softmax+cross-entropy (p − y) and the
// Bernoulli log-likelihood of the value estimator (s − w).
MlpGrads mlp_backward_preactivation(const MlpParams& params, const ForwardCache& cache,
                                    const DenseMatrix& preact_grad);

double sigmoid(double z);
// In-place row-wise softmax (shift-by-max form).
void softmax_rows(DenseMatrix& m);

} // namespace dvrl
