#include "dvrl/mlp.hpp"

#include <cmath>
#include <string>

#include "dvrl/kernels.hpp"

namespace dvrl {

std::size_t MlpParams::parameter_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.weight.size() + layer.bias.size();
    return n;
}

void MlpParams::validate() const {
    if (layers.empty()) throw ShapeError("MlpParams: no layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& layer = layers[i];
        if (layer.bias.size() != layer.weight.cols()) {
            throw ShapeError("layer " + std::to_string(i) + ": bias length " +
                             std::to_string(layer.bias.size()) + " != out dim " +
                             std::to_string(layer.weight.cols()));
        }
        if (i > 0 && layers[i - 1].weight.cols() != layer.weight.rows()) {
            throw ShapeError("layer " + std::to_string(i) + ": input dim " +
                             std::to_string(layer.weight.rows()) +
                             " != previous output dim " +
                             std::to_string(layers[i - 1].weight.cols()));
        }
    }
}

MlpGrads MlpGrads::zeros_like(const MlpParams& params) {
    MlpGrads g;
    g.layers.reserve(params.layers.size());
    for (const auto& layer : params.layers) {
        g.layers.push_back({DenseMatrix(layer.weight.rows(), layer.weight.cols()),
                            std::vector<double>(layer.bias.size(), 0.0)});
    }
    return g;
}

void MlpGrads::accumulate(const MlpGrads& other) {
    const auto& k = kernels::ops();
    for (std::size_t i = 0; i < layers.size(); ++i) {
        k.add(other.layers[i].weight.data(), layers[i].weight.data(),
              layers[i].weight.size());
        k.add(other.layers[i].bias.data(), layers[i].bias.data(),
              layers[i].bias.size());
    }
}

void MlpGrads::scale(double a) {
    const auto& k = kernels::ops();
    for (auto& layer : layers) {
        k.scale(layer.weight.data(), a, layer.weight.size());
        k.scale(layer.bias.data(), a, layer.bias.size());
    }
}

bool MlpGrads::all_finite() const {
    for (const auto& layer : layers) {
        if (!layer.weight.all_finite()) return false;
        for (double v : layer.bias) {
            if (!std::isfinite(v)) return false;
        }
    }
    return true;
}

MlpParams make_mlp(const std::vector<std::size_t>& widths, OutputActivation output,
                   Rng& rng) {
    if (widths.size() < 2) throw ShapeError("make_mlp: need at least input and output widths");
    MlpParams params;
    params.output = output;
    for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
        MlpLayer layer{DenseMatrix(widths[i], widths[i + 1]),
                       std::vector<double>(widths[i + 1], 0.0)};
        const double bound =
            std::sqrt(6.0 / static_cast<double>(widths[i] + widths[i + 1]));
        for (double& w : layer.weight.flat()) w = rng.uniform(-bound, bound);
        params.layers.push_back(std::move(layer));
    }
    return params;
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void softmax_rows(DenseMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        double mx = row[0];
        for (double v : row) mx = std::max(mx, v);
        double sum = 0.0;
        for (double& v : row) {
            v = std::exp(v - mx);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
}

namespace {

// pre = x·W + b
DenseMatrix affine(const DenseMatrix& x, const MlpLayer& layer) {
    DenseMatrix out = matmul(x, layer.weight);
    const auto& k = kernels::ops();
    for (std::size_t r = 0; r < out.rows(); ++r) {
        k.add(layer.bias.data(), out.row(r).data(), layer.bias.size());
    }
    return out;
}

void apply_output_activation(DenseMatrix& m, OutputActivation act) {
    switch (act) {
    case OutputActivation::Identity:
        break;
    case OutputActivation::Sigmoid:
        for (double& v : m.flat()) v = sigmoid(v);
        break;
    case OutputActivation::Softmax:
        softmax_rows(m);
        break;
    }
}

// Shared backward walk starting from the output layer's pre-activation grad.
MlpGrads backward_from_preact(const MlpParams& params, const ForwardCache& cache,
                              DenseMatrix delta) {
    const auto& k = kernels::ops();
    MlpGrads grads = MlpGrads::zeros_like(params);
    for (std::size_t li = params.layers.size(); li-- > 0;) {
        const DenseMatrix& layer_input =
            li == 0 ? cache.inputs : cache.post[li - 1];
        grads.layers[li].weight = matmul_transpose_a(layer_input, delta);
        auto& bias_grad = grads.layers[li].bias;
        for (std::size_t r = 0; r < delta.rows(); ++r) {
            k.add(delta.row(r).data(), bias_grad.data(), bias_grad.size());
        }
        if (li == 0) break;
        delta = matmul_transpose_b(delta, params.layers[li].weight);
        // ReLU gate on the previous hidden layer.
        const DenseMatrix& pre = cache.pre[li - 1];
        for (std::size_t r = 0; r < delta.rows(); ++r) {
            k.relu_mask(pre.row(r).data(), delta.row(r).data(), delta.cols());
        }
    }
    return grads;
}

} // namespace

DenseMatrix mlp_forward(const MlpParams& params, const DenseMatrix& inputs,
                        ForwardCache* cache) {
    params.validate();
    if (inputs.cols() != params.input_dim()) {
        throw ShapeError("mlp_forward: input cols " + std::to_string(inputs.cols()) +
                         " != layer 0 input dim " + std::to_string(params.input_dim()));
    }
    if (cache != nullptr) {
        cache->inputs = inputs;
        cache->pre.clear();
        cache->post.clear();
    }
    const auto& k = kernels::ops();
    DenseMatrix cur = inputs;
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        DenseMatrix pre = affine(cur, params.layers[li]);
        if (cache != nullptr) cache->pre.push_back(pre);
        if (li + 1 < params.layers.size()) {
            k.relu(pre.data(), pre.size());
        } else {
            apply_output_activation(pre, params.output);
        }
        if (cache != nullptr) cache->post.push_back(pre);
        cur = std::move(pre);
    }
    cur.ensure_finite("mlp_forward output");
    return cur;
}

MlpGrads mlp_backward(const MlpParams& params, const ForwardCache& cache,
                      const DenseMatrix& upstream_grad) {
    const DenseMatrix& out = cache.post.back();
    if (upstream_grad.rows() != out.rows() || upstream_grad.cols() != out.cols()) {
        throw ShapeError("mlp_backward: upstream grad shape mismatch");
    }
    DenseMatrix delta(out.rows(), out.cols());
    switch (params.output) {
    case OutputActivation::Identity:
        delta = upstream_grad;
        break;
    case OutputActivation::Sigmoid:
        for (std::size_t i = 0; i < delta.size(); ++i) {
            const double y = out.flat()[i];
            delta.flat()[i] = upstream_grad.flat()[i] * y * (1.0 - y);
        }
        break;
    case OutputActivation::Softmax:
        // dz = p ⊙ (g − <g, p>) per row.
        for (std::size_t r = 0; r < delta.rows(); ++r) {
            auto p = out.row(r);
            auto g = upstream_grad.row(r);
            const double gp = kernels::ops().dot(g.data(), p.data(), p.size());
            auto d = delta.row(r);
            for (std::size_t c = 0; c < d.size(); ++c) d[c] = p[c] * (g[c] - gp);
        }
        break;
    }
    return backward_from_preact(params, cache, std::move(delta));
}

MlpGrads mlp_backward_preactivation(const MlpParams& params, const ForwardCache& cache,
                                    const DenseMatrix& preact_grad) {
    const DenseMatrix& out = cache.post.back();
    if (preact_grad.rows() != out.rows() || preact_grad.cols() != out.cols()) {
        throw ShapeError("mlp_backward_preactivation: grad shape mismatch");
    }
    return backward_from_preact(params, cache, preact_grad);
}

} // namespace dvrl
