#pragma once
// Target-task predictor behind a weighted-fit interface. Logistic regression
// is a zero-hidden-layer MLP with softmax output.

#include <cstdint>
#include <span>
#include <vector>

#include "dvrl/dataset.hpp"
#include "dvrl/loss.hpp"
#include "dvrl/mlp.hpp"
#include "dvrl/optimizer.hpp"
#include "dvrl/rng.hpp"

namespace dvrl {

enum class PredictorKind : std::uint8_t {
    LogisticRegression,
    MlpClassifier,
    MlpRegressor,
};

enum class Metric : std::uint8_t { Accuracy, LogLoss, Mse, Rmspe };

struct PredictorConfig {
    PredictorKind kind = PredictorKind::LogisticRegression;
    std::vector<std::size_t> hidden_widths; // ignored for logistic regression
    OptimizerKind optimizer = OptimizerKind::Adam;
    double learning_rate = 0.001; // α
};

struct FitReport {
    int steps_run = 0;
    bool warned_all_zero = false;
};

class PredictorModel {
public:
    static PredictorModel create(const PredictorConfig& config, std::size_t input_dim,
                                 std::size_t output_dim, Rng& rng);

    PredictorKind kind() const { return kind_; }
    bool is_classifier() const { return kind_ != PredictorKind::MlpRegressor; }
    LossKind loss_kind() const {
        return is_classifier() ? LossKind::CrossEntropy : LossKind::Mse;
    }

    // Mini-batch steps on weight-scaled gradients: each step applies
    // (1/B_p) Σ_m w_m ∇L(sample m) over min(B_p, N) distinct rows, dividing by
    // the configured batch size. All-zero weights: no-op with a warning flag.
    FitReport fit_weighted(const Dataset& data, std::span<const double> weights,
                           int iterations, int batch_size, std::uint64_t seed);
    FitReport fit_weighted(const Dataset& data, std::initializer_list<double> weights,
                           int iterations, int batch_size, std::uint64_t seed) {
        return fit_weighted(data, std::span<const double>(weights.begin(), weights.size()),
                            iterations, batch_size, seed);
    }

    DenseMatrix predict(const DenseMatrix& features) const;

    // Per-sample losses on a dataset under the model's loss pairing.
    std::vector<double> per_sample_losses(const Dataset& data) const;

    double evaluate(const Dataset& data, Metric metric) const;

    const MlpParams& params() const { return params_; }
    MlpParams& params() { return params_; }
    void set_params(MlpParams p) { params_ = std::move(p); }
    OptimizerState& optimizer() { return opt_; }

private:
    PredictorModel(PredictorKind kind, MlpParams params, OptimizerState opt)
        : kind_(kind), params_(std::move(params)), opt_(std::move(opt)) {}

    PredictorKind kind_;
    MlpParams params_;
    OptimizerState opt_;
};

} // namespace dvrl
