#include "dvrl/predictor.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dvrl {

PredictorModel PredictorModel::create(const PredictorConfig& config,
                                      std::size_t input_dim, std::size_t output_dim,
                                      Rng& rng) {
    std::vector<std::size_t> widths{input_dim};
    if (config.kind != PredictorKind::LogisticRegression) {
        for (std::size_t h : config.hidden_widths) widths.push_back(h);
    }
    widths.push_back(output_dim);
    const OutputActivation out = config.kind == PredictorKind::MlpRegressor
                                     ? OutputActivation::Identity
                                     : OutputActivation::Softmax;
    MlpParams params = make_mlp(widths, out, rng);
    return PredictorModel(config.kind, std::move(params),
                          OptimizerState(config.optimizer, config.learning_rate));
}

FitReport PredictorModel::fit_weighted(const Dataset& data,
                                       std::span<const double> weights, int iterations,
                                       int batch_size, std::uint64_t seed) {
    data.validate();
    if (data.role != SplitRole::Train) {
        throw ValidationError("fit_weighted: dataset split role must be train");
    }
    if (weights.size() != data.size()) {
        throw ShapeError("fit_weighted: " + std::to_string(weights.size()) +
                         " weights for " + std::to_string(data.size()) + " rows");
    }
    for (double w : weights) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw ValidationError("fit_weighted: weight outside [0,1]");
        }
    }
    if (iterations < 1 || batch_size < 1) {
        throw ValidationError("fit_weighted: iterations and batch size must be >= 1");
    }

    FitReport report;
    const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (weight_sum == 0.0) {
        report.warned_all_zero = true;
        return report;
    }

    Rng rng(seed);
    const int n = static_cast<int>(data.size());
    const int rows_per_batch = std::min(batch_size, n);
    for (int it = 0; it < iterations; ++it) {
        std::vector<int> batch;
        if (rows_per_batch == n) {
            batch.resize(static_cast<std::size_t>(n));
            std::iota(batch.begin(), batch.end(), 0);
        } else {
            batch = rng.sample_without_replacement(n, rows_per_batch);
        }
        const DenseMatrix x = data.features.select_rows(batch);
        const DenseMatrix y = data.labels.select_rows(batch);

        ForwardCache cache;
        const DenseMatrix pred = mlp_forward(params_, x, &cache);

        // Pre-activation gradient, each row scaled by w_m / B_p.
        DenseMatrix delta(pred.rows(), pred.cols());
        const double inv_batch = 1.0 / static_cast<double>(batch_size);
        if (is_classifier()) {
            // softmax + cross-entropy: p − y
            for (std::size_t i = 0; i < delta.size(); ++i) {
                delta.flat()[i] = pred.flat()[i] - y.flat()[i];
            }
        } else {
            // identity + mean-MSE: 2(p − y)/cols
            const double s = 2.0 / static_cast<double>(pred.cols());
            for (std::size_t i = 0; i < delta.size(); ++i) {
                delta.flat()[i] = s * (pred.flat()[i] - y.flat()[i]);
            }
        }
        for (std::size_t r = 0; r < delta.rows(); ++r) {
            const double w = weights[static_cast<std::size_t>(batch[r])] * inv_batch;
            for (double& v : delta.row(r)) v *= w;
        }

        const MlpGrads grads = mlp_backward_preactivation(params_, cache, delta);
        opt_.step(params_, grads);
        ++report.steps_run;
    }
    return report;
}

DenseMatrix PredictorModel::predict(const DenseMatrix& features) const {
    return mlp_forward(params_, features);
}

std::vector<double> PredictorModel::per_sample_losses(const Dataset& data) const {
    return loss_eval(loss_kind(), predict(data.features), data.labels);
}

double PredictorModel::evaluate(const Dataset& data, Metric metric) const {
    data.validate();
    const DenseMatrix pred = predict(data.features);
    switch (metric) {
    case Metric::Accuracy: {
        if (data.task != TaskKind::Classification) {
            throw ValidationError("accuracy requires a classification dataset");
        }
        std::size_t correct = 0;
        for (std::size_t r = 0; r < pred.rows(); ++r) {
            auto row = pred.row(r);
            std::size_t best = 0;
            for (std::size_t c = 1; c < row.size(); ++c) {
                // ties broken toward the lowest class index
                if (row[c] > row[best]) best = c;
            }
            if (best == data.class_of(r)) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(pred.rows());
    }
    case Metric::LogLoss:
        return mean(loss_eval(LossKind::CrossEntropy, pred, data.labels));
    case Metric::Mse:
        return mean(loss_eval(LossKind::Mse, pred, data.labels));
    case Metric::Rmspe: {
        if (data.task != TaskKind::Regression) {
            throw ValidationError("RMSPE requires a regression dataset");
        }
        std::string zero_rows;
        for (std::size_t r = 0; r < data.labels.rows(); ++r) {
            if (data.labels.at(r, 0) == 0.0) {
                if (!zero_rows.empty()) zero_rows += ", ";
                zero_rows += std::to_string(r);
            }
        }
        if (!zero_rows.empty()) {
            throw ValidationError("RMSPE undefined for zero targets at rows: " +
                                  zero_rows);
        }
        double acc = 0.0;
        for (std::size_t r = 0; r < pred.rows(); ++r) {
            const double y = data.labels.at(r, 0);
            const double rel = (y - pred.at(r, 0)) / y;
            acc += rel * rel;
        }
        return std::sqrt(acc / static_cast<double>(pred.rows()));
    }
    }
    throw ValidationError("unknown metric");
}

} // namespace dvrl
