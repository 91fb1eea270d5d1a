#include "dvrl/engine.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dvrl {

void DvrlConfig::validate() const {
    if (moving_average_window < 1) {
        throw ValidationError("DvrlConfig: moving average window must be >= 1");
    }
    if (predictor_batch < 1 || valuation_batch < predictor_batch) {
        throw ValidationError("DvrlConfig: need B_s >= B_p >= 1");
    }
    if (inner_iterations < 1) {
        throw ValidationError("DvrlConfig: inner iteration count must be >= 1");
    }
    if (outer_iterations < 1) {
        throw ValidationError("DvrlConfig: outer iteration count must be >= 1");
    }
    if (!(predictor_lr > 0.0) || !(estimator_lr >= 0.0)) {
        // β = 0 freezes the estimator (ablation mode)
        throw ValidationError("DvrlConfig: learning rates must be positive");
    }
}

BaselineTracker::BaselineTracker(int window) : window_(window) {
    if (window < 1) throw ValidationError("BaselineTracker: window must be >= 1");
}

void BaselineTracker::update(double mean_validation_loss) {
    if (!std::isfinite(mean_validation_loss)) {
        throw ValidationError("BaselineTracker: non-finite validation loss");
    }
    const double t = static_cast<double>(window_);
    delta_ = (t - 1.0) / t * delta_ + mean_validation_loss / t;
}

void reinforce_step(ValueEstimator& est, const Dataset& batch,
                    const SelectionVector& s, const PredictorModel& predictor,
                    const Dataset& validation, const BaselineTracker& tracker) {
    const double mean_loss = mean(predictor.per_sample_losses(validation));
    const double advantage = mean_loss - tracker.delta();
    if (!std::isfinite(advantage)) {
        throw ValidationError("reinforce_step: non-finite advantage");
    }
    const MlpGrads grads = est.reinforce_gradient(batch, s, advantage);
    if (!grads.all_finite()) {
        throw ValidationError("reinforce_step: non-finite gradient");
    }
    est.optimizer().step(est.params(), grads);
}

ValuationResult train_dvrl(const Dataset& train, const Dataset& validation,
                           const DvrlConfig& config) {
    config.validate();
    train.validate();
    validation.validate();
    if (train.task != validation.task) {
        throw ValidationError("train_dvrl: train/validation task kinds differ");
    }
    if (validation.size() == 0) {
        throw ValidationError("train_dvrl: validation set is empty");
    }

    Rng rng(config.seed);

    PredictorConfig pcfg = config.predictor;
    pcfg.learning_rate = config.predictor_lr;
    const bool frozen_estimator = config.estimator_lr == 0.0;
    ValueEstimatorConfig ecfg = config.estimator;
    ecfg.learning_rate = frozen_estimator ? 1.0 : config.estimator_lr;

    ValueEstimator estimator =
        ValueEstimator::create(ecfg, train.feature_dim(), train.label_dim(), rng);
    PredictorModel predictor =
        PredictorModel::create(pcfg, train.feature_dim(), train.label_dim(), rng);

    const std::vector<double> unit_weights(train.size(), 1.0);
    MlpParams warm_params = predictor.params();
    if (config.warm_start) {
        predictor.fit_weighted(train, unit_weights, config.inner_iterations,
                               config.predictor_batch, rng.next_u64());
        warm_params = predictor.params();
    }

    BaselineTracker tracker(config.moving_average_window);
    ValuationResult result{{}, {}, std::move(predictor), std::move(estimator), false};
    const int n = static_cast<int>(train.size());

    for (int iter = 0; iter < config.outer_iterations; ++iter) {
        const auto batch_idx =
            rng.sample_without_replacement(n, std::min(config.valuation_batch, n));
        const Dataset batch = train.select(batch_idx);

        const std::vector<double> w = result.estimator.estimate_values(batch);
        const SelectionVector s = sample_selection(w, rng.next_u64());

        if (config.warm_start) {
            result.final_predictor.set_params(warm_params);
            result.final_predictor.optimizer().reset();
        } else {
            result.final_predictor =
                PredictorModel::create(pcfg, train.feature_dim(), train.label_dim(), rng);
        }

        std::vector<double> weights(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            weights[i] = static_cast<double>(s.bits[i]);
        }
        result.final_predictor.fit_weighted(batch, weights, config.inner_iterations,
                                            config.predictor_batch, rng.next_u64());
        if (config.phase_hook) config.phase_hook(iter, "theta");

        const double mean_loss =
            mean(result.final_predictor.per_sample_losses(validation));
        if (!std::isfinite(mean_loss)) {
            result.diverged = true;
            break;
        }

        if (!frozen_estimator) {
            reinforce_step(result.estimator, batch, s, result.final_predictor,
                           validation, tracker);
        }
        if (config.phase_hook) config.phase_hook(iter, "phi");
        tracker.update(mean_loss);
        if (config.phase_hook) config.phase_hook(iter, "delta");

        const double selected =
            std::accumulate(s.bits.begin(), s.bits.end(), 0.0) /
            static_cast<double>(s.size());
        result.trace.push_back({iter, mean_loss, tracker.delta(), selected});
    }

    result.values = result.estimator.estimate_values(train);
    return result;
}

std::vector<double> infer_values(const ValuationResult& result, const Dataset& batch) {
    return result.estimator.estimate_values(batch);
}

} // namespace dvrl
