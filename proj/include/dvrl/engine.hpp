#pragma once
// Joint training loop: predictor inner updates on Bernoulli-selected batches,
// a score-function update to the value estimator against a moving-average
// validation-loss baseline, then the baseline update — in that order, every
// outer iteration.

#include <cstdint>
#include <functional>
#include <vector>

#include "dvrl/predictor.hpp"
#include "dvrl/value_estimator.hpp"

namespace dvrl {

struct DvrlConfig {
    int outer_iterations = 1000;
    int inner_iterations = 200; // N_I
    int predictor_batch = 256;  // B_p
    int valuation_batch = 2000; // B_s
    int moving_average_window = 20; // T
    double predictor_lr = 0.001;    // α
    double estimator_lr = 0.01;     // β
    bool warm_start = true;
    std::uint64_t seed = 0;
    PredictorConfig predictor;
    ValueEstimatorConfig estimator;
    // Called after each update phase ("theta", "phi", "delta") of an outer
    // iteration; used by tests to assert update ordering.
    std::function<void(int iteration, const char* phase)> phase_hook;

    void validate() const;
};

// Moving average of validation loss; δ starts at 0.
class BaselineTracker {
public:
    explicit BaselineTracker(int window);

    double delta() const { return delta_; }
    int window() const { return window_; }

    // δ ← (T−1)/T · δ + mean_loss/T
    void update(double mean_validation_loss);

private:
    int window_;
    double delta_ = 0.0;
};

struct TraceEntry {
    int iteration = 0;
    double mean_validation_loss = 0.0;
    double delta = 0.0;
    double selected_fraction = 0.0;
};

struct ValuationResult {
    std::vector<double> values; // per training sample, in [ε, 1−ε]
    std::vector<TraceEntry> trace;
    PredictorModel final_predictor;
    ValueEstimator estimator;
    bool diverged = false;
};

// One policy-gradient step on φ: φ ← φ − β·(mean validation loss − δ)·∇ log π.
// The tracker is read, not updated; the caller updates it afterwards.
void reinforce_step(ValueEstimator& est, const Dataset& batch,
                    const SelectionVector& s, const PredictorModel& predictor,
                    const Dataset& validation, const BaselineTracker& tracker);

ValuationResult train_dvrl(const Dataset& train, const Dataset& validation,
                           const DvrlConfig& config);

// Forward pass of a trained estimator over a batch; no parameter mutation.
std::vector<double> infer_values(const ValuationResult& result, const Dataset& batch);

} // namespace dvrl
