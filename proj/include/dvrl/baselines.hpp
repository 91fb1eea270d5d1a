#pragma once
// Comparison valuation methods: Random, Leave-One-Out, exact Shapley (test
// oracle, n <= 12) and truncated Monte Carlo Shapley.

#include <cstdint>
#include <functional>
#include <vector>

#include "dvrl/dataset.hpp"
#include "dvrl/predictor.hpp"

namespace dvrl {

// Scores a training subset. Deterministic: the same subset and seed always
// yield the same score; the empty coalition gets a fixed reference score.
class MarginalEvaluator {
public:
    using SubsetScore =
        std::function<double(const Dataset& data, const std::vector<int>& subset)>;

    MarginalEvaluator(SubsetScore score, double empty_score)
        : score_(std::move(score)), empty_score_(empty_score) {}

    double evaluate(const Dataset& data, const std::vector<int>& subset) const {
        return subset.empty() ? empty_score_ : score_(data, subset);
    }
    double empty_score() const { return empty_score_; }

    // Retrains a fresh predictor (fixed init seed) on each subset and scores it
    // on the validation set. Empty coalition: majority-class accuracy for
    // classification, mean-predictor MSE for regression.
    static MarginalEvaluator retraining(PredictorConfig config, Metric metric,
                                        Dataset validation, int iterations,
                                        int batch_size, std::uint64_t seed);

    // Cheap deterministic evaluator: nearest class centroid, accuracy on the
    // validation set. Used where tens of thousands of subset evaluations are
    // needed.
    static MarginalEvaluator nearest_centroid(Dataset validation);

private:
    SubsetScore score_;
    double empty_score_;
};

// i.i.d. uniform [0,1] values, seeded.
std::vector<double> random_values(std::size_t n, std::uint64_t seed);

// v_i = perf(full) − perf(full minus i). N+1 subset evaluations.
std::vector<double> loo_values(const Dataset& data, const MarginalEvaluator& evaluator);

// Exact Shapley values by full subset enumeration; refuses n > 12.
std::vector<double> shapley_exact(const Dataset& data,
                                  const MarginalEvaluator& evaluator);

// Truncated Monte Carlo Shapley: mean marginal contribution over sampled
// permutations, truncating once the running score is within `truncation_tolerance`
// of the full-data score.
std::vector<double> shapley_tmc(const Dataset& data, const MarginalEvaluator& evaluator,
                                int permutations, double truncation_tolerance,
                                std::uint64_t seed);

} // namespace dvrl
