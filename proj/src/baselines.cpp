#include "dvrl/baselines.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dvrl/rng.hpp"

namespace dvrl {

namespace {

double empty_reference_score(const Dataset& validation, Metric metric) {
    switch (metric) {
    case Metric::Accuracy: {
        std::vector<std::size_t> counts(validation.num_classes(), 0);
        for (std::size_t r = 0; r < validation.size(); ++r) {
            ++counts[validation.class_of(r)];
        }
        std::size_t best = 0;
        for (std::size_t c : counts) best = std::max(best, c);
        return static_cast<double>(best) / static_cast<double>(validation.size());
    }
    case Metric::LogLoss:
        return std::log(static_cast<double>(validation.num_classes()));
    case Metric::Mse: {
        double m = 0.0;
        for (std::size_t r = 0; r < validation.size(); ++r) m += validation.labels.at(r, 0);
        m /= static_cast<double>(validation.size());
        double var = 0.0;
        for (std::size_t r = 0; r < validation.size(); ++r) {
            const double d = validation.labels.at(r, 0) - m;
            var += d * d;
        }
        return var / static_cast<double>(validation.size());
    }
    case Metric::Rmspe: {
        double m = 0.0;
        for (std::size_t r = 0; r < validation.size(); ++r) m += validation.labels.at(r, 0);
        m /= static_cast<double>(validation.size());
        double acc = 0.0;
        for (std::size_t r = 0; r < validation.size(); ++r) {
            const double y = validation.labels.at(r, 0);
            const double rel = (y - m) / y;
            acc += rel * rel;
        }
        return std::sqrt(acc / static_cast<double>(validation.size()));
    }
    }
    return 0.0;
}

} // namespace

MarginalEvaluator MarginalEvaluator::retraining(PredictorConfig config, Metric metric,
                                                Dataset validation, int iterations,
                                                int batch_size, std::uint64_t seed) {
    const double empty = empty_reference_score(validation, metric);
    auto score = [config, metric, validation = std::move(validation), iterations,
                  batch_size, seed](const Dataset& data,
                                    const std::vector<int>& subset) -> double {
        Dataset sub = data.select(subset);
        sub.role = SplitRole::Train;
        Rng init_rng(seed);
        PredictorModel model = PredictorModel::create(config, sub.feature_dim(),
                                                      sub.label_dim(), init_rng);
        const std::vector<double> weights(sub.size(), 1.0);
        model.fit_weighted(sub, weights, iterations, batch_size, seed);
        return model.evaluate(validation, metric);
    };
    return {std::move(score), empty};
}

MarginalEvaluator MarginalEvaluator::nearest_centroid(Dataset validation) {
    if (validation.task != TaskKind::Classification) {
        throw ValidationError("nearest_centroid evaluator requires classification");
    }
    const double empty = empty_reference_score(validation, Metric::Accuracy);
    auto score = [validation = std::move(validation)](
                     const Dataset& data, const std::vector<int>& subset) -> double {
        const std::size_t c = data.num_classes();
        const std::size_t d = data.feature_dim();
        std::vector<std::vector<double>> centroid(c, std::vector<double>(d, 0.0));
        std::vector<std::size_t> count(c, 0);
        for (int idx : subset) {
            const auto r = static_cast<std::size_t>(idx);
            const std::size_t cls = data.class_of(r);
            auto x = data.features.row(r);
            for (std::size_t j = 0; j < d; ++j) centroid[cls][j] += x[j];
            ++count[cls];
        }
        for (std::size_t k = 0; k < c; ++k) {
            if (count[k] > 0) {
                for (double& v : centroid[k]) v /= static_cast<double>(count[k]);
            }
        }
        std::size_t correct = 0;
        for (std::size_t r = 0; r < validation.size(); ++r) {
            auto x = validation.features.row(r);
            std::size_t best = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < c; ++k) {
                if (count[k] == 0) continue;
                double dist = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    const double diff = x[j] - centroid[k][j];
                    dist += diff * diff;
                }
                if (dist < best_dist) {
                    best_dist = dist;
                    best = k;
                }
            }
            if (best == validation.class_of(r)) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(validation.size());
    };
    return {std::move(score), empty};
}

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("random_values: n must be >= 1");
    Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform();
    return v;
}

std::vector<double> loo_values(const Dataset& data, const MarginalEvaluator& evaluator) {
    const int n = static_cast<int>(data.size());
    if (n < 2) throw ValidationError("loo_values: need at least 2 rows");
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const double full = evaluator.evaluate(data, all);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> subset;
        subset.reserve(static_cast<std::size_t>(n - 1));
        for (int j = 0; j < n; ++j) {
            if (j != i) subset.push_back(j);
        }
        try {
            values[static_cast<std::size_t>(i)] = full - evaluator.evaluate(data, subset);
        } catch (const std::exception&) {
            // per-sample failure; others unaffected
            values[static_cast<std::size_t>(i)] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return values;
}

std::vector<double> shapley_exact(const Dataset& data,
                                  const MarginalEvaluator& evaluator) {
    const int n = static_cast<int>(data.size());
    if (n > 12) {
        throw ValidationError("shapley_exact: n = " + std::to_string(n) +
                              " exceeds the 2^n enumeration limit of 12; use shapley_tmc");
    }
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<double> score(subsets);
    std::vector<int> members;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        members.clear();
        for (int i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) members.push_back(i);
        }
        score[mask] = evaluator.evaluate(data, members);
    }

    // weight(k) = k! (n-1-k)! / n! for a coalition of size k not containing i
    std::vector<double> weight(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double w = 1.0 / static_cast<double>(n);
        for (int j = 1; j <= k; ++j) {
            w *= static_cast<double>(j) / static_cast<double>(n - j);
        }
        weight[static_cast<std::size_t>(k)] = w;
    }

    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        const int k = static_cast<int>(std::popcount(mask));
        for (int i = 0; i < n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            if (mask & bit) continue;
            values[static_cast<std::size_t>(i)] +=
                weight[static_cast<std::size_t>(k)] * (score[mask | bit] - score[mask]);
        }
    }
    return values;
}

std::vector<double> shapley_tmc(const Dataset& data, const MarginalEvaluator& evaluator,
                                int permutations, double truncation_tolerance,
                                std::uint64_t seed) {
    if (permutations < 1) {
        throw ValidationError("shapley_tmc: need at least 1 permutation");
    }
    const int n = static_cast<int>(data.size());
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const double full = evaluator.evaluate(data, all);

    Rng rng(seed);
    std::vector<double> totals(static_cast<std::size_t>(n), 0.0);
    std::vector<int> perm = all;
    std::vector<int> prefix;
    for (int p = 0; p < permutations; ++p) {
        rng.shuffle(perm);
        prefix.clear();
        double prev = evaluator.empty_score();
        bool truncated = false;
        for (int pos = 0; pos < n; ++pos) {
            const int i = perm[static_cast<std::size_t>(pos)];
            if (!truncated && std::abs(full - prev) <= truncation_tolerance) {
                truncated = true;
            }
            if (truncated) continue; // remaining marginals counted as zero
            prefix.push_back(i);
            const double cur = evaluator.evaluate(data, prefix);
            totals[static_cast<std::size_t>(i)] += cur - prev;
            prev = cur;
        }
    }
    for (double& v : totals) v /= static_cast<double>(permutations);
    return totals;
}

} // namespace dvrl
