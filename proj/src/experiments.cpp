#include "dvrl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dvrl {

namespace {

// Indices sorted by ascending value, ties by original index.
std::vector<int> ascending_by_value(const std::vector<double>& values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    });
    return order;
}

void check_fraction_grid(const std::vector<double>& fractions, double max_allowed) {
    double prev = -1.0;
    for (double f : fractions) {
        if (f < 0.0 || f > max_allowed) {
            throw ValidationError("fraction " + std::to_string(f) + " outside [0, " +
                                  std::to_string(max_allowed) + "]");
        }
        if (f <= prev) throw ValidationError("fractions must be strictly increasing");
        prev = f;
    }
}

PredictorModel train_plain(const Dataset& train, const DvrlConfig& config,
                           std::uint64_t seed, int iterations) {
    Dataset t = train;
    t.role = SplitRole::Train;
    PredictorConfig pcfg = config.predictor;
    pcfg.learning_rate = config.predictor_lr;
    Rng rng(seed);
    PredictorModel model =
        PredictorModel::create(pcfg, t.feature_dim(), t.label_dim(), rng);
    const std::vector<double> weights(t.size(), 1.0);
    model.fit_weighted(t, weights, iterations, config.predictor_batch, rng.next_u64());
    return model;
}

// Budget for the non-DVRL reference predictors.
int plain_iterations(const DvrlConfig& config) {
    return std::max(config.inner_iterations, 500);
}

Metric task_metric(const Dataset& data) {
    return data.task == TaskKind::Classification ? Metric::Accuracy : Metric::Mse;
}

Dataset blob_pair(std::size_t n, std::size_t dim, double separation, double offset1,
                  bool flipped, SplitRole role, Rng& rng) {
    Dataset out;
    out.features = DenseMatrix(n, dim);
    out.labels = DenseMatrix(n, 2);
    out.task = TaskKind::Classification;
    out.role = role;
    for (std::size_t r = 0; r < n; ++r) {
        const bool cls = rng.bernoulli(0.5);
        // class 1 sits at +sep/2 on axis 0 (reversed for the flipped cluster)
        const double sign = (cls != flipped) ? 1.0 : -1.0;
        auto x = out.features.row(r);
        x[0] = sign * separation / 2.0 + rng.normal();
        if (dim > 1) x[1] = offset1 + rng.normal();
        for (std::size_t j = 2; j < dim; ++j) x[j] = rng.normal();
        out.labels.at(r, cls ? 1 : 0) = 1.0;
    }
    return out;
}

} // namespace

Dataset make_blobs(std::size_t n, std::size_t dim, double separation, SplitRole role,
                   std::uint64_t seed) {
    Rng rng(seed);
    return blob_pair(n, dim, separation, 0.0, false, role, rng);
}

Dataset make_shifted_source(std::size_t n, std::size_t dim, double separation,
                            double off_target_fraction, std::uint64_t seed) {
    if (dim < 2) throw ValidationError("make_shifted_source: need dim >= 2");
    Rng rng(seed);
    const auto n_off =
        static_cast<std::size_t>(std::floor(off_target_fraction * static_cast<double>(n)));
    // Off-target cluster: shifted down axis 1 and with the class geometry
    // mirrored, so its samples teach the wrong boundary for the target task.
    Dataset off = blob_pair(n_off, dim, separation, -2.0, true, SplitRole::Train, rng);
    Dataset on = blob_pair(n - n_off, dim, separation, 2.0, false, SplitRole::Train, rng);

    Dataset out;
    out.features = DenseMatrix(n, dim);
    out.labels = DenseMatrix(n, 2);
    out.task = TaskKind::Classification;
    out.role = SplitRole::Train;
    out.domain_tags.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t i = 0; i < n; ++i) {
        const auto dst = static_cast<std::size_t>(order[i]);
        const bool from_off = i < n_off;
        const Dataset& src = from_off ? off : on;
        const std::size_t sr = from_off ? i : i - n_off;
        for (std::size_t j = 0; j < dim; ++j) {
            out.features.at(dst, j) = src.features.at(sr, j);
        }
        for (std::size_t j = 0; j < 2; ++j) {
            out.labels.at(dst, j) = src.labels.at(sr, j);
        }
        out.domain_tags[dst] = from_off ? 0 : 1;
    }
    return out;
}

Dataset corrupt_labels(const Dataset& data, const CorruptionSpec& spec) {
    data.validate();
    if (data.task != TaskKind::Classification) {
        throw ValidationError("corrupt_labels: classification task required");
    }
    const std::size_t c = data.num_classes();
    if (c < 2) throw ValidationError("corrupt_labels: need at least 2 classes");
    if (spec.ratio < 0.0 || spec.ratio > 1.0) {
        throw ValidationError("corrupt_labels: ratio outside [0,1]");
    }
    const int n = static_cast<int>(data.size());
    const int k = static_cast<int>(
        std::floor(spec.ratio * static_cast<double>(n) + 1e-12));

    Dataset out = data;
    out.corruption_flags.assign(data.size(), 0);
    Rng rng(spec.seed);
    for (int idx : rng.sample_without_replacement(n, k)) {
        const auto r = static_cast<std::size_t>(idx);
        const std::size_t true_cls = data.class_of(r);
        // uniform over the other c−1 classes
        std::size_t new_cls = rng.below(c - 1);
        if (new_cls >= true_cls) ++new_cls;
        for (std::size_t j = 0; j < c; ++j) out.labels.at(r, j) = 0.0;
        out.labels.at(r, new_cls) = 1.0;
        out.corruption_flags[r] = 1;
    }
    return out;
}

Dataset corrupt_features(const Dataset& data, const CorruptionSpec& spec) {
    data.validate();
    if (!(spec.sigma > 0.0)) {
        throw ValidationError("corrupt_features: sigma must be > 0");
    }
    if (data.role != SplitRole::Train) {
        throw ValidationError("corrupt_features: only the training split may be corrupted");
    }
    Dataset out = data;
    Rng rng(spec.seed);
    for (double& v : out.features.flat()) v += rng.normal(0.0, spec.sigma);
    return out;
}

std::vector<CurvePoint> removal_curve(const std::vector<double>& values,
                                      const Dataset& data, CurveEnd end,
                                      const std::vector<double>& fractions,
                                      const MarginalEvaluator& evaluator) {
    if (values.size() != data.size()) {
        throw ShapeError("removal_curve: values length vs dataset size");
    }
    check_fraction_grid(fractions, 0.9);
    std::vector<int> order = ascending_by_value(values);
    if (end == CurveEnd::Most) std::reverse(order.begin(), order.end());

    const std::size_t n = values.size();
    std::vector<CurvePoint> curve;
    curve.reserve(fractions.size());
    for (double f : fractions) {
        const auto remove =
            static_cast<std::size_t>(std::lround(f * static_cast<double>(n)));
        std::vector<int> keep(order.begin() + static_cast<std::ptrdiff_t>(remove),
                              order.end());
        std::sort(keep.begin(), keep.end());
        CurvePoint point{f, 0.0, keep.empty()};
        if (!point.skipped) point.value = evaluator.evaluate(data, keep);
        curve.push_back(point);
    }
    return curve;
}

std::vector<CurvePoint> discovery_curve(const std::vector<double>& values,
                                        const std::vector<std::uint8_t>& flags,
                                        const std::vector<double>& fractions) {
    if (flags.size() != values.size()) {
        throw ShapeError("discovery_curve: flags length " + std::to_string(flags.size()) +
                         " vs values length " + std::to_string(values.size()));
    }
    check_fraction_grid(fractions, 1.0);
    const double total = std::accumulate(flags.begin(), flags.end(), 0.0);
    if (total == 0.0) {
        throw ValidationError("discovery_curve: no corrupted samples");
    }
    const std::vector<int> order = ascending_by_value(values);
    const std::size_t n = values.size();

    std::vector<CurvePoint> curve;
    curve.reserve(fractions.size());
    for (double f : fractions) {
        const auto k = static_cast<std::size_t>(
            std::floor(f * static_cast<double>(n) + 1e-9));
        double found = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            found += flags[static_cast<std::size_t>(order[i])];
        }
        curve.push_back({f, found / total, false});
    }
    return curve;
}

RobustLearningReport robust_learning_eval(const Dataset& train,
                                          const Dataset& validation,
                                          const Dataset& test,
                                          const DvrlConfig& config) {
    if (train.corruption_flags.empty()) {
        throw ValidationError("robust_learning_eval: corruption flags required on train");
    }
    const Metric metric = task_metric(test);
    const int iters = plain_iterations(config);
    RobustLearningReport report;

    const ValuationResult result = train_dvrl(train, validation, config);
    report.dvrl = result.final_predictor.evaluate(test, metric);

    report.baseline =
        train_plain(train, config, config.seed + 1, iters).evaluate(test, metric);

    std::vector<int> clean;
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (train.corruption_flags[i] == 0) clean.push_back(static_cast<int>(i));
    }
    if (!clean.empty()) {
        report.clean_only = train_plain(train.select(clean), config, config.seed + 2,
                                        iters)
                                .evaluate(test, metric);
    }

    report.validation_only =
        train_plain(validation, config, config.seed + 3, iters).evaluate(test, metric);
    return report;
}

DomainAdaptationReport domain_adaptation_eval(const Dataset& source,
                                              const Dataset& target_validation,
                                              const Dataset& target_test,
                                              const DvrlConfig& config) {
    if (source.feature_dim() != target_validation.feature_dim() ||
        source.feature_dim() != target_test.feature_dim() ||
        source.label_dim() != target_validation.label_dim()) {
        throw ValidationError("domain_adaptation_eval: feature/label schema mismatch");
    }
    const Metric metric = task_metric(target_test);
    DomainAdaptationReport report;

    const ValuationResult result = train_dvrl(source, target_validation, config);
    report.dvrl = result.final_predictor.evaluate(target_test, metric);
    report.baseline = train_plain(source, config, config.seed + 1,
                                  plain_iterations(config))
                          .evaluate(target_test, metric);

    if (!source.domain_tags.empty()) {
        std::vector<int> tags(source.domain_tags.begin(), source.domain_tags.end());
        std::sort(tags.begin(), tags.end());
        tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
        for (int tag : tags) {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t i = 0; i < source.size(); ++i) {
                if (source.domain_tags[i] == tag) {
                    sum += result.values[i];
                    ++count;
                }
            }
            report.mean_value_by_domain.emplace_back(
                tag, sum / static_cast<double>(count));
        }
    }
    return report;
}

std::vector<SweepEntry> validation_size_sweep(const Dataset& train,
                                              const Dataset& validation_pool,
                                              const std::vector<int>& sizes,
                                              const DvrlConfig& config,
                                              const std::vector<double>& fractions) {
    if (train.corruption_flags.empty()) {
        throw ValidationError("validation_size_sweep: corruption flags required on train");
    }
    const int pool = static_cast<int>(validation_pool.size());
    std::vector<SweepEntry> entries;
    for (int size : sizes) {
        if (size < 1 || size > pool) {
            throw ValidationError("validation_size_sweep: size " + std::to_string(size) +
                                  " outside [1, " + std::to_string(pool) + "]");
        }
        Dataset validation = validation_pool;
        if (size < pool) {
            Rng rng(config.seed ^ (0x5eedULL + static_cast<std::uint64_t>(size)));
            auto idx = rng.sample_without_replacement(pool, size);
            std::sort(idx.begin(), idx.end());
            validation = validation_pool.select(idx);
        }
        const ValuationResult result = train_dvrl(train, validation, config);
        entries.push_back(
            {size, discovery_curve(result.values, train.corruption_flags, fractions)});
    }
    return entries;
}

} // namespace dvrl
