#pragma once
// Evaluation protocols: noise injection, remove-high/low and discovery
// curves, robust learning, domain adaptation, validation-size sweeps, and
// synthetic benchmark generators.

#include <cstdint>
#include <vector>

#include "dvrl/baselines.hpp"
#include "dvrl/dataset.hpp"
#include "dvrl/engine.hpp"

namespace dvrl {

enum class CorruptionKind : std::uint8_t { LabelFlip, GaussianFeature };

struct CorruptionSpec {
    CorruptionKind kind = CorruptionKind::LabelFlip;
    double ratio = 0.2;  // label flips: fraction of rows, exact count
    double sigma = 0.0;  // feature noise stddev
    std::uint64_t seed = 0;
};

enum class CurveEnd : std::uint8_t { Most, Least };

struct CurvePoint {
    double fraction = 0.0;
    double value = 0.0;
    bool skipped = false; // removal left an empty training set
};

// Flips exactly floor(ratio·N) uniformly chosen rows to a uniformly random
// *different* class; flags recorded.
Dataset corrupt_labels(const Dataset& data, const CorruptionSpec& spec);

// Adds i.i.d. N(0, σ²) to every feature entry; training split only.
Dataset corrupt_features(const Dataset& data, const CorruptionSpec& spec);

// Retrains for each fraction after dropping the top/bottom fraction by value;
// value ties broken by original index.
std::vector<CurvePoint> removal_curve(const std::vector<double>& values,
                                      const Dataset& data, CurveEnd end,
                                      const std::vector<double>& fractions,
                                      const MarginalEvaluator& evaluator);

// Fraction of corrupted samples found among the bottom-f rows by value.
std::vector<CurvePoint> discovery_curve(const std::vector<double>& values,
                                        const std::vector<std::uint8_t>& flags,
                                        const std::vector<double>& fractions);

struct RobustLearningReport {
    double dvrl = 0.0;
    double baseline = 0.0;
    double clean_only = 0.0;
    double validation_only = 0.0;
};

RobustLearningReport robust_learning_eval(const Dataset& train,
                                          const Dataset& validation,
                                          const Dataset& test,
                                          const DvrlConfig& config);

struct DomainAdaptationReport {
    double dvrl = 0.0;
    double baseline = 0.0;
    // mean data value per domain tag, when source rows carry tags
    std::vector<std::pair<int, double>> mean_value_by_domain;
};

DomainAdaptationReport domain_adaptation_eval(const Dataset& source,
                                              const Dataset& target_validation,
                                              const Dataset& target_test,
                                              const DvrlConfig& config);

struct SweepEntry {
    int validation_size = 0;
    std::vector<CurvePoint> discovery;
};

std::vector<SweepEntry> validation_size_sweep(const Dataset& train,
                                              const Dataset& validation_pool,
                                              const std::vector<int>& sizes,
                                              const DvrlConfig& config,
                                              const std::vector<double>& fractions);

// Two-class Gaussian blob benchmark data.
Dataset make_blobs(std::size_t n, std::size_t dim, double separation, SplitRole role,
                   std::uint64_t seed);

// Two-cluster covariate-shift source: `off_target_fraction` of rows drawn from
// an off-target cluster pair (domain tag 0), the rest from the target cluster
// pair (tag 1).
Dataset make_shifted_source(std::size_t n, std::size_t dim, double separation,
                            double off_target_fraction, std::uint64_t seed);

} // namespace dvrl
