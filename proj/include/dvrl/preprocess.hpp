#pragma once
// Train-fitted preprocessing: standardize numeric columns (population std),
// one-hot categoricals in vocabulary order, one-hot labels for
// classification. Constant numeric columns are dropped with a warning;
// unseen categorical values are a hard error.

#include <string>
#include <vector>

#include "dvrl/csv.hpp"
#include "dvrl/dataset.hpp"

namespace dvrl {

struct NumericColumnSpec {
    std::string name;
    std::size_t column = 0;
    double mean = 0.0;
    double std = 1.0;
    bool dropped = false;
};

struct CategoricalColumnSpec {
    std::string name;
    std::size_t column = 0;
    std::vector<std::string> vocabulary; // sorted; defines one-hot order
};

struct PreprocessSpec {
    TaskKind task = TaskKind::Classification;
    std::vector<NumericColumnSpec> numeric;
    std::vector<CategoricalColumnSpec> categorical;
    std::vector<std::string> label_vocabulary; // classification only
    std::vector<std::string> warnings;

    // Feature width after drops and one-hot expansion.
    std::size_t feature_dim() const;
};

// Fit on the train table. Throws if the feature set is empty after drops.
PreprocessSpec fit_preprocess(const RawTable& train, TaskKind task);

// Apply a fitted spec; schema must match the fitting table.
Dataset apply_preprocess(const PreprocessSpec& spec, const RawTable& table,
                         SplitRole role);

} // namespace dvrl
