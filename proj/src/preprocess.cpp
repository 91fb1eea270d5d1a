#include "dvrl/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace dvrl {

namespace {

double parse_double(const std::string& s) { return std::stod(s); }

} // namespace

std::size_t PreprocessSpec::feature_dim() const {
    std::size_t dim = 0;
    for (const auto& col : numeric) {
        if (!col.dropped) ++dim;
    }
    for (const auto& col : categorical) dim += col.vocabulary.size();
    return dim;
}

PreprocessSpec fit_preprocess(const RawTable& train, TaskKind task) {
    PreprocessSpec spec;
    spec.task = task;

    for (std::size_t c = 0; c < train.columns.size(); ++c) {
        if (c == train.label_index) continue;
        if (train.categorical[c]) {
            std::set<std::string> vocab;
            for (const auto& row : train.cells) vocab.insert(row[c]);
            spec.categorical.push_back(
                {train.columns[c], c, {vocab.begin(), vocab.end()}});
        } else {
            double mean = 0.0;
            for (const auto& row : train.cells) mean += parse_double(row[c]);
            mean /= static_cast<double>(train.rows());
            double var = 0.0;
            for (const auto& row : train.cells) {
                const double d = parse_double(row[c]) - mean;
                var += d * d;
            }
            var /= static_cast<double>(train.rows()); // population convention
            NumericColumnSpec col{train.columns[c], c, mean, std::sqrt(var), false};
            if (col.std == 0.0) {
                col.dropped = true;
                spec.warnings.push_back("dropped constant numeric column '" +
                                        col.name + "'");
            }
            spec.numeric.push_back(col);
        }
    }

    if (task == TaskKind::Classification) {
        std::set<std::string> vocab;
        for (const auto& row : train.cells) vocab.insert(row[train.label_index]);
        spec.label_vocabulary.assign(vocab.begin(), vocab.end());
        if (spec.label_vocabulary.size() < 2) {
            throw ValidationError("fit_preprocess: fewer than 2 label classes");
        }
    }

    if (spec.feature_dim() == 0) {
        throw ValidationError("fit_preprocess: no usable feature columns remain");
    }
    return spec;
}

Dataset apply_preprocess(const PreprocessSpec& spec, const RawTable& table,
                         SplitRole role) {
    const std::size_t n = table.rows();
    Dataset out;
    out.task = spec.task;
    out.role = role;
    out.features = DenseMatrix(n, spec.feature_dim());
    out.labels = DenseMatrix(
        n, spec.task == TaskKind::Classification ? spec.label_vocabulary.size() : 1);

    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = table.cells[r];
        std::size_t f = 0;
        for (const auto& col : spec.numeric) {
            if (col.dropped) continue;
            out.features.at(r, f++) = (parse_double(row[col.column]) - col.mean) / col.std;
        }
        for (const auto& col : spec.categorical) {
            const auto& value = row[col.column];
            const auto it = std::lower_bound(col.vocabulary.begin(),
                                             col.vocabulary.end(), value);
            if (it == col.vocabulary.end() || *it != value) {
                throw ValidationError("apply_preprocess: value '" + value +
                                      "' in column '" + col.name +
                                      "' not in the fitted vocabulary");
            }
            out.features.at(
                r, f + static_cast<std::size_t>(it - col.vocabulary.begin())) = 1.0;
            f += col.vocabulary.size();
        }
        const auto& label = row[table.label_index];
        if (spec.task == TaskKind::Classification) {
            const auto it = std::lower_bound(spec.label_vocabulary.begin(),
                                             spec.label_vocabulary.end(), label);
            if (it == spec.label_vocabulary.end() || *it != label) {
                throw ValidationError("apply_preprocess: label '" + label +
                                      "' not in the fitted label vocabulary");
            }
            out.labels.at(r, static_cast<std::size_t>(
                                 it - spec.label_vocabulary.begin())) = 1.0;
        } else {
            out.labels.at(r, 0) = parse_double(label);
        }
    }
    return out;
}

} // namespace dvrl
