#include "dvrl/dataset.hpp"

#include <cmath>
#include <string>

namespace dvrl {

std::size_t Dataset::class_of(std::size_t row) const {
    auto r = labels.row(row);
    std::size_t best = 0;
    for (std::size_t c = 1; c < r.size(); ++c) {
        if (r[c] > r[best]) best = c;
    }
    return best;
}

void Dataset::validate() const {
    if (features.rows() != labels.rows()) {
        throw ShapeError("Dataset: " + std::to_string(features.rows()) +
                         " feature rows vs " + std::to_string(labels.rows()) +
                         " label rows");
    }
    if (task == TaskKind::Classification) {
        for (std::size_t r = 0; r < labels.rows(); ++r) {
            double sum = 0.0;
            int ones = 0;
            for (double v : labels.row(r)) {
                if (v != 0.0 && v != 1.0) {
                    throw ValidationError("Dataset: label row " + std::to_string(r) +
                                          " is not one-hot");
                }
                if (v == 1.0) ++ones;
                sum += v;
            }
            if (ones != 1 || sum != 1.0) {
                throw ValidationError("Dataset: label row " + std::to_string(r) +
                                      " is not one-hot");
            }
        }
    }
    if (!corruption_flags.empty() && corruption_flags.size() != size()) {
        throw ShapeError("Dataset: corruption flags cover " +
                         std::to_string(corruption_flags.size()) + " of " +
                         std::to_string(size()) + " rows");
    }
    if (!domain_tags.empty() && domain_tags.size() != size()) {
        throw ShapeError("Dataset: domain tags cover " +
                         std::to_string(domain_tags.size()) + " of " +
                         std::to_string(size()) + " rows");
    }
}

Dataset Dataset::select(std::span<const int> indices) const {
    Dataset out;
    out.features = features.select_rows(indices);
    out.labels = labels.select_rows(indices);
    out.task = task;
    out.role = role;
    if (!corruption_flags.empty()) {
        out.corruption_flags.reserve(indices.size());
        for (int i : indices) {
            out.corruption_flags.push_back(corruption_flags[static_cast<std::size_t>(i)]);
        }
    }
    if (!domain_tags.empty()) {
        out.domain_tags.reserve(indices.size());
        for (int i : indices) {
            out.domain_tags.push_back(domain_tags[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

} // namespace dvrl
