#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dvrl/matrix.hpp"

namespace dvrl {

enum class TaskKind : std::uint8_t { Classification, Regression };
enum class SplitRole : std::uint8_t { Train, Validation, Test };

// Feature matrix + labels + split role. Classification labels are one-hot
// rows; regression labels are a single column.
struct Dataset {
    DenseMatrix features; // N × d
    DenseMatrix labels;   // N × c (one-hot) or N × 1
    TaskKind task = TaskKind::Classification;
    SplitRole role = SplitRole::Train;
    // Optional per-sample metadata; empty or size N.
    std::vector<std::uint8_t> corruption_flags;
    std::vector<int> domain_tags;

    std::size_t size() const { return features.rows(); }
    std::size_t feature_dim() const { return features.cols(); }
    std::size_t label_dim() const { return labels.cols(); }
    std::size_t num_classes() const { return labels.cols(); }

    // argmax of the one-hot row (classification only).
    std::size_t class_of(std::size_t row) const;

    // Checks row counts, one-hot validity, metadata coverage.
    void validate() const;

    // Row subset, carrying metadata along.
    Dataset select(std::span<const int> indices) const;
};

} // namespace dvrl
