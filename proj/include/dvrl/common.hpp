#pragma once

#include <stdexcept>
#include <string>

namespace dvrl {

// Dimension / length mismatches between tensors, batches, selections.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Bad values: non-finite numbers, invalid probabilities, malformed configs.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dvrl
