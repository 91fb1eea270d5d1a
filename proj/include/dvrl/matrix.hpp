#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dvrl/common.hpp"

namespace dvrl {

// Row-major dense matrix of doubles. The numeric workhorse for feature
// batches, layer weights, and activations.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> flat() { return {data_.data(), data_.size()}; }
    std::span<const double> flat() const { return {data_.data(), data_.size()}; }

    void fill(double v) { data_.assign(data_.size(), v); }
    bool all_finite() const;
    // Throws ValidationError naming `context` when a non-finite entry exists.
    void ensure_finite(const char* context) const;

    // Gather a row subset into a new matrix.
    DenseMatrix select_rows(std::span<const int> indices) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// out = a * b, (m×k)·(k×n). Inner loop runs on the dispatched kernels.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// out = a * b^T, (m×k)·(n×k)^T.
DenseMatrix matmul_transpose_b(const DenseMatrix& a, const DenseMatrix& b);
// out = a^T * b, (m×k)^T·(m×n).
DenseMatrix matmul_transpose_a(const DenseMatrix& a, const DenseMatrix& b);

} // namespace dvrl
