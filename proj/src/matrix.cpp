#include "dvrl/matrix.hpp"

#include <cmath>
#include <string>

#include "dvrl/kernels.hpp"

namespace dvrl {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("DenseMatrix: data length " + std::to_string(data_.size()) +
                         " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) {
            throw ShapeError("from_rows: ragged row " + std::to_string(r));
        }
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void DenseMatrix::ensure_finite(const char* context) const {
    if (!all_finite()) {
        throw ValidationError(std::string("non-finite entry in ") + context);
    }
}

DenseMatrix DenseMatrix::select_rows(std::span<const int> indices) const {
    DenseMatrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto r = static_cast<std::size_t>(indices[i]);
        if (r >= rows_) throw ShapeError("select_rows: index out of range");
        auto src = row(r);
        auto dst = out.row(i);
        for (std::size_t c = 0; c < cols_; ++c) dst[c] = src[c];
    }
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: " + std::to_string(a.cols()) +
                         " != " + std::to_string(b.rows()));
    }
    const auto& k = kernels::ops();
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ai = a.row(i);
        auto oi = out.row(i);
        for (std::size_t p = 0; p < a.cols(); ++p) {
            k.axpy(ai[p], b.row(p).data(), oi.data(), b.cols());
        }
    }
    return out;
}

DenseMatrix matmul_transpose_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols()) {
        throw ShapeError("matmul_transpose_b: " + std::to_string(a.cols()) +
                         " != " + std::to_string(b.cols()));
    }
    const auto& k = kernels::ops();
    DenseMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ai = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            out.at(i, j) = k.dot(ai.data(), b.row(j).data(), a.cols());
        }
    }
    return out;
}

DenseMatrix matmul_transpose_a(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw ShapeError("matmul_transpose_a: " + std::to_string(a.rows()) +
                         " != " + std::to_string(b.rows()));
    }
    const auto& k = kernels::ops();
    DenseMatrix out(a.cols(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto ar = a.row(r);
        auto br = b.row(r);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            k.axpy(ar[i], br.data(), out.row(i).data(), b.cols());
        }
    }
    return out;
}

} // namespace dvrl
