#pragma once

#include <cstdint>
#include <vector>

#include "dvrl/matrix.hpp"

namespace dvrl {

enum class LossKind : std::uint8_t { Mse, CrossEntropy };

// Clamp applied to probabilities inside cross-entropy logs only.
inline constexpr double kCrossEntropyClamp = 1e-12;

// Per-sample losses. MSE uses the mean-over-outputs convention. Cross-entropy
// expects probability rows for predictions and one-hot (or probability rows)
// for targets; rows that do not sum to 1 within 1e-6 are rejected.
std::vector<double> loss_eval(LossKind kind, const DenseMatrix& predictions,
                              const DenseMatrix& targets);

// d(per-sample loss)/d(prediction), same shape as predictions. For MSE this is
// 2(p−t)/cols; for cross-entropy −t/clamp(p).
DenseMatrix loss_grad(LossKind kind, const DenseMatrix& predictions,
                      const DenseMatrix& targets);

double mean(const std::vector<double>& v);

} // namespace dvrl
