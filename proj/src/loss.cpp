#include "dvrl/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dvrl {

namespace {

void check_shapes(const DenseMatrix& predictions, const DenseMatrix& targets) {
    if (predictions.rows() != targets.rows() || predictions.cols() != targets.cols()) {
        throw ShapeError("loss: predictions " + std::to_string(predictions.rows()) + "x" +
                         std::to_string(predictions.cols()) + " vs targets " +
                         std::to_string(targets.rows()) + "x" +
                         std::to_string(targets.cols()));
    }
}

void check_probability_rows(const DenseMatrix& m, const char* what) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double sum = 0.0;
        for (double v : m.row(r)) {
            if (v < -1e-9 || v > 1.0 + 1e-9) {
                throw ValidationError(std::string(what) + " row " + std::to_string(r) +
                                      ": entry outside [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-6) {
            throw ValidationError(std::string(what) + " row " + std::to_string(r) +
                                  ": sums to " + std::to_string(sum));
        }
    }
}

double clamp_p(double p) {
    return std::clamp(p, kCrossEntropyClamp, 1.0 - kCrossEntropyClamp);
}

} // namespace

std::vector<double> loss_eval(LossKind kind, const DenseMatrix& predictions,
                              const DenseMatrix& targets) {
    check_shapes(predictions, targets);
    std::vector<double> losses(predictions.rows(), 0.0);
    if (kind == LossKind::Mse) {
        for (std::size_t r = 0; r < predictions.rows(); ++r) {
            auto p = predictions.row(r);
            auto t = targets.row(r);
            double acc = 0.0;
            for (std::size_t c = 0; c < p.size(); ++c) {
                const double d = p[c] - t[c];
                acc += d * d;
            }
            losses[r] = acc / static_cast<double>(p.size());
        }
    } else {
        check_probability_rows(predictions, "cross-entropy predictions");
        check_probability_rows(targets, "cross-entropy targets");
        for (std::size_t r = 0; r < predictions.rows(); ++r) {
            auto p = predictions.row(r);
            auto t = targets.row(r);
            double acc = 0.0;
            for (std::size_t c = 0; c < p.size(); ++c) {
                if (t[c] != 0.0) acc -= t[c] * std::log(clamp_p(p[c]));
            }
            losses[r] = acc;
        }
    }
    return losses;
}

DenseMatrix loss_grad(LossKind kind, const DenseMatrix& predictions,
                      const DenseMatrix& targets) {
    check_shapes(predictions, targets);
    DenseMatrix g(predictions.rows(), predictions.cols());
    if (kind == LossKind::Mse) {
        const double inv = 2.0 / static_cast<double>(predictions.cols());
        for (std::size_t i = 0; i < g.size(); ++i) {
            g.flat()[i] = inv * (predictions.flat()[i] - targets.flat()[i]);
        }
    } else {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double t = targets.flat()[i];
            g.flat()[i] = t == 0.0 ? 0.0 : -t / clamp_p(predictions.flat()[i]);
        }
    }
    return g;
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

} // namespace dvrl
