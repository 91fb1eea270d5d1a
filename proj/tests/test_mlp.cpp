#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dvrl/loss.hpp"
#include "dvrl/mlp.hpp"
#include "dvrl/rng.hpp"

using namespace dvrl;

namespace {

MlpParams single_layer(DenseMatrix weight, std::vector<double> bias,
                       OutputActivation act) {
    MlpParams p;
    p.layers.push_back({std::move(weight), std::move(bias)});
    p.output = act;
    return p;
}

// Central finite differences of `loss(params)`; the independent oracle for
// every analytic gradient below.
template <typename LossFn>
MlpGrads finite_difference(MlpParams params, LossFn loss, double h = 1e-5) {
    MlpGrads fd = MlpGrads::zeros_like(params);
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        auto probe = [&](double* p, double* out) {
            const double orig = *p;
            *p = orig + h;
            const double up = loss(params);
            *p = orig - h;
            const double down = loss(params);
            *p = orig;
            *out = (up - down) / (2.0 * h);
        };
        auto& layer = params.layers[li];
        for (std::size_t i = 0; i < layer.weight.size(); ++i) {
            probe(&layer.weight.flat()[i], &fd.layers[li].weight.flat()[i]);
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
            probe(&layer.bias[i], &fd.layers[li].bias[i]);
        }
    }
    return fd;
}

double max_relative_error(const MlpGrads& a, const MlpGrads& b) {
    double worst = 0.0;
    for (std::size_t li = 0; li < a.layers.size(); ++li) {
        auto cmp = [&](double x, double y) {
            const double scale = std::max({std::abs(x), std::abs(y), 1e-6});
            worst = std::max(worst, std::abs(x - y) / scale);
        };
        for (std::size_t i = 0; i < a.layers[li].weight.size(); ++i) {
            cmp(a.layers[li].weight.flat()[i], b.layers[li].weight.flat()[i]);
        }
        for (std::size_t i = 0; i < a.layers[li].bias.size(); ++i) {
            cmp(a.layers[li].bias[i], b.layers[li].bias[i]);
        }
    }
    return worst;
}

} // namespace

TEST_CASE("identity single layer passes inputs through") {
    auto p = single_layer(DenseMatrix::identity(2), {0.0, 0.0},
                          OutputActivation::Identity);
    const auto out = mlp_forward(p, DenseMatrix::from_rows({{1.0, 2.0}}));
    CHECK(out.at(0, 0) == 1.0);
    CHECK(out.at(0, 1) == 2.0);
}

TEST_CASE("zero-weight sigmoid layer outputs 0.5 everywhere") {
    auto p = single_layer(DenseMatrix(3, 2), {0.0, 0.0}, OutputActivation::Sigmoid);
    const auto out = mlp_forward(p, DenseMatrix::from_rows({{4.0, -1.0, 7.0}}));
    CHECK(out.at(0, 0) == 0.5);
    CHECK(out.at(0, 1) == 0.5);
}

TEST_CASE("two-layer net matches a straight-line hand evaluation") {
    // layer 0: 2 -> 2 with ReLU; layer 1: 2 -> 1 identity
    MlpParams p;
    p.layers.push_back({DenseMatrix::from_rows({{0.5, -1.0}, {0.25, 0.5}}), {0.1, -0.2}});
    p.layers.push_back({DenseMatrix::from_rows({{2.0}, {-3.0}}), {0.05}});
    p.output = OutputActivation::Identity;

    // input (1, 2): pre0 = (0.5+0.5+0.1, -1+1-0.2) = (1.1, -0.2)
    // relu -> (1.1, 0); out = 2*1.1 - 3*0 + 0.05 = 2.25
    const auto out = mlp_forward(p, DenseMatrix::from_rows({{1.0, 2.0}}));
    CHECK(out.at(0, 0) == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("softmax rows sum to one") {
    Rng rng(3);
    auto p = make_mlp({4, 5, 3}, OutputActivation::Softmax, rng);
    DenseMatrix x(6, 4);
    for (double& v : x.flat()) v = rng.uniform(-3.0, 3.0);
    const auto out = mlp_forward(p, x);
    for (std::size_t r = 0; r < out.rows(); ++r) {
        double sum = 0.0;
        for (double v : out.row(r)) {
            CHECK(v > 0.0);
            sum += v;
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("dimension mismatch names the offending layer") {
    MlpParams p;
    p.layers.push_back({DenseMatrix(2, 3), {0.0, 0.0, 0.0}});
    p.layers.push_back({DenseMatrix(4, 1), {0.0}}); // 3 != 4
    CHECK_THROWS_WITH_AS(mlp_forward(p, DenseMatrix(1, 2)),
                         doctest::Contains("layer 1"), ShapeError);
}

TEST_CASE("zero upstream gradient yields zero parameter gradients") {
    Rng rng(11);
    auto p = make_mlp({3, 4, 2}, OutputActivation::Sigmoid, rng);
    DenseMatrix x(5, 3);
    for (double& v : x.flat()) v = rng.uniform(-1.0, 1.0);
    ForwardCache cache;
    mlp_forward(p, x, &cache);
    const auto grads = mlp_backward(p, cache, DenseMatrix(5, 2));
    for (const auto& layer : grads.layers) {
        for (double g : layer.weight.flat()) CHECK(g == 0.0);
        for (double g : layer.bias) CHECK(g == 0.0);
    }
}

TEST_CASE("scalar one-layer MSE gradient is 2(yhat - y) x") {
    auto p = single_layer(DenseMatrix::from_rows({{0.7}}), {0.2},
                          OutputActivation::Identity);
    const DenseMatrix x = DenseMatrix::from_rows({{3.0}});
    const DenseMatrix target = DenseMatrix::from_rows({{1.0}});

    ForwardCache cache;
    const auto pred = mlp_forward(p, x, &cache); // 0.7*3 + 0.2 = 2.3
    const auto grads = mlp_backward(p, cache, loss_grad(LossKind::Mse, pred, target));
    const double expected = 2.0 * (2.3 - 1.0) * 3.0;
    CHECK(grads.layers[0].weight.at(0, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(grads.layers[0].bias[0] == doctest::Approx(2.0 * (2.3 - 1.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central finite differences across a config grid") {
    const std::vector<std::vector<std::size_t>> configs = {
        {2, 3}, {3, 4, 2}, {4, 8, 8, 3}, {5, 1}};
    const OutputActivation acts[] = {OutputActivation::Identity,
                                     OutputActivation::Sigmoid,
                                     OutputActivation::Softmax};
    Rng rng(99);
    for (const auto& widths : configs) {
        for (auto act : acts) {
            if (act == OutputActivation::Softmax && widths.back() < 2) continue;
            auto p = make_mlp(widths, act, rng);
            DenseMatrix x(3, widths.front());
            for (double& v : x.flat()) v = rng.uniform(-1.0, 1.0);
            DenseMatrix target(3, widths.back());
            for (double& v : target.flat()) v = rng.uniform(0.1, 0.9);

            auto scalar_loss = [&](const MlpParams& params) {
                const auto pred = mlp_forward(params, x);
                double acc = 0.0;
                for (std::size_t i = 0; i < pred.size(); ++i) {
                    const double d = pred.flat()[i] - target.flat()[i];
                    acc += d * d;
                }
                return acc;
            };

            ForwardCache cache;
            const auto pred = mlp_forward(p, x, &cache);
            DenseMatrix upstream(pred.rows(), pred.cols());
            for (std::size_t i = 0; i < pred.size(); ++i) {
                upstream.flat()[i] = 2.0 * (pred.flat()[i] - target.flat()[i]);
            }
            const auto analytic = mlp_backward(p, cache, upstream);
            const auto fd = finite_difference(p, scalar_loss);
            CAPTURE(widths.size());
            CHECK(max_relative_error(analytic, fd) < 1e-4);
        }
    }
}

TEST_CASE("identical seeds give bitwise-identical parameters") {
    Rng a(123);
    Rng b(123);
    auto pa = make_mlp({6, 10, 4}, OutputActivation::Softmax, a);
    auto pb = make_mlp({6, 10, 4}, OutputActivation::Softmax, b);
    for (std::size_t li = 0; li < pa.layers.size(); ++li) {
        for (std::size_t i = 0; i < pa.layers[li].weight.size(); ++i) {
            CHECK(pa.layers[li].weight.flat()[i] == pb.layers[li].weight.flat()[i]);
        }
    }
}
