#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "dvrl/baselines.hpp"
#include "dvrl/experiments.hpp"

using namespace dvrl;

namespace {

// Characteristic-function game keyed only by subset membership; lets us test
// the Shapley machinery against hand-computed tables.
MarginalEvaluator game(std::function<double(const std::vector<int>&)> v,
                       double empty = 0.0) {
    return {[v = std::move(v)](const Dataset&, const std::vector<int>& subset) {
                return v(subset);
            },
            empty};
}

bool contains(const std::vector<int>& s, int i) {
    return std::find(s.begin(), s.end(), i) != s.end();
}

} // namespace

TEST_CASE("random values are uniform, seeded, and bounded") {
    const auto a = random_values(10000, 5);
    const auto b = random_values(10000, 5);
    const auto c = random_values(10000, 6);
    CHECK(a == b);
    CHECK(a != c);
    double mean = 0.0;
    for (double v : a) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        mean += v;
    }
    mean /= static_cast<double>(a.size());
    CHECK(std::abs(mean - 0.5) < 0.015);
    CHECK_THROWS_AS(random_values(0, 1), ValidationError);
}

TEST_CASE("LOO equals scripted retrain-and-diff bit for bit") {
    const auto data = make_blobs(5, 2, 2.0, SplitRole::Train, 1);
    const auto validation = make_blobs(20, 2, 2.0, SplitRole::Validation, 2);

    PredictorConfig cfg;
    const auto evaluator =
        MarginalEvaluator::retraining(cfg, Metric::Accuracy, validation, 40, 4, 9);

    const auto values = loo_values(data, evaluator);
    std::vector<int> all{0, 1, 2, 3, 4};
    const double full = evaluator.evaluate(data, all);
    for (int i = 0; i < 5; ++i) {
        std::vector<int> rest;
        for (int j = 0; j < 5; ++j) {
            if (j != i) rest.push_back(j);
        }
        CHECK(values[static_cast<std::size_t>(i)] ==
              full - evaluator.evaluate(data, rest));
    }
}

TEST_CASE("LOO gives duplicated rows identical values") {
    auto data = make_blobs(5, 2, 2.0, SplitRole::Train, 3);
    for (std::size_t j = 0; j < 2; ++j) {
        data.features.at(1, j) = data.features.at(0, j);
        data.labels.at(1, j) = data.labels.at(0, j);
    }
    const auto validation = make_blobs(30, 2, 2.0, SplitRole::Validation, 4);
    const auto values =
        loo_values(data, MarginalEvaluator::nearest_centroid(validation));
    CHECK(values[0] == values[1]);
}

TEST_CASE("LOO under a constant evaluator is all zeros") {
    const auto data = make_blobs(4, 2, 2.0, SplitRole::Train, 5);
    const auto values = loo_values(data, game([](const std::vector<int>&) {
                                       return 0.75;
                                   }));
    for (double v : values) CHECK(v == 0.0);
}

TEST_CASE("LOO requires at least two rows") {
    const auto data = make_blobs(1, 2, 2.0, SplitRole::Train, 6);
    CHECK_THROWS_AS(
        loo_values(data, game([](const std::vector<int>&) { return 0.0; })),
        ValidationError);
}

TEST_CASE("exact Shapley reproduces a hand-computed 3-player table") {
    const auto data = make_blobs(3, 2, 2.0, SplitRole::Train, 7);
    // v{}=0 v{0}=1 v{1}=1 v{2}=0 v{01}=3 v{02}=1 v{12}=2 v{012}=4
    const auto evaluator = game([](const std::vector<int>& s) -> double {
        const bool a = contains(s, 0), b = contains(s, 1), c = contains(s, 2);
        if (a && b && c) return 4.0;
        if (a && b) return 3.0;
        if (a && c) return 1.0;
        if (b && c) return 2.0;
        if (a) return 1.0;
        if (b) return 1.0;
        return 0.0;
    });
    const auto values = shapley_exact(data, evaluator);
    CHECK(values[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(values[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(values[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exact Shapley of an additive game returns the per-player weights") {
    const std::vector<double> a{0.4, -0.2, 0.3, 0.1, 0.25};
    const auto data = make_blobs(5, 2, 2.0, SplitRole::Train, 8);
    const auto evaluator = game([&](const std::vector<int>& s) {
        double v = 0.0;
        for (int i : s) v += a[static_cast<std::size_t>(i)];
        return v;
    });
    const auto values = shapley_exact(data, evaluator);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(values[i] == doctest::Approx(a[i]).epsilon(1e-12));
    }
}

TEST_CASE("exact Shapley: symmetry, null player, and efficiency") {
    const auto data = make_blobs(4, 2, 2.0, SplitRole::Train, 9);
    // v(S) = |S ∩ {0,1}|² : players 0 and 1 symmetric, players 2 and 3 null
    const auto evaluator = game([](const std::vector<int>& s) {
        double k = 0.0;
        if (contains(s, 0)) k += 1.0;
        if (contains(s, 1)) k += 1.0;
        return k * k;
    });
    const auto values = shapley_exact(data, evaluator);
    CHECK(values[0] == doctest::Approx(values[1]).epsilon(1e-12));
    CHECK(values[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(values[3] == doctest::Approx(0.0).epsilon(1e-12));
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    CHECK(total == doctest::Approx(4.0).epsilon(1e-9)); // v(N) − v(∅)
}

TEST_CASE("exact Shapley refuses n > 12 and points at the sampler") {
    const auto data = make_blobs(13, 2, 2.0, SplitRole::Train, 10);
    CHECK_THROWS_WITH_AS(
        shapley_exact(data, game([](const std::vector<int>&) { return 0.0; })),
        doctest::Contains("shapley_tmc"), ValidationError);
}

TEST_CASE("TMC on an additive game is exact with a single permutation") {
    const std::vector<double> a{0.4, -0.2, 0.3};
    const auto data = make_blobs(3, 2, 2.0, SplitRole::Train, 11);
    const auto evaluator = game([&](const std::vector<int>& s) {
        double v = 0.0;
        for (int i : s) v += a[static_cast<std::size_t>(i)];
        return v;
    });
    const auto values = shapley_tmc(data, evaluator, 1, 0.0, 21);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(values[i] == doctest::Approx(a[i]).epsilon(1e-12));
    }
}

TEST_CASE("TMC with a tolerance covering the whole game truncates to zeros") {
    const auto data = make_blobs(4, 2, 2.0, SplitRole::Train, 12);
    const auto evaluator = game(
        [](const std::vector<int>& s) { return static_cast<double>(s.size()); });
    // |v(N) − v(∅)| = 4, tolerance 10 → truncated before the first marginal
    const auto values = shapley_tmc(data, evaluator, 5, 10.0, 22);
    for (double v : values) CHECK(v == 0.0);
}

TEST_CASE("TMC converges to the exact values as the budget grows") {
    const auto data = make_blobs(3, 2, 2.0, SplitRole::Train, 13);
    const auto evaluator = game([](const std::vector<int>& s) -> double {
        const bool a = contains(s, 0), b = contains(s, 1), c = contains(s, 2);
        if (a && b && c) return 4.0;
        if (a && b) return 3.0;
        if (a && c) return 1.0;
        if (b && c) return 2.0;
        if (a) return 1.0;
        if (b) return 1.0;
        return 0.0;
    });
    const std::vector<double> exact{1.5, 2.0, 0.5};
    auto max_err = [&](int perms) {
        const auto v = shapley_tmc(data, evaluator, perms, 0.0, 23);
        double err = 0.0;
        for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::abs(v[i] - exact[i]));
        return err;
    };
    const double coarse = max_err(30);
    const double fine = max_err(6000);
    CHECK(fine <= coarse + 1e-12);
    CHECK(fine < 0.05);
}

TEST_CASE("TMC is seeded-reproducible and seed-sensitive") {
    const auto data = make_blobs(6, 2, 2.0, SplitRole::Train, 14);
    const auto validation = make_blobs(30, 2, 2.0, SplitRole::Validation, 15);
    const auto evaluator = MarginalEvaluator::nearest_centroid(validation);
    const auto a = shapley_tmc(data, evaluator, 20, 0.0, 31);
    const auto b = shapley_tmc(data, evaluator, 20, 0.0, 31);
    const auto c = shapley_tmc(data, evaluator, 20, 0.0, 32);
    CHECK(a == b);
    CHECK(a != c);
    CHECK_THROWS_AS(shapley_tmc(data, evaluator, 0, 0.0, 31), ValidationError);
}

TEST_CASE("nearest-centroid empty coalition scores majority prevalence") {
    Dataset validation;
    validation.features = DenseMatrix::from_rows({{0.0}, {1.0}, {2.0}, {3.0}});
    validation.labels =
        DenseMatrix::from_rows({{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    validation.task = TaskKind::Classification;
    validation.role = SplitRole::Validation;
    const auto evaluator = MarginalEvaluator::nearest_centroid(validation);
    CHECK(evaluator.empty_score() == doctest::Approx(0.75));
    CHECK(evaluator.evaluate(Dataset{}, {}) == doctest::Approx(0.75));
}

TEST_CASE("nearest-centroid separates clean blobs almost perfectly") {
    const auto train = make_blobs(100, 2, 6.0, SplitRole::Train, 16);
    const auto validation = make_blobs(100, 2, 6.0, SplitRole::Validation, 17);
    const auto evaluator = MarginalEvaluator::nearest_centroid(validation);
    std::vector<int> all(100);
    std::iota(all.begin(), all.end(), 0);
    CHECK(evaluator.evaluate(train, all) > 0.95);
}
