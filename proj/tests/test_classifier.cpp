#include <doctest.h>

#include <cmath>

#include "quantbench/classifier.hpp"
#include "quantbench/quant_unsup.hpp"
#include "quantbench/rng.hpp"

using namespace quantbench;

namespace {

LabeledDataset two_gaussians(std::size_t n_per_class, double separation,
                             std::uint64_t seed) {
    Rng rng(seed);
    Matrix features(2 * n_per_class, 1);
    std::vector<int> labels(2 * n_per_class);
    for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
        const int y = i < n_per_class ? 0 : 1;
        labels[i] = y;
        features.at(i, 0) = (y == 0 ? 0.0 : separation) + rng.next_gaussian();
    }
    return LabeledDataset(std::move(features), std::move(labels), 2);
}

double train_accuracy(const SoftmaxClassifier& model, const LabeledDataset& data) {
    ScoreMatrix scores = posteriors(model, data.features);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (static_cast<int>(argmax_label(scores.row(i))) == data.labels[i]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

} // namespace

TEST_CASE("analytic gradient matches central finite differences") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5, d = 3, c = 3;
        Matrix features(n, d);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = static_cast<int>(rng.next_below(c));
            for (std::size_t j = 0; j < d; ++j) {
                features.at(i, j) = rng.next_gaussian();
            }
        }
        SoftmaxClassifier model;
        model.weights = Matrix(c, d);
        model.biases.assign(c, 0.0);
        for (double& w : model.weights.data) {
            w = rng.next_gaussian() * 0.5;
        }
        for (double& b : model.biases) {
            b = rng.next_gaussian() * 0.5;
        }

        const double l2 = 0.01;
        LossGrad lg = loss_and_gradient(model, features, labels, l2);
        const double h = 1e-6;
        for (std::size_t k = 0; k < c * d; ++k) {
            SoftmaxClassifier plus = model, minus = model;
            plus.weights.data[k] += h;
            minus.weights.data[k] -= h;
            const double fd = (loss_and_gradient(plus, features, labels, l2).loss -
                               loss_and_gradient(minus, features, labels, l2).loss) /
                              (2 * h);
            const double denom = std::max(std::abs(fd), 1e-6);
            CHECK(std::abs(lg.grad_weights.data[k] - fd) / denom < 1e-4);
        }
        for (std::size_t k = 0; k < c; ++k) {
            SoftmaxClassifier plus = model, minus = model;
            plus.biases[k] += h;
            minus.biases[k] -= h;
            const double fd = (loss_and_gradient(plus, features, labels, l2).loss -
                               loss_and_gradient(minus, features, labels, l2).loss) /
                              (2 * h);
            const double denom = std::max(std::abs(fd), 1e-6);
            CHECK(std::abs(lg.grad_biases[k] - fd) / denom < 1e-4);
        }
    }
}

TEST_CASE("well-separated classes train to high accuracy") {
    LabeledDataset data = two_gaussians(200, 6.0, 17);
    SoftmaxClassifier model = train(data, {30, 0.1, 1e-4, 32, 5});
    CHECK(train_accuracy(model, data) >= 0.95);
}

TEST_CASE("no feature signal yields the empirical prior") {
    Matrix features(100, 1);
    std::vector<int> labels(100);
    for (std::size_t i = 0; i < 100; ++i) {
        features.at(i, 0) = 1.0;        // identical features
        labels[i] = i < 70 ? 0 : 1;     // prior (0.7, 0.3)
    }
    LabeledDataset data(std::move(features), std::move(labels), 2);
    SoftmaxClassifier model = train(data, {200, 0.5, 0.0, 100, 1});
    ScoreMatrix scores = posteriors(model, data.features);
    CHECK(scores.row(0)[0] == doctest::Approx(0.7).epsilon(0.02));
    CHECK(scores.row(99)[0] == doctest::Approx(0.7).epsilon(0.02));
}

TEST_CASE("training is deterministic given the seed") {
    LabeledDataset data = two_gaussians(50, 2.0, 23);
    SoftmaxClassifier a = train(data, {10, 0.1, 1e-4, 16, 99});
    SoftmaxClassifier b = train(data, {10, 0.1, 1e-4, 16, 99});
    CHECK(a.weights.data == b.weights.data);
    CHECK(a.biases == b.biases);
}

TEST_CASE("train rejects degenerate data") {
    Matrix features(5, 1);
    std::vector<int> labels(5, 0);
    LabeledDataset data(std::move(features), std::move(labels), 2);
    CHECK_THROWS_AS(train(data, TrainConfig{}), DegenerateDataError);
}

TEST_CASE("posteriors of the zero model are uniform") {
    SoftmaxClassifier model;
    model.weights = Matrix(3, 2);
    model.biases.assign(3, 0.0);
    ScoreMatrix scores = posteriors(model, Matrix(2, 2, {1.0, -5.0, 100.0, 3.0}));
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(scores.row(i)[k] == doctest::Approx(1.0 / 3).epsilon(1e-12));
        }
    }
}

TEST_CASE("posteriors saturate and stay on the simplex for huge weights") {
    SoftmaxClassifier model;
    model.weights = Matrix(2, 1, {500.0, -500.0});
    model.biases = {0.0, 0.0};
    ScoreMatrix scores = posteriors(model, Matrix(1, 1, {10.0}));
    CHECK(scores.row(0)[0] == doctest::Approx(1.0));
    CHECK(scores.row(0)[1] == doctest::Approx(0.0));
}

TEST_CASE("symmetric 2-class logits give a split posterior") {
    SoftmaxClassifier model;
    model.weights = Matrix(2, 1, {1.0, -1.0});
    model.biases = {0.0, 0.0};
    ScoreMatrix scores = posteriors(model, Matrix(1, 1, {0.0}));
    CHECK(scores.row(0)[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("posteriors checks feature width") {
    SoftmaxClassifier model;
    model.weights = Matrix(2, 2);
    model.biases = {0.0, 0.0};
    CHECK_THROWS_AS(posteriors(model, Matrix(1, 3)), DimensionMismatchError);
}

TEST_CASE("estimate_confusion counts argmax decisions by true class") {
    // 1-D threshold model: predicts class 1 when x > 0
    SoftmaxClassifier model;
    model.weights = Matrix(2, 1, {-1.0, 1.0});
    model.biases = {0.0, 0.0};

    // true class 0: 9 of 10 on the negative side; true class 1: 8 of 10 positive
    Matrix features(20, 1);
    std::vector<int> labels(20);
    for (int i = 0; i < 10; ++i) {
        features.at(i, 0) = i < 9 ? -1.0 : 1.0;
        labels[i] = 0;
    }
    for (int i = 10; i < 20; ++i) {
        features.at(i, 0) = i < 18 ? 1.0 : -1.0;
        labels[i] = 1;
    }
    ConfusionMatrix cm =
        estimate_confusion(model, LabeledDataset(std::move(features), std::move(labels), 2));
    CHECK(cm.count(0, 0) == 9);
    CHECK(cm.count(0, 1) == 1);
    CHECK(cm.count(1, 0) == 2);
    CHECK(cm.count(1, 1) == 8);

    CHECK_THROWS_AS(estimate_confusion(model, LabeledDataset(Matrix(0, 1), {}, 2)),
                    EmptyInputError);
}

TEST_CASE("full-batch training loss is non-increasing at a stable learning rate") {
    LabeledDataset data = two_gaussians(100, 2.0, 31);
    double prev = std::numeric_limits<double>::infinity();
    for (int epochs = 1; epochs <= 6; ++epochs) {
        SoftmaxClassifier model =
            train(data, {epochs, 0.05, 1e-4, static_cast<int>(data.size()), 7});
        LossGrad lg = loss_and_gradient(model, data.features, data.labels, 1e-4);
        CHECK(lg.loss <= prev + 1e-12);
        prev = lg.loss;
    }
}

TEST_CASE("fine_tune validates its inputs") {
    LabeledDataset data = two_gaussians(20, 2.0, 41);
    SoftmaxClassifier model = train(data, {5, 0.1, 1e-4, 16, 1});
    CHECK_THROWS_AS(fine_tune(model, data, LabeledDataset(Matrix(0, 1), {}, 2),
                              TrainConfig{}),
                    EmptyInputError);
    TrainConfig bad;
    bad.epochs = 0;
    CHECK_THROWS_AS(fine_tune(model, data, data, bad), InvalidArgumentError);
}

TEST_CASE("fine_tune on in-distribution targets barely moves accuracy") {
    LabeledDataset source = two_gaussians(300, 3.0, 51);
    SoftmaxClassifier model = train(source, {20, 0.1, 1e-4, 32, 1});
    const double base = train_accuracy(model, source);
    double worst_delta = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        LabeledDataset target = two_gaussians(12, 3.0, 1000 + seed);
        SoftmaxClassifier tuned = fine_tune(model, source, target, {3, 0.05, 1e-4, 8, seed});
        worst_delta = std::max(worst_delta,
                               std::abs(train_accuracy(tuned, source) - base));
    }
    CHECK(worst_delta < 0.02);
}

TEST_CASE("model JSON round trip is exact") {
    LabeledDataset data = two_gaussians(30, 2.0, 61);
    SoftmaxClassifier model = train(data, {5, 0.1, 1e-4, 16, 3});
    SoftmaxClassifier back = SoftmaxClassifier::from_json(model.to_json());
    CHECK(back.weights.data == model.weights.data);
    CHECK(back.biases == model.biases);
    CHECK(back.train_meta.final_loss == model.train_meta.final_loss);
    CHECK(back.train_meta.seed == model.train_meta.seed);
}
