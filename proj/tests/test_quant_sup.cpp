#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "quantbench/quant_sup.hpp"
#include "quantbench/rng.hpp"

using namespace quantbench;

namespace {

Cell feature_cell(std::vector<int> truth) {
    Cell cell;
    cell.id = "t";
    Matrix features(truth.size(), 1);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        features.at(i, 0) = static_cast<double>(truth[i]);
    }
    cell.samples = std::move(features);
    cell.truth = std::move(truth);
    return cell;
}

LabeledSubset subset_of(std::vector<int> labels) {
    LabeledSubset s;
    s.b = labels.size();
    s.indices.resize(labels.size());
    std::iota(s.indices.begin(), s.indices.end(), std::size_t{0});
    s.labels = std::move(labels);
    return s;
}

} // namespace

TEST_CASE("srs_estimate counts label frequencies") {
    CHECK(srs_estimate(subset_of({0, 0, 1, 1}), 2).probs() ==
          std::vector<double>{0.5, 0.5});
    CHECK(srs_estimate(subset_of({2, 2, 2}), 3).probs() ==
          std::vector<double>{0.0, 0.0, 1.0});
    Distribution q = srs_estimate(subset_of({0, 1, 1, 2, 2, 2, 2, 2, 1, 0}), 3);
    CHECK(q[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(q[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("draw_subset is a deterministic uniform subset") {
    Cell cell = feature_cell({0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
    LabeledSubset full = draw_subset(cell, 10, 3);
    std::vector<std::size_t> sorted = full.indices;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(sorted[i] == i);
    }
    LabeledSubset one_a = draw_subset(cell, 1, 7);
    LabeledSubset one_b = draw_subset(cell, 1, 7);
    CHECK(one_a.indices == one_b.indices);
    CHECK(one_a.indices[0] < 10);
    CHECK_THROWS_AS(draw_subset(cell, 11, 1), BudgetExceedsCellError);
    CHECK_THROWS_AS(draw_subset(cell, 0, 1), BudgetExceedsCellError);
}

TEST_CASE("srs is exactly unbiased under exhaustive enumeration") {
    // every b-subset of small cells, E[q_hat] must equal the cell frequencies
    for (std::size_t n : {5, 8}) {
        std::vector<int> truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = static_cast<int>(i % 3);
        }
        std::vector<double> cell_counts(3, 0.0);
        for (int y : truth) {
            cell_counts[static_cast<std::size_t>(y)] += 1.0;
        }
        Distribution cell_dist = make_distribution(cell_counts);

        for (std::size_t b = 1; b <= 4; ++b) {
            std::vector<bool> mask(n, false);
            std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(b), true);
            std::sort(mask.begin(), mask.end());
            std::vector<double> mean(3, 0.0);
            std::size_t count = 0;
            do {
                std::vector<int> labels;
                for (std::size_t i = 0; i < n; ++i) {
                    if (mask[i]) {
                        labels.push_back(truth[i]);
                    }
                }
                Distribution q = srs_estimate(subset_of(std::move(labels)), 3);
                for (std::size_t k = 0; k < 3; ++k) {
                    mean[k] += q[k];
                }
                ++count;
            } while (std::next_permutation(mask.begin(), mask.end()));
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(mean[k] / static_cast<double>(count) ==
                      doctest::Approx(cell_dist[k]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("offset_estimate subtracts the measured bias") {
    Distribution cc_full({0.6, 0.4});
    CHECK(offset_estimate(cc_full, Distribution({0.3, 0.7}), Distribution({0.3, 0.7}))
              .probs() == cc_full.probs());
    Distribution q =
        offset_estimate(cc_full, Distribution({0.7, 0.3}), Distribution({0.5, 0.5}));
    CHECK(q[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("ratio_estimate scales by subset ratios") {
    Distribution cc_full({0.5, 0.5});
    CHECK(ratio_estimate(cc_full, Distribution({0.4, 0.6}), Distribution({0.4, 0.6}))
              .probs() == cc_full.probs());
    Distribution q =
        ratio_estimate(cc_full, Distribution({0.25, 0.75}), Distribution({0.5, 0.5}));
    CHECK(q[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("ratio_estimate falls back per class on zero predicted mass") {
    SupDiagnostics diag;
    Distribution q = ratio_estimate(Distribution({0.8, 0.2, 0.0}),
                                    Distribution({0.6, 0.4, 0.0}),
                                    Distribution({0.4, 0.3, 0.3}), diag);
    CHECK(diag.fallback[2]);
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(q[i] >= 0.0);
        sum += q[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("corrected estimators reject mismatched lengths") {
    CHECK_THROWS_AS(offset_estimate(Distribution({0.5, 0.5}),
                                    Distribution({0.3, 0.3, 0.4}),
                                    Distribution({0.5, 0.5})),
                    DimensionMismatchError);
    CHECK_THROWS_AS(ratio_estimate(Distribution({0.5, 0.5}),
                                   Distribution({0.3, 0.3, 0.4}),
                                   Distribution({0.5, 0.5})),
                    DimensionMismatchError);
}

TEST_CASE("da_mix_quantify needs raw features") {
    Cell cell;
    cell.id = "scores-only";
    cell.samples = ScoreMatrix(Matrix(2, 2, {0.6, 0.4, 0.3, 0.7}));
    cell.truth = std::vector<int>{0, 1};
    SoftmaxClassifier model;
    model.weights = Matrix(2, 1);
    model.biases = {0.0, 0.0};
    LabeledDataset source(Matrix(2, 1, {0.0, 1.0}), {0, 1}, 2);
    LabeledSubset subset = subset_of({0, 1});
    CHECK_THROWS_AS(da_mix_quantify(model, source, cell, subset, TrainConfig{}),
                    FeaturesUnavailableError);
}
