#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "quantbench/errors.hpp"

namespace quantbench {

/// Normalized probability vector over c classes. Immutable after construction.
/// Entries are non-negative and sum to 1 within 1e-9.
class Distribution {
public:
    /// Empty placeholder; any validated instance comes from the vector
    /// constructor or make_distribution.
    Distribution() = default;

    explicit Distribution(std::vector<double> probs);

    static Distribution uniform(std::size_t c);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    bool operator==(const Distribution& other) const { return probs_ == other.probs_; }

private:
    std::vector<double> probs_;
};

/// Dense row-major real matrix. Shared plumbing for features and posteriors.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // rows * cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    Matrix(std::size_t r, std::size_t c, std::vector<double> d);

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
};

/// n x c matrix of per-sample class posteriors. Every row is on the simplex
/// within 1e-6; entries in [0, 1]; n >= 1, c >= 2.
class ScoreMatrix {
public:
    explicit ScoreMatrix(Matrix scores);

    std::size_t samples() const { return m_.rows; }
    std::size_t classes() const { return m_.cols; }
    std::span<const double> row(std::size_t i) const { return m_.row(i); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

/// Feature matrix plus integer labels in [0, c).
struct LabeledDataset {
    Matrix features;             // n x d
    std::vector<int> labels;     // n entries, each < num_classes
    std::size_t num_classes = 0;

    LabeledDataset() = default;
    LabeledDataset(Matrix f, std::vector<int> l, std::size_t c);

    std::size_t size() const { return labels.size(); }
    std::size_t dim() const { return features.cols; }
};

/// c x c confusion structure: raw counts (true class i predicted as j) and a
/// derived row-stochastic rate matrix. `class_weights` are the source class
/// proportions used by the binary collapse in cm_adjust.
class ConfusionMatrix {
public:
    /// Build from integer counts. Rates are Laplace-smoothed (add-one on
    /// counts before row normalization) so unrepresented classes never yield
    /// a zero row.
    static ConfusionMatrix from_counts(const std::vector<std::vector<std::int64_t>>& counts);

    /// Build directly from an exact row-stochastic rate matrix and explicit
    /// source class weights. No smoothing is applied.
    static ConfusionMatrix from_rates(Matrix rates, Distribution class_weights);

    std::size_t classes() const { return rates_.rows; }
    double rate(std::size_t true_class, std::size_t predicted) const {
        return rates_.at(true_class, predicted);
    }
    std::int64_t count(std::size_t true_class, std::size_t predicted) const {
        return counts_.empty() ? 0 : counts_[true_class][predicted];
    }
    const std::vector<std::vector<std::int64_t>>& counts() const { return counts_; }
    const Distribution& class_weights() const { return weights_; }

private:
    ConfusionMatrix(std::vector<std::vector<std::int64_t>> counts, Matrix rates,
                    Distribution weights);

    std::vector<std::vector<std::int64_t>> counts_; // empty when rate-constructed
    Matrix rates_;
    Distribution weights_;
};

/// One evaluation unit: either raw features or precomputed posteriors, plus
/// optional hidden ground truth used only by evaluation code.
struct Cell {
    std::string id;
    std::variant<Matrix, ScoreMatrix> samples; // features (n x d) or scores (n x c)
    std::optional<std::vector<int>> truth;

    std::size_t size() const;
    bool has_features() const { return std::holds_alternative<Matrix>(samples); }
    const Matrix& features() const;
    const ScoreMatrix& scores() const;
};

/// Normalize non-negative counts to a Distribution.
/// Throws AllZeroError when every entry is 0, NegativeCountError on any < 0.
Distribution make_distribution(const std::vector<double>& counts);

/// Index of the maximum entry; ties break toward the lowest index.
std::size_t argmax_label(std::span<const double> row);

} // namespace quantbench
