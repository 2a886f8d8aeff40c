#include "quantbench/core.hpp"

#include <cmath>
#include <numeric>

namespace quantbench {

namespace {

constexpr double kDistributionTol = 1e-9;
constexpr double kScoreRowTol = 1e-6;

} // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
        throw InvalidArgumentError("Distribution needs at least 2 classes");
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) {
            throw InvalidArgumentError("Distribution entry negative or NaN");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kDistributionTol) {
        throw InvalidArgumentError("Distribution does not sum to 1 within 1e-9");
    }
}

Distribution Distribution::uniform(std::size_t c) {
    std::vector<double> p(c, 1.0 / static_cast<double>(c));
    return Distribution(std::move(p));
}

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> d)
    : rows(r), cols(c), data(std::move(d)) {
    if (data.size() != rows * cols) {
        throw DimensionMismatchError("Matrix data size does not match rows*cols");
    }
}

ScoreMatrix::ScoreMatrix(Matrix scores) : m_(std::move(scores)) {
    if (m_.rows < 1 || m_.cols < 2) {
        throw InvalidArgumentError("ScoreMatrix needs n >= 1 and c >= 2");
    }
    for (std::size_t i = 0; i < m_.rows; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m_.cols; ++j) {
            double v = m_.at(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InvalidArgumentError("ScoreMatrix entry outside [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kScoreRowTol) {
            throw SimplexViolationError("ScoreMatrix row does not sum to 1 within 1e-6");
        }
    }
}

LabeledDataset::LabeledDataset(Matrix f, std::vector<int> l, std::size_t c)
    : features(std::move(f)), labels(std::move(l)), num_classes(c) {
    if (features.rows != labels.size()) {
        throw DimensionMismatchError("feature rows and labels have unequal length");
    }
    for (int y : labels) {
        if (y < 0 || static_cast<std::size_t>(y) >= num_classes) {
            throw InvalidArgumentError("label outside [0, c)");
        }
    }
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::vector<std::int64_t>> counts, Matrix rates,
                                 Distribution weights)
    : counts_(std::move(counts)), rates_(std::move(rates)), weights_(std::move(weights)) {}

ConfusionMatrix ConfusionMatrix::from_counts(
    const std::vector<std::vector<std::int64_t>>& counts) {
    const std::size_t c = counts.size();
    if (c < 2) {
        throw InvalidArgumentError("ConfusionMatrix needs c >= 2");
    }
    Matrix rates(c, c);
    std::vector<double> row_totals(c, 0.0);
    for (std::size_t i = 0; i < c; ++i) {
        if (counts[i].size() != c) {
            throw DimensionMismatchError("ConfusionMatrix counts not square");
        }
        std::int64_t row_sum = 0;
        for (std::int64_t v : counts[i]) {
            if (v < 0) {
                throw NegativeCountError("ConfusionMatrix count negative");
            }
            row_sum += v;
        }
        // add-one smoothing keeps every row stochastic even for absent classes
        const double denom = static_cast<double>(row_sum) + static_cast<double>(c);
        for (std::size_t j = 0; j < c; ++j) {
            rates.at(i, j) = (static_cast<double>(counts[i][j]) + 1.0) / denom;
        }
        row_totals[i] = static_cast<double>(row_sum);
    }
    double total = std::accumulate(row_totals.begin(), row_totals.end(), 0.0);
    Distribution weights = total > 0.0 ? make_distribution(row_totals)
                                       : Distribution::uniform(c);
    return ConfusionMatrix(counts, std::move(rates), std::move(weights));
}

ConfusionMatrix ConfusionMatrix::from_rates(Matrix rates, Distribution class_weights) {
    const std::size_t c = rates.rows;
    if (c < 2 || rates.cols != c) {
        throw DimensionMismatchError("rate matrix must be square with c >= 2");
    }
    if (class_weights.size() != c) {
        throw DimensionMismatchError("class_weights size does not match rate matrix");
    }
    for (std::size_t i = 0; i < c; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            double v = rates.at(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InvalidArgumentError("rate entry outside [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kDistributionTol) {
            throw InvalidArgumentError("rate row not stochastic within 1e-9");
        }
    }
    return ConfusionMatrix({}, std::move(rates), std::move(class_weights));
}

std::size_t Cell::size() const {
    if (has_features()) {
        return std::get<Matrix>(samples).rows;
    }
    return std::get<ScoreMatrix>(samples).samples();
}

const Matrix& Cell::features() const {
    if (!has_features()) {
        throw FeaturesUnavailableError("cell '" + id + "' holds scores, not features");
    }
    return std::get<Matrix>(samples);
}

const ScoreMatrix& Cell::scores() const {
    if (has_features()) {
        throw InvalidArgumentError("cell '" + id + "' holds features, not scores");
    }
    return std::get<ScoreMatrix>(samples);
}

Distribution make_distribution(const std::vector<double>& counts) {
    double sum = 0.0;
    for (double v : counts) {
        if (v < 0.0) {
            throw NegativeCountError("make_distribution: negative count");
        }
        sum += v;
    }
    if (sum <= 0.0) {
        throw AllZeroError("make_distribution: all counts zero");
    }
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        p[i] = counts[i] / sum;
    }
    // nudge the largest entry so floating-point drift never violates the
    // simplex tolerance
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    std::size_t top = argmax_label(p);
    p[top] += 1.0 - total;
    if (p[top] < 0.0) {
        p[top] = 0.0;
    }
    return Distribution(std::move(p));
}

std::size_t argmax_label(std::span<const double> row) {
    if (row.empty()) {
        throw EmptyInputError("argmax_label: empty row");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
        if (row[i] > row[best]) {
            best = i;
        }
    }
    return best;
}

} // namespace quantbench
