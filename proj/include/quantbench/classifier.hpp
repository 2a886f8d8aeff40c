#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quantbench/core.hpp"

namespace quantbench {

struct TrainConfig {
    int epochs = 30;
    double learning_rate = 0.1;
    double l2_penalty = 1e-4;
    int batch_size = 32;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainMeta {
    int epochs_run = 0;
    double final_loss = 0.0;
    std::uint64_t seed = 0;
};

/// Multinomial logistic regression. Stands in for the heavyweight image
/// classifiers this harness deliberately avoids: the quantification layer
/// only needs posteriors and a confusion matrix.
struct SoftmaxClassifier {
    Matrix weights;              // c x d
    std::vector<double> biases;  // c
    TrainMeta train_meta;

    std::size_t num_classes() const { return weights.rows; }
    std::size_t dim() const { return weights.cols; }

    std::string to_json() const;
    static SoftmaxClassifier from_json(const std::string& text);
};

/// Mean cross-entropy with L2 penalty on weights, plus its analytic gradient.
/// Exposed so the gradient can be checked against finite differences.
struct LossGrad {
    double loss = 0.0;
    Matrix grad_weights;
    std::vector<double> grad_biases;
};
LossGrad loss_and_gradient(const SoftmaxClassifier& model, const Matrix& features,
                           const std::vector<int>& labels, double l2_penalty);

/// Fit by mini-batch gradient descent on cross-entropy. Deterministic given
/// cfg.seed (fixed shuffle order per epoch). Throws DegenerateDataError when
/// fewer than two classes are present.
SoftmaxClassifier train(const LabeledDataset& data, const TrainConfig& cfg);

/// Softmax of affine scores, log-sum-exp stabilized.
ScoreMatrix posteriors(const SoftmaxClassifier& model, const Matrix& features);

/// Confusion counts on a holdout set (caller guarantees disjointness from the
/// training data). Rates come out add-one smoothed.
ConfusionMatrix estimate_confusion(const SoftmaxClassifier& model,
                                   const LabeledDataset& heldout);

/// Continue gradient descent from `model` on a stream where each sample is
/// drawn from source with probability 0.75 and from target_labeled (with
/// replacement) otherwise.
SoftmaxClassifier fine_tune(const SoftmaxClassifier& model, const LabeledDataset& source,
                            const LabeledDataset& target_labeled, const TrainConfig& cfg);

} // namespace quantbench
