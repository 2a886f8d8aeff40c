#include "quantbench/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "quantbench/rng.hpp"

namespace quantbench {

namespace {

// softmax of one affine score row, max-subtracted
void softmax_row(const SoftmaxClassifier& model, std::span<const double> x,
                 std::vector<double>& out) {
    const std::size_t c = model.num_classes();
    const std::size_t d = model.dim();
    out.resize(c);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < c; ++k) {
        double z = model.biases[k];
        for (std::size_t j = 0; j < d; ++j) {
            z += model.weights.at(k, j) * x[j];
        }
        out[k] = z;
        max_logit = std::max(max_logit, z);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
        out[k] = std::exp(out[k] - max_logit);
        sum += out[k];
    }
    for (std::size_t k = 0; k < c; ++k) {
        out[k] /= sum;
    }
}

// one gradient step on the given sample indices
void sgd_step(SoftmaxClassifier& model, const Matrix& features,
              const std::vector<int>& labels, const std::vector<std::size_t>& batch,
              double lr, double l2) {
    const std::size_t c = model.num_classes();
    const std::size_t d = model.dim();
    Matrix gw(c, d);
    std::vector<double> gb(c, 0.0);
    std::vector<double> p;
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    for (std::size_t idx : batch) {
        auto x = features.row(idx);
        softmax_row(model, x, p);
        for (std::size_t k = 0; k < c; ++k) {
            const double delta = (p[k] - (static_cast<int>(k) == labels[idx] ? 1.0 : 0.0)) * inv_b;
            gb[k] += delta;
            for (std::size_t j = 0; j < d; ++j) {
                gw.at(k, j) += delta * x[j];
            }
        }
    }
    for (std::size_t k = 0; k < c; ++k) {
        model.biases[k] -= lr * gb[k];
        for (std::size_t j = 0; j < d; ++j) {
            model.weights.at(k, j) -= lr * (gw.at(k, j) + l2 * model.weights.at(k, j));
        }
    }
}

double dataset_loss(const SoftmaxClassifier& model, const Matrix& features,
                    const std::vector<int>& labels, double l2) {
    return loss_and_gradient(model, features, labels, l2).loss;
}

} // namespace

void TrainConfig::validate() const {
    if (epochs < 1) {
        throw InvalidArgumentError("TrainConfig.epochs must be >= 1");
    }
    if (!(learning_rate > 0.0)) {
        throw InvalidArgumentError("TrainConfig.learning_rate must be > 0");
    }
    if (l2_penalty < 0.0) {
        throw InvalidArgumentError("TrainConfig.l2_penalty must be >= 0");
    }
    if (batch_size < 1) {
        throw InvalidArgumentError("TrainConfig.batch_size must be >= 1");
    }
}

LossGrad loss_and_gradient(const SoftmaxClassifier& model, const Matrix& features,
                           const std::vector<int>& labels, double l2) {
    const std::size_t n = features.rows;
    const std::size_t c = model.num_classes();
    const std::size_t d = model.dim();
    LossGrad out;
    out.grad_weights = Matrix(c, d);
    out.grad_biases.assign(c, 0.0);
    std::vector<double> p;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = features.row(i);
        softmax_row(model, x, p);
        out.loss -= std::log(std::max(p[static_cast<std::size_t>(labels[i])], 1e-300)) * inv_n;
        for (std::size_t k = 0; k < c; ++k) {
            const double delta = (p[k] - (static_cast<int>(k) == labels[i] ? 1.0 : 0.0)) * inv_n;
            out.grad_biases[k] += delta;
            for (std::size_t j = 0; j < d; ++j) {
                out.grad_weights.at(k, j) += delta * x[j];
            }
        }
    }
    for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t j = 0; j < d; ++j) {
            out.loss += 0.5 * l2 * model.weights.at(k, j) * model.weights.at(k, j);
            out.grad_weights.at(k, j) += l2 * model.weights.at(k, j);
        }
    }
    return out;
}

SoftmaxClassifier train(const LabeledDataset& data, const TrainConfig& cfg) {
    cfg.validate();
    if (data.size() == 0) {
        throw DegenerateDataError("train: empty dataset");
    }
    std::set<int> distinct(data.labels.begin(), data.labels.end());
    if (distinct.size() < 2) {
        throw DegenerateDataError("train: fewer than two distinct classes");
    }

    SoftmaxClassifier model;
    model.weights = Matrix(data.num_classes, data.dim());
    model.biases.assign(data.num_classes, 0.0);
    model.train_meta.seed = cfg.seed;

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> batch;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end =
                std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            batch.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
            sgd_step(model, data.features, data.labels, batch, cfg.learning_rate,
                     cfg.l2_penalty);
        }
    }
    model.train_meta.epochs_run = cfg.epochs;
    model.train_meta.final_loss =
        dataset_loss(model, data.features, data.labels, cfg.l2_penalty);
    return model;
}

ScoreMatrix posteriors(const SoftmaxClassifier& model, const Matrix& features) {
    if (features.cols != model.dim()) {
        throw DimensionMismatchError("posteriors: feature width does not match model");
    }
    Matrix out(features.rows, model.num_classes());
    std::vector<double> p;
    for (std::size_t i = 0; i < features.rows; ++i) {
        softmax_row(model, features.row(i), p);
        for (std::size_t k = 0; k < p.size(); ++k) {
            out.at(i, k) = p[k];
        }
    }
    return ScoreMatrix(std::move(out));
}

ConfusionMatrix estimate_confusion(const SoftmaxClassifier& model,
                                   const LabeledDataset& heldout) {
    if (heldout.size() == 0) {
        throw EmptyInputError("estimate_confusion: empty holdout");
    }
    if (heldout.dim() != model.dim()) {
        throw DimensionMismatchError("estimate_confusion: feature width mismatch");
    }
    const std::size_t c = model.num_classes();
    std::vector<std::vector<std::int64_t>> counts(c, std::vector<std::int64_t>(c, 0));
    std::vector<double> p;
    for (std::size_t i = 0; i < heldout.size(); ++i) {
        softmax_row(model, heldout.features.row(i), p);
        counts[static_cast<std::size_t>(heldout.labels[i])][argmax_label(p)] += 1;
    }
    return ConfusionMatrix::from_counts(counts);
}

SoftmaxClassifier fine_tune(const SoftmaxClassifier& model, const LabeledDataset& source,
                            const LabeledDataset& target_labeled, const TrainConfig& cfg) {
    cfg.validate();
    if (target_labeled.size() == 0) {
        throw EmptyInputError("fine_tune: empty target set");
    }
    if (source.dim() != model.dim() || target_labeled.dim() != model.dim()) {
        throw DimensionMismatchError("fine_tune: feature width mismatch");
    }

    SoftmaxClassifier tuned = model;
    tuned.train_meta.seed = cfg.seed;
    Rng rng(cfg.seed);

    // An epoch is one pass of source-sized length over the 75/25 mixed stream.
    const std::size_t epoch_len = source.size();
    const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
    std::vector<std::size_t> batch;
    Matrix batch_features(bs, model.dim());
    std::vector<int> batch_labels(bs);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::size_t drawn = 0;
        while (drawn < epoch_len) {
            const std::size_t m = std::min(bs, epoch_len - drawn);
            for (std::size_t i = 0; i < m; ++i) {
                const bool from_source = rng.next_double() < 0.75;
                const LabeledDataset& pool = from_source ? source : target_labeled;
                const std::size_t idx =
                    static_cast<std::size_t>(rng.next_below(pool.size()));
                for (std::size_t j = 0; j < model.dim(); ++j) {
                    batch_features.at(i, j) = pool.features.at(idx, j);
                }
                batch_labels[i] = pool.labels[idx];
            }
            batch.resize(m);
            std::iota(batch.begin(), batch.end(), std::size_t{0});
            sgd_step(tuned, batch_features, batch_labels, batch, cfg.learning_rate,
                     cfg.l2_penalty);
            drawn += m;
        }
    }
    tuned.train_meta.epochs_run = model.train_meta.epochs_run + cfg.epochs;
    tuned.train_meta.final_loss =
        dataset_loss(tuned, source.features, source.labels, cfg.l2_penalty);
    return tuned;
}

std::string SoftmaxClassifier::to_json() const {
    nlohmann::json j;
    j["c"] = num_classes();
    j["d"] = dim();
    j["weights"] = weights.data;
    j["biases"] = biases;
    j["train_meta"] = {{"epochs_run", train_meta.epochs_run},
                       {"final_loss", train_meta.final_loss},
                       {"seed", train_meta.seed}};
    return j.dump(2);
}

SoftmaxClassifier SoftmaxClassifier::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    SoftmaxClassifier m;
    const auto c = j.at("c").get<std::size_t>();
    const auto d = j.at("d").get<std::size_t>();
    m.weights = Matrix(c, d, j.at("weights").get<std::vector<double>>());
    m.biases = j.at("biases").get<std::vector<double>>();
    if (m.biases.size() != c) {
        throw ParseError("model JSON: bias length mismatch");
    }
    const auto& meta = j.at("train_meta");
    m.train_meta.epochs_run = meta.at("epochs_run").get<int>();
    m.train_meta.final_loss = meta.at("final_loss").get<double>();
    m.train_meta.seed = meta.at("seed").get<std::uint64_t>();
    return m;
}

} // namespace quantbench
