#include "quantbench/quant_sup.hpp"

#include <algorithm>
#include <numeric>

#include "quantbench/quant_unsup.hpp"
#include "quantbench/rng.hpp"

namespace quantbench {

namespace {

Distribution clip_renormalize(std::vector<double> q, const Distribution& srs_fallback,
                              bool& used_fallback) {
    double sum = 0.0;
    for (double& v : q) {
        v = std::clamp(v, 0.0, 1.0);
        sum += v;
    }
    if (sum <= 0.0) {
        used_fallback = true;
        return srs_fallback;
    }
    used_fallback = false;
    return make_distribution(q);
}

} // namespace

LabeledSubset draw_subset(const Cell& cell, std::size_t b, std::uint64_t seed) {
    const std::size_t n = cell.size();
    if (b < 1 || b > n) {
        throw BudgetExceedsCellError("draw_subset: budget outside [1, cell size]");
    }
    if (!cell.truth) {
        throw InvalidArgumentError("draw_subset: cell carries no truth labels");
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(perm);
    LabeledSubset subset;
    subset.b = b;
    subset.indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(b));
    subset.labels.reserve(b);
    for (std::size_t idx : subset.indices) {
        subset.labels.push_back((*cell.truth)[idx]);
    }
    return subset;
}

Distribution srs_estimate(const LabeledSubset& subset, std::size_t c) {
    if (subset.b == 0 || subset.labels.empty()) {
        throw EmptyInputError("srs_estimate: empty subset");
    }
    std::vector<double> counts(c, 0.0);
    for (int y : subset.labels) {
        if (y < 0 || static_cast<std::size_t>(y) >= c) {
            throw InvalidArgumentError("srs_estimate: label outside [0, c)");
        }
        counts[static_cast<std::size_t>(y)] += 1.0;
    }
    return make_distribution(counts);
}

Distribution offset_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                             const Distribution& truth_subset) {
    SupDiagnostics diag;
    return offset_estimate(cc_full, cc_subset, truth_subset, diag);
}

Distribution offset_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                             const Distribution& truth_subset, SupDiagnostics& diag) {
    const std::size_t c = cc_full.size();
    if (cc_subset.size() != c || truth_subset.size() != c) {
        throw DimensionMismatchError("offset_estimate: length mismatch");
    }
    diag.fallback.assign(c, false);
    std::vector<double> q(c);
    for (std::size_t i = 0; i < c; ++i) {
        q[i] = cc_full[i] + (truth_subset[i] - cc_subset[i]);
    }
    return clip_renormalize(std::move(q), truth_subset, diag.all_zero_fallback);
}

Distribution ratio_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                            const Distribution& truth_subset) {
    SupDiagnostics diag;
    return ratio_estimate(cc_full, cc_subset, truth_subset, diag);
}

Distribution ratio_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                            const Distribution& truth_subset, SupDiagnostics& diag) {
    const std::size_t c = cc_full.size();
    if (cc_subset.size() != c || truth_subset.size() != c) {
        throw DimensionMismatchError("ratio_estimate: length mismatch");
    }
    diag.fallback.assign(c, false);
    std::vector<double> q(c);
    for (std::size_t i = 0; i < c; ++i) {
        if (cc_subset[i] > 0.0) {
            q[i] = cc_full[i] * truth_subset[i] / cc_subset[i];
        } else {
            diag.fallback[i] = true;
            q[i] = truth_subset[i];
        }
    }
    return clip_renormalize(std::move(q), truth_subset, diag.all_zero_fallback);
}

Distribution da_mix_quantify(const SoftmaxClassifier& model, const LabeledDataset& source,
                             const Cell& cell, const LabeledSubset& subset,
                             const TrainConfig& cfg) {
    const Matrix& features = cell.features(); // throws FeaturesUnavailableError
    Matrix target_features(subset.b, features.cols);
    for (std::size_t i = 0; i < subset.b; ++i) {
        for (std::size_t j = 0; j < features.cols; ++j) {
            target_features.at(i, j) = features.at(subset.indices[i], j);
        }
    }
    LabeledDataset target(std::move(target_features), subset.labels, model.num_classes());
    SoftmaxClassifier tuned = fine_tune(model, source, target, cfg);
    return classify_and_count(posteriors(tuned, features));
}

} // namespace quantbench
