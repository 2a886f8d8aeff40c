#pragma once

#include <cstdint>
#include <vector>

#include "quantbench/classifier.hpp"
#include "quantbench/core.hpp"

namespace quantbench {

/// The first b entries of a seeded random permutation of a cell, with their
/// (revealed) labels.
struct LabeledSubset {
    std::vector<std::size_t> indices; // b distinct positions into the cell
    std::vector<int> labels;          // b class indices
    std::size_t b = 0;
};

/// Per-class diagnostics for the corrected estimators.
struct SupDiagnostics {
    std::vector<bool> fallback; // class fell back to the subset truth rate
    bool all_zero_fallback = false;
};

/// Uniform b-subset without replacement via a seeded permutation.
/// Requires cell truth (benchmark mode); deterministic given seed.
LabeledSubset draw_subset(const Cell& cell, std::size_t b, std::uint64_t seed);

/// Empirical class frequencies among the subset labels.
Distribution srs_estimate(const LabeledSubset& subset, std::size_t c);

/// Difference estimator: the classifier's additive bias measured on the
/// subset, subtracted from the full-cell count. Clipped and renormalized.
Distribution offset_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                             const Distribution& truth_subset);
Distribution offset_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                             const Distribution& truth_subset, SupDiagnostics& diag);

/// Ratio estimator: scale each full-cell count by truth/predicted on the
/// subset; per-class fallback to the subset truth rate when the subset shows
/// no predictions for a class.
Distribution ratio_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                            const Distribution& truth_subset);
Distribution ratio_estimate(const Distribution& cc_full, const Distribution& cc_subset,
                            const Distribution& truth_subset, SupDiagnostics& diag);

/// Fine-tune the classifier on a 75/25 source/target mixture built from the
/// labeled subset, then classify & count the tuned posteriors on the whole
/// cell. Requires raw features in the cell.
Distribution da_mix_quantify(const SoftmaxClassifier& model, const LabeledDataset& source,
                             const Cell& cell, const LabeledSubset& subset,
                             const TrainConfig& cfg);

} // namespace quantbench
