#pragma once

#include <vector>

#include "quantbench/core.hpp"

namespace quantbench {

/// One EM iterate: prior estimate plus the average log-likelihood of the
/// target scores under it.
struct EmTracePoint {
    int iteration = 0;
    std::vector<double> prior;
    double avg_loglik = 0.0;
};

struct EmResult {
    Distribution prior;
    int iterations = 0;
    std::vector<EmTracePoint> trace; // iterations + 1 entries, index 0 = init
    bool converged = false;
};

/// Per-class diagnostics for cm_adjust.
struct CmAdjustDiagnostics {
    std::vector<bool> degenerate;  // |tpr - fpr| below threshold, raw kept
    bool all_zero_fallback = false;
};

/// Fraction of rows whose argmax is each class.
Distribution classify_and_count(const ScoreMatrix& scores);

/// Column mean of the posteriors.
Distribution expected_count(const ScoreMatrix& scores);

/// Maximize the target likelihood over the class prior by EM, reweighting
/// source posteriors by the ratio of the current prior estimate to the source
/// prior. Stops when the L-inf change of the prior drops below tol or after
/// max_iter iterations.
EmResult em_adjust(const ScoreMatrix& scores, const Distribution& source_prior,
                   double tol = 1e-8, int max_iter = 1000);

/// Confusion-correct a classify-and-count output one class at a time: collapse
/// the c x c rates to a per-class binary (tpr, fpr) system, invert it, clip to
/// [0,1] and renormalize. Never inverts the full matrix.
Distribution cm_adjust(const Distribution& raw, const ConfusionMatrix& confusion);
Distribution cm_adjust(const Distribution& raw, const ConfusionMatrix& confusion,
                       CmAdjustDiagnostics& diag);

} // namespace quantbench
