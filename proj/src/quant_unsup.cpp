#include "quantbench/quant_unsup.hpp"

#include <algorithm>
#include <cmath>

namespace quantbench {

namespace {

constexpr double kPriorFloor = 1e-12;
constexpr double kDegenerateDenom = 1e-6;

// zero entries would make the EM reweighting divide by zero
std::vector<double> floor_prior(const Distribution& prior) {
    std::vector<double> p = prior.probs();
    double sum = 0.0;
    for (double& v : p) {
        v = std::max(v, kPriorFloor);
        sum += v;
    }
    for (double& v : p) {
        v /= sum;
    }
    return p;
}

// One E+M pass: average log-likelihood of `scores` under prior `q`, and the
// responsibility-averaged next prior.
struct EmStep {
    double avg_loglik;
    std::vector<double> next_prior;
};

EmStep em_step(const ScoreMatrix& scores, const std::vector<double>& q,
               const std::vector<double>& source_prior) {
    const std::size_t n = scores.samples();
    const std::size_t c = scores.classes();
    EmStep out{0.0, std::vector<double>(c, 0.0)};
    std::vector<double> w(c);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = scores.row(i);
        double sum = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            w[k] = row[k] * q[k] / source_prior[k];
            sum += w[k];
        }
        if (!(sum > 0.0) || !std::isfinite(sum)) {
            throw NonFiniteLikelihoodError("em_adjust: row weight sum not positive");
        }
        out.avg_loglik += std::log(sum);
        for (std::size_t k = 0; k < c; ++k) {
            out.next_prior[k] += w[k] / sum;
        }
    }
    out.avg_loglik /= static_cast<double>(n);
    for (double& v : out.next_prior) {
        v /= static_cast<double>(n);
    }
    return out;
}

double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

Distribution classify_and_count(const ScoreMatrix& scores) {
    std::vector<double> counts(scores.classes(), 0.0);
    for (std::size_t i = 0; i < scores.samples(); ++i) {
        counts[argmax_label(scores.row(i))] += 1.0;
    }
    return make_distribution(counts);
}

Distribution expected_count(const ScoreMatrix& scores) {
    std::vector<double> sums(scores.classes(), 0.0);
    for (std::size_t i = 0; i < scores.samples(); ++i) {
        auto row = scores.row(i);
        for (std::size_t k = 0; k < sums.size(); ++k) {
            sums[k] += row[k];
        }
    }
    return make_distribution(sums);
}

EmResult em_adjust(const ScoreMatrix& scores, const Distribution& source_prior,
                   double tol, int max_iter) {
    if (source_prior.size() != scores.classes()) {
        throw DimensionMismatchError("em_adjust: source_prior length != class count");
    }
    if (!(tol > 0.0)) {
        throw InvalidArgumentError("em_adjust: tol must be > 0");
    }
    if (max_iter < 1) {
        throw InvalidArgumentError("em_adjust: max_iter must be >= 1");
    }

    const std::vector<double> ps = floor_prior(source_prior);
    std::vector<double> q = source_prior.probs();

    EmResult result{Distribution::uniform(scores.classes()), 0, {}, false};
    EmStep step = em_step(scores, q, ps);
    result.trace.push_back({0, q, step.avg_loglik});

    for (int t = 1; t <= max_iter; ++t) {
        std::vector<double> q_prev = q;
        q = step.next_prior;
        step = em_step(scores, q, ps);
        result.trace.push_back({t, q, step.avg_loglik});
        result.iterations = t;
        if (linf_diff(q, q_prev) < tol) {
            result.converged = true;
            break;
        }
    }
    result.prior = make_distribution(q);
    return result;
}

Distribution cm_adjust(const Distribution& raw, const ConfusionMatrix& confusion) {
    CmAdjustDiagnostics diag;
    return cm_adjust(raw, confusion, diag);
}

Distribution cm_adjust(const Distribution& raw, const ConfusionMatrix& confusion,
                       CmAdjustDiagnostics& diag) {
    const std::size_t c = confusion.classes();
    if (raw.size() != c) {
        throw DimensionMismatchError("cm_adjust: distribution length != class count");
    }
    const Distribution& w = confusion.class_weights();
    diag.degenerate.assign(c, false);
    diag.all_zero_fallback = false;

    std::vector<double> q(c, 0.0);
    for (std::size_t i = 0; i < c; ++i) {
        const double tpr = confusion.rate(i, i);
        // false-positive rate: mass predicted as i among the other classes,
        // mixed by the source class proportions
        double fpr_num = 0.0;
        double fpr_den = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            if (k == i) {
                continue;
            }
            fpr_num += w[k] * confusion.rate(k, i);
            fpr_den += w[k];
        }
        const double fpr = fpr_den > 0.0 ? fpr_num / fpr_den : 0.0;
        const double denom = tpr - fpr;
        if (std::abs(denom) < kDegenerateDenom) {
            // inversion undefined; keep the raw count for this class
            diag.degenerate[i] = true;
            q[i] = raw[i];
        } else {
            q[i] = std::clamp((raw[i] - fpr) / denom, 0.0, 1.0);
        }
    }
    double sum = 0.0;
    for (double v : q) {
        sum += v;
    }
    if (sum <= 0.0) {
        diag.all_zero_fallback = true;
        return Distribution::uniform(c);
    }
    return make_distribution(q);
}

} // namespace quantbench
