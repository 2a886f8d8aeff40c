#include "quantbench/metrics.hpp"

#include <cmath>

namespace quantbench {

double bray_curtis(const Distribution& q, const Distribution& q_hat) {
    if (q.size() != q_hat.size()) {
        throw DimensionMismatchError("bray_curtis: length mismatch");
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        l1 += std::abs(q[i] - q_hat[i]);
    }
    return 0.5 * l1;
}

AggregateError aggregate(const std::vector<CellError>& errors) {
    if (errors.empty()) {
        throw EmptyInputError("aggregate: empty error list");
    }
    AggregateError agg;
    agg.method = errors.front().method;
    agg.budget = errors.front().budget;
    agg.n_cells = errors.size();
    for (const CellError& e : errors) {
        if (e.method != agg.method || e.budget != agg.budget) {
            throw InvalidArgumentError("aggregate: mixed method/budget input");
        }
        agg.mean += e.bray_curtis;
    }
    agg.mean /= static_cast<double>(agg.n_cells);
    if (agg.n_cells > 1) {
        double ss = 0.0;
        for (const CellError& e : errors) {
            const double d = e.bray_curtis - agg.mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(agg.n_cells - 1));
        agg.se = sd / std::sqrt(static_cast<double>(agg.n_cells));
    }
    return agg;
}

} // namespace quantbench
