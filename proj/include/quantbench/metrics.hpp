#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quantbench/core.hpp"

namespace quantbench {

struct CellError {
    std::string cell_id;
    std::string method;
    std::optional<int> budget;
    double bray_curtis = 0.0;
};

struct AggregateError {
    std::string method;
    std::optional<int> budget;
    double mean = 0.0;
    double se = 0.0; // standard error of the mean, n-1 convention
    std::size_t n_cells = 0;
};

/// Half the L1 distance; equals Bray-Curtis for normalized class counts.
double bray_curtis(const Distribution& q, const Distribution& q_hat);

/// Mean and standard error across cell errors for one method/budget.
/// A single cell yields se = 0.
AggregateError aggregate(const std::vector<CellError>& errors);

} // namespace quantbench
