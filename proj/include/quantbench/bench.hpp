#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quantbench/classifier.hpp"
#include "quantbench/core.hpp"
#include "quantbench/metrics.hpp"
#include "quantbench/shiftsim.hpp"

namespace quantbench {

/// Full benchmark description. `scenario` is a preset name, a path to a
/// scenario JSON, or a directory of ingested cell files.
struct BenchmarkConfig {
    std::string scenario;
    std::vector<std::string> methods;          // cc, em, cm, srs, offset, ratio, da_mix
    std::vector<int> budgets{15, 25, 50, 100, 150};
    std::vector<std::uint64_t> seeds{1};
    int jobs = 1;

    TrainConfig train{30, 0.1, 1e-4, 32, 0};   // base classifier
    TrainConfig tune{3, 0.05, 1e-4, 8, 0};     // da_mix fine-tuning

    // only used with ingested score cells, where no classifier is trained
    std::optional<std::vector<double>> source_prior;
    std::optional<std::vector<std::vector<std::int64_t>>> confusion_counts;

    static BenchmarkConfig from_json(const std::string& text);
    std::string canonical_json() const;
    void validate() const;
};

struct BenchRow {
    std::string method;
    std::optional<int> budget;   // empty for unsupervised methods
    std::string cell_id;
    std::uint64_t seed = 0;
    double bray_curtis = 0.0;
    std::string error;           // empty on success
};

struct BenchmarkReport {
    std::string version;
    std::string config_hash;
    std::vector<std::uint64_t> seeds;
    std::vector<BenchRow> rows;
    std::vector<AggregateError> aggregates;

    /// True when the named method produced no successful row at all.
    bool method_failed_everywhere(const std::string& method) const;
    bool any_method_failed_everywhere() const;
};

/// Execute the full sweep: cell x method (x budget x seed for supervised).
/// Per-cell failures are recorded as rows with a non-empty error; the run
/// continues. Deterministic given the config, independent of cfg.jobs.
BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

/// Render report files into `out_dir`. Formats: "csv" (rows.csv +
/// aggregates.csv), "json" (report.json), "svg" (chart.svg). Returns the
/// paths written.
std::vector<std::string> emit_report(const BenchmarkReport& report,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats);

std::string report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(const std::string& text);

std::string rows_to_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> rows_from_csv(const std::string& text);
std::string aggregates_to_csv(const std::vector<AggregateError>& aggregates);

/// Recompute the aggregate table from the row set (successful rows only),
/// grouped by (method, budget), sorted canonically.
std::vector<AggregateError> aggregate_rows(const std::vector<BenchRow>& rows);

} // namespace quantbench
