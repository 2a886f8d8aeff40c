#pragma once

#include <string>
#include <vector>

#include "quantbench/classifier.hpp"
#include "quantbench/core.hpp"
#include "quantbench/shiftsim.hpp"

namespace quantbench {

/// A set of ingested cells plus the class catalog shared by all of them.
struct IngestedData {
    std::vector<Cell> cells;
    std::vector<std::string> class_names;
};

/// Serialize a double with enough digits to round-trip exactly.
std::string format_double(double v);

/// Write one cell to the tabular wire format: a class-catalog header, a kind
/// marker (scores or features), then one comma-separated row per sample with
/// an optional trailing integer truth label. UTF-8, LF line endings.
void write_cell_file(const std::string& path, const Cell& cell,
                     const std::vector<std::string>& class_names);

/// Parse one cell file. Score rows within 1e-3 of the simplex are
/// renormalized; rows further out are rejected with SimplexViolationError.
/// ParseError carries the offending line number.
Cell read_cell_file(const std::string& path, std::vector<std::string>& class_names);

/// Ingest every *.csv cell file under a directory (sorted by filename).
/// Throws ParseError when class catalogs disagree across cells.
IngestedData ingest_cells(const std::string& dir);

/// Scenario configs as JSON documents; either a full scenario description or
/// {"preset": "plankton-like"|"coral-like"}.
ScenarioConfig load_scenario(const std::string& path, std::uint64_t seed);
ScenarioConfig parse_scenario_json(const std::string& text, std::uint64_t seed);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace quantbench
