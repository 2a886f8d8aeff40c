#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quantbench/core.hpp"

namespace quantbench {

/// One synthetic test cell: a target prior and an additive per-class mean
/// drift. Zero drift keeps the class-conditionals identical to the source,
/// i.e. a pure class-distribution shift.
struct CellSpec {
    std::string id;
    Distribution target_prior;
    Matrix mean_drift;           // c x d, added to the scenario class means
    std::size_t n_samples = 0;
};

/// Gaussian-mixture scenario: isotropic class-conditionals with controllable
/// prior shift (per-cell priors) and conditional shift (per-cell mean drift).
struct ScenarioConfig {
    std::size_t c = 0;
    std::size_t d = 0;
    Matrix class_means;          // c x d
    double class_cov_scale = 1.0;
    Distribution source_prior;
    std::size_t n_source = 0;
    std::vector<CellSpec> cells;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Draw the source set: label ~ source_prior, feature ~ N(class mean, scale^2 I).
LabeledDataset gen_source(const ScenarioConfig& cfg);

/// Draw one test cell with its own prior and drifted means. Truth labels are
/// attached for evaluation only. The cell stream is seeded independently of
/// the source (cell seed = hash of master seed and cell id).
Cell gen_cell(const ScenarioConfig& cfg, const CellSpec& spec);

/// Bundled presets mirroring the two benchmark regimes: skewed priors with
/// zero drift (21 cells) vs varied priors with nonzero drift (15 cells).
ScenarioConfig plankton_like_preset(std::uint64_t seed);
ScenarioConfig coral_like_preset(std::uint64_t seed);

/// Preset lookup by name ("plankton-like" / "coral-like"); throws
/// InvalidArgumentError on unknown names.
ScenarioConfig preset_by_name(const std::string& name, std::uint64_t seed);

} // namespace quantbench
