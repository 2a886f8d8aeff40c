#include "quantbench/shiftsim.hpp"

#include <cmath>

#include "quantbench/rng.hpp"

namespace quantbench {

void ScenarioConfig::validate() const {
    if (c < 2 || d < 1) {
        throw InvalidArgumentError("scenario: need c >= 2 and d >= 1");
    }
    if (class_means.rows != c || class_means.cols != d) {
        throw DimensionMismatchError("scenario: class_means must be c x d");
    }
    if (!(class_cov_scale > 0.0)) {
        throw InvalidArgumentError("scenario: class_cov_scale must be > 0");
    }
    if (source_prior.size() != c) {
        throw DimensionMismatchError("scenario: source_prior length != c");
    }
    if (n_source < 1) {
        throw InvalidArgumentError("scenario: n_source must be >= 1");
    }
    for (const CellSpec& spec : cells) {
        if (spec.target_prior.size() != c) {
            throw DimensionMismatchError("cell '" + spec.id + "': prior length != c");
        }
        if (spec.mean_drift.rows != c || spec.mean_drift.cols != d) {
            throw DimensionMismatchError("cell '" + spec.id + "': drift must be c x d");
        }
        if (spec.n_samples < 1) {
            throw InvalidArgumentError("cell '" + spec.id + "': n_samples must be >= 1");
        }
    }
}

namespace {

// label ~ prior, feature ~ N(mean_k + drift_k, scale^2 I)
void draw_samples(const ScenarioConfig& cfg, const Distribution& prior,
                  const Matrix* drift, std::size_t n, Rng& rng, Matrix& features,
                  std::vector<int>& labels) {
    features = Matrix(n, cfg.d);
    labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = rng.next_category(prior.probs());
        labels[i] = static_cast<int>(k);
        for (std::size_t j = 0; j < cfg.d; ++j) {
            double mean = cfg.class_means.at(k, j);
            if (drift != nullptr) {
                mean += drift->at(k, j);
            }
            features.at(i, j) = mean + cfg.class_cov_scale * rng.next_gaussian();
        }
    }
}

} // namespace

LabeledDataset gen_source(const ScenarioConfig& cfg) {
    cfg.validate();
    Rng rng(derive_seed(cfg.seed, "source"));
    Matrix features;
    std::vector<int> labels;
    draw_samples(cfg, cfg.source_prior, nullptr, cfg.n_source, rng, features, labels);
    return LabeledDataset(std::move(features), std::move(labels), cfg.c);
}

Cell gen_cell(const ScenarioConfig& cfg, const CellSpec& spec) {
    cfg.validate();
    Rng rng(derive_seed(cfg.seed, "cell:" + spec.id));
    Matrix features;
    std::vector<int> labels;
    draw_samples(cfg, spec.target_prior, &spec.mean_drift, spec.n_samples, rng, features,
                 labels);
    Cell cell;
    cell.id = spec.id;
    cell.samples = std::move(features);
    cell.truth = std::move(labels);
    return cell;
}

namespace {

Matrix triangle_means() {
    // three well-separated but overlapping classes in the plane
    Matrix m(3, 2);
    m.at(0, 0) = 0.0;
    m.at(0, 1) = 0.0;
    m.at(1, 0) = 2.4;
    m.at(1, 1) = 0.0;
    m.at(2, 0) = 1.2;
    m.at(2, 1) = 2.1;
    return m;
}

Matrix zero_drift() { return Matrix(3, 2); }

// same class layout embedded in 4-D; dims 2 and 3 carry no class signal in
// the source
Matrix triangle_means_4d() {
    Matrix base = triangle_means();
    Matrix m(3, 4);
    for (std::size_t k = 0; k < 3; ++k) {
        m.at(k, 0) = base.at(k, 0);
        m.at(k, 1) = base.at(k, 1);
    }
    return m;
}

// Conditional-shift drift: in the class plane (dims 0-1) class k moves toward
// the mean of class (k+1) % 3 by `mag_plane`, degrading the source-trained
// boundaries; in dims 2-3 each class moves out by `mag_extra` along a
// cell-specific angle, so the target carries class signal the source never
// had. The first part corrupts the label-shift corrections, the second gives
// supervised fine-tuning something real to learn from.
Matrix coral_drift(double mag_plane, double mag_extra, double cell_angle) {
    Matrix means = triangle_means();
    Matrix drift(3, 4);
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t next = (k + 1) % 3;
        double dx = means.at(next, 0) - means.at(k, 0);
        double dy = means.at(next, 1) - means.at(k, 1);
        const double norm = std::sqrt(dx * dx + dy * dy);
        drift.at(k, 0) = mag_plane * dx / norm;
        drift.at(k, 1) = mag_plane * dy / norm;
        const double angle =
            cell_angle + 2.0 * 3.14159265358979323846 * static_cast<double>(k) / 3.0;
        drift.at(k, 2) = mag_extra * std::cos(angle);
        drift.at(k, 3) = mag_extra * std::sin(angle);
    }
    return drift;
}

} // namespace

ScenarioConfig plankton_like_preset(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.c = 3;
    cfg.d = 2;
    cfg.class_means = triangle_means();
    cfg.class_cov_scale = 1.0;
    cfg.source_prior = make_distribution({0.34, 0.33, 0.33});
    cfg.n_source = 2000;
    cfg.seed = seed;

    // 21 cells, one class strongly dominant, zero drift (pure prior shift)
    const double priors[21][3] = {
        {0.80, 0.15, 0.05}, {0.70, 0.20, 0.10}, {0.85, 0.10, 0.05},
        {0.60, 0.25, 0.15}, {0.75, 0.05, 0.20}, {0.90, 0.05, 0.05},
        {0.65, 0.30, 0.05}, {0.55, 0.35, 0.10}, {0.78, 0.12, 0.10},
        {0.72, 0.08, 0.20}, {0.50, 0.40, 0.10}, {0.83, 0.07, 0.10},
        {0.68, 0.22, 0.10}, {0.58, 0.12, 0.30}, {0.88, 0.07, 0.05},
        {0.62, 0.28, 0.10}, {0.77, 0.18, 0.05}, {0.53, 0.17, 0.30},
        {0.81, 0.04, 0.15}, {0.66, 0.14, 0.20}, {0.74, 0.16, 0.10}};
    for (int i = 0; i < 21; ++i) {
        CellSpec spec{"plankton-" + std::to_string(i),
                      make_distribution({priors[i][0], priors[i][1], priors[i][2]}),
                      zero_drift(), 500};
        cfg.cells.push_back(std::move(spec));
    }
    return cfg;
}

ScenarioConfig coral_like_preset(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.c = 3;
    cfg.d = 4;
    cfg.class_means = triangle_means_4d();
    cfg.class_cov_scale = 0.9;
    cfg.source_prior = make_distribution({0.34, 0.33, 0.33});
    cfg.n_source = 2000;
    cfg.seed = seed;

    // 15 cells with varied priors and per-cell appearance drift
    const double priors[15][3] = {
        {0.50, 0.30, 0.20}, {0.20, 0.50, 0.30}, {0.30, 0.20, 0.50},
        {0.40, 0.40, 0.20}, {0.25, 0.35, 0.40}, {0.60, 0.20, 0.20},
        {0.20, 0.60, 0.20}, {0.20, 0.20, 0.60}, {0.45, 0.25, 0.30},
        {0.30, 0.45, 0.25}, {0.25, 0.30, 0.45}, {0.50, 0.25, 0.25},
        {0.35, 0.50, 0.15}, {0.15, 0.35, 0.50}, {0.40, 0.30, 0.30}};
    const double plane_mags[15] = {1.8, 2.0, 1.7, 1.9, 2.1, 1.8, 1.6, 2.1,
                                   1.7, 1.9, 1.8, 2.0, 1.7, 2.1, 1.9};
    for (int i = 0; i < 15; ++i) {
        const double cell_angle =
            2.0 * 3.14159265358979323846 * static_cast<double>(i) / 15.0;
        CellSpec spec{"coral-" + std::to_string(i),
                      make_distribution({priors[i][0], priors[i][1], priors[i][2]}),
                      coral_drift(plane_mags[i], 3.0, cell_angle), 500};
        cfg.cells.push_back(std::move(spec));
    }
    return cfg;
}

ScenarioConfig preset_by_name(const std::string& name, std::uint64_t seed) {
    if (name == "plankton-like") {
        return plankton_like_preset(seed);
    }
    if (name == "coral-like") {
        return coral_like_preset(seed);
    }
    throw InvalidArgumentError("unknown preset '" + name + "'");
}

} // namespace quantbench
