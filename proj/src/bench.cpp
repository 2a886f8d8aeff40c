#include "quantbench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "quantbench/io.hpp"
#include "quantbench/quant_sup.hpp"
#include "quantbench/quant_unsup.hpp"
#include "quantbench/rng.hpp"

namespace quantbench {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

const std::set<std::string>& known_methods() {
    static const std::set<std::string> m{"cc",  "em",     "cm",    "srs",
                                         "offset", "ratio", "da_mix"};
    return m;
}

bool is_supervised(const std::string& method) {
    return method == "srs" || method == "offset" || method == "ratio" ||
           method == "da_mix";
}

nlohmann::json train_config_json(const TrainConfig& t) {
    return {{"epochs", t.epochs},
            {"learning_rate", t.learning_rate},
            {"l2_penalty", t.l2_penalty},
            {"batch_size", t.batch_size},
            {"seed", t.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base) {
    base.epochs = j.value("epochs", base.epochs);
    base.learning_rate = j.value("learning_rate", base.learning_rate);
    base.l2_penalty = j.value("l2_penalty", base.l2_penalty);
    base.batch_size = j.value("batch_size", base.batch_size);
    base.seed = j.value("seed", base.seed);
    return base;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// 5-fold cross-validated confusion on the source set, fold confusions pooled
// into one count matrix before smoothing
ConfusionMatrix cv_confusion(const LabeledDataset& source, const TrainConfig& cfg,
                             std::uint64_t seed) {
    const std::size_t n = source.size();
    const std::size_t c = source.num_classes;
    const int folds = 5;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<std::vector<std::int64_t>> counts(c, std::vector<std::int64_t>(c, 0));
    for (int f = 0; f < folds; ++f) {
        std::vector<std::size_t> train_idx;
        std::vector<std::size_t> test_idx;
        for (std::size_t i = 0; i < n; ++i) {
            (static_cast<int>(i % folds) == f ? test_idx : train_idx).push_back(order[i]);
        }
        Matrix tf(train_idx.size(), source.dim());
        std::vector<int> tl(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) {
            for (std::size_t j = 0; j < source.dim(); ++j) {
                tf.at(i, j) = source.features.at(train_idx[i], j);
            }
            tl[i] = source.labels[train_idx[i]];
        }
        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = derive_seed(seed, "fold:" + std::to_string(f));
        SoftmaxClassifier fold_model = train(LabeledDataset(std::move(tf), std::move(tl), c),
                                             fold_cfg);
        for (std::size_t i : test_idx) {
            Matrix one(1, source.dim());
            for (std::size_t j = 0; j < source.dim(); ++j) {
                one.at(0, j) = source.features.at(i, j);
            }
            ScoreMatrix p = posteriors(fold_model, one);
            counts[static_cast<std::size_t>(source.labels[i])][argmax_label(p.row(0))] += 1;
        }
    }
    return ConfusionMatrix::from_counts(counts);
}

struct SeedContext {
    std::vector<Cell> cells;
    // present in synthetic mode only
    std::optional<SoftmaxClassifier> model;
    std::optional<LabeledDataset> source;
    std::optional<Distribution> source_prior;
    std::optional<ConfusionMatrix> confusion;
};

Distribution truth_distribution(const Cell& cell, std::size_t c) {
    if (!cell.truth) {
        throw InvalidArgumentError("cell '" + cell.id + "' has no truth labels");
    }
    std::vector<double> counts(c, 0.0);
    for (int y : *cell.truth) {
        counts[static_cast<std::size_t>(y)] += 1.0;
    }
    return make_distribution(counts);
}

ScoreMatrix cell_scores(const SeedContext& ctx, const Cell& cell) {
    if (!cell.has_features()) {
        return cell.scores();
    }
    if (!ctx.model) {
        throw InvalidArgumentError("cell '" + cell.id +
                                   "' holds features but no classifier is available");
    }
    return posteriors(*ctx.model, cell.features());
}

ScoreMatrix subset_scores(const ScoreMatrix& scores, const LabeledSubset& subset) {
    Matrix m(subset.b, scores.classes());
    for (std::size_t i = 0; i < subset.b; ++i) {
        auto row = scores.row(subset.indices[i]);
        for (std::size_t j = 0; j < scores.classes(); ++j) {
            m.at(i, j) = row[j];
        }
    }
    return ScoreMatrix(std::move(m));
}

// every (method, budget, cell) result for one seed, rows in canonical order
std::vector<BenchRow> run_seed(const BenchmarkConfig& cfg, const SeedContext& ctx,
                               std::uint64_t seed) {
    std::vector<BenchRow> rows;
    for (const Cell& cell : ctx.cells) {
        std::optional<ScoreMatrix> scores;
        std::optional<Distribution> truth;
        std::string cell_error;
        std::size_t c = 0;
        try {
            scores = cell_scores(ctx, cell);
            c = scores->classes();
            truth = truth_distribution(cell, c);
        } catch (const Error& e) {
            cell_error = e.what();
        }

        for (const std::string& method : cfg.methods) {
            const std::vector<int> budgets =
                is_supervised(method) ? cfg.budgets : std::vector<int>{-1};
            for (int b : budgets) {
                BenchRow row;
                row.method = method;
                if (b >= 0) {
                    row.budget = b;
                }
                row.cell_id = cell.id;
                row.seed = seed;
                try {
                    if (!cell_error.empty()) {
                        throw InvalidArgumentError(cell_error);
                    }
                    Distribution est = Distribution::uniform(c);
                    if (method == "cc") {
                        est = classify_and_count(*scores);
                    } else if (method == "em") {
                        if (!ctx.source_prior) {
                            throw InvalidArgumentError("em requires a source prior");
                        }
                        est = em_adjust(*scores, *ctx.source_prior).prior;
                    } else if (method == "cm") {
                        if (!ctx.confusion) {
                            throw InvalidArgumentError("cm requires a confusion matrix");
                        }
                        est = cm_adjust(classify_and_count(*scores), *ctx.confusion);
                    } else {
                        const std::uint64_t subset_seed = derive_seed(
                            seed, "subset:" + cell.id + ":" + std::to_string(b));
                        LabeledSubset subset =
                            draw_subset(cell, static_cast<std::size_t>(b), subset_seed);
                        const Distribution truth_sub = srs_estimate(subset, c);
                        if (method == "srs") {
                            est = truth_sub;
                        } else if (method == "offset" || method == "ratio") {
                            const Distribution cc_full = classify_and_count(*scores);
                            const Distribution cc_sub =
                                classify_and_count(subset_scores(*scores, subset));
                            est = method == "offset"
                                      ? offset_estimate(cc_full, cc_sub, truth_sub)
                                      : ratio_estimate(cc_full, cc_sub, truth_sub);
                        } else { // da_mix
                            if (!ctx.model || !ctx.source) {
                                throw InvalidArgumentError(
                                    "da_mix requires a trained classifier and source data");
                            }
                            TrainConfig tune = cfg.tune;
                            tune.seed = derive_seed(
                                seed, "tune:" + cell.id + ":" + std::to_string(b));
                            est = da_mix_quantify(*ctx.model, *ctx.source, cell, subset,
                                                  tune);
                        }
                    }
                    row.bray_curtis = bray_curtis(*truth, est);
                } catch (const Error& e) {
                    row.error = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

SeedContext build_context(const BenchmarkConfig& cfg, std::uint64_t seed) {
    SeedContext ctx;
    if (fs::is_directory(cfg.scenario)) {
        IngestedData data = ingest_cells(cfg.scenario);
        ctx.cells = std::move(data.cells);
        if (cfg.source_prior) {
            ctx.source_prior = make_distribution(*cfg.source_prior);
        }
        if (cfg.confusion_counts) {
            ctx.confusion = ConfusionMatrix::from_counts(*cfg.confusion_counts);
        }
        return ctx;
    }

    ScenarioConfig scenario =
        fs::exists(cfg.scenario) ? load_scenario(cfg.scenario, seed)
                                 : preset_by_name(cfg.scenario, seed);
    scenario.seed = seed;
    LabeledDataset source = gen_source(scenario);

    TrainConfig train_cfg = cfg.train;
    train_cfg.seed = derive_seed(seed, "train");
    ctx.model = train(source, train_cfg);

    std::vector<double> label_counts(scenario.c, 0.0);
    for (int y : source.labels) {
        label_counts[static_cast<std::size_t>(y)] += 1.0;
    }
    ctx.source_prior = make_distribution(label_counts);
    ctx.confusion = cv_confusion(source, cfg.train, derive_seed(seed, "cv"));

    for (const CellSpec& spec : scenario.cells) {
        ctx.cells.push_back(gen_cell(scenario, spec));
    }
    ctx.source = std::move(source);
    return ctx;
}

} // namespace

void BenchmarkConfig::validate() const {
    if (scenario.empty()) {
        throw InvalidArgumentError("config: scenario is required");
    }
    if (methods.empty()) {
        throw InvalidArgumentError("config: methods list is empty");
    }
    for (const std::string& m : methods) {
        if (!known_methods().count(m)) {
            throw InvalidArgumentError("config: unknown method '" + m + "'");
        }
    }
    for (int b : budgets) {
        if (b < 1) {
            throw InvalidArgumentError("config: budgets must be positive");
        }
    }
    if (seeds.empty()) {
        throw InvalidArgumentError("config: seeds list is empty");
    }
    if (jobs < 1) {
        throw InvalidArgumentError("config: jobs must be >= 1");
    }
    train.validate();
    tune.validate();
}

BenchmarkConfig BenchmarkConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("benchmark config: ") + e.what());
    }
    BenchmarkConfig cfg;
    cfg.scenario = j.value("scenario", std::string());
    cfg.methods = j.value("methods", std::vector<std::string>{});
    if (j.contains("budgets")) {
        cfg.budgets = j.at("budgets").get<std::vector<int>>();
    }
    if (j.contains("seeds")) {
        cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    }
    cfg.jobs = j.value("jobs", 1);
    if (j.contains("train")) {
        cfg.train = train_config_from_json(j.at("train"), cfg.train);
    }
    if (j.contains("tune")) {
        cfg.tune = train_config_from_json(j.at("tune"), cfg.tune);
    }
    if (j.contains("source_prior")) {
        cfg.source_prior = j.at("source_prior").get<std::vector<double>>();
    }
    if (j.contains("confusion_counts")) {
        cfg.confusion_counts =
            j.at("confusion_counts").get<std::vector<std::vector<std::int64_t>>>();
    }
    cfg.validate();
    return cfg;
}

std::string BenchmarkConfig::canonical_json() const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["methods"] = methods;
    j["budgets"] = budgets;
    j["seeds"] = seeds;
    j["train"] = train_config_json(train);
    j["tune"] = train_config_json(tune);
    if (source_prior) {
        j["source_prior"] = *source_prior;
    }
    if (confusion_counts) {
        j["confusion_counts"] = *confusion_counts;
    }
    // jobs is execution detail, excluded so parallelism never changes the hash
    return j.dump();
}

bool BenchmarkReport::method_failed_everywhere(const std::string& method) const {
    bool seen = false;
    for (const BenchRow& row : rows) {
        if (row.method != method) {
            continue;
        }
        seen = true;
        if (row.error.empty()) {
            return false;
        }
    }
    return seen;
}

bool BenchmarkReport::any_method_failed_everywhere() const {
    std::set<std::string> methods;
    for (const BenchRow& row : rows) {
        methods.insert(row.method);
    }
    return std::any_of(methods.begin(), methods.end(),
                       [this](const std::string& m) { return method_failed_everywhere(m); });
}

std::vector<AggregateError> aggregate_rows(const std::vector<BenchRow>& rows) {
    std::map<std::pair<std::string, std::optional<int>>, std::vector<CellError>> groups;
    for (const BenchRow& row : rows) {
        if (!row.error.empty()) {
            continue;
        }
        groups[{row.method, row.budget}].push_back(
            {row.cell_id, row.method, row.budget, row.bray_curtis});
    }
    std::vector<AggregateError> out;
    for (const auto& [key, errors] : groups) {
        out.push_back(aggregate(errors));
    }
    return out; // std::map iteration order is already canonical
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
    cfg.validate();
    BenchmarkReport report;
    report.version = kVersion;
    report.config_hash = hex64(fnv1a(cfg.canonical_json()));
    report.seeds = cfg.seeds;

    std::vector<std::vector<BenchRow>> blocks(cfg.seeds.size());
    std::vector<std::string> block_errors(cfg.seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.seeds.size()) {
                return;
            }
            try {
                SeedContext ctx = build_context(cfg, cfg.seeds[i]);
                blocks[i] = run_seed(cfg, ctx, cfg.seeds[i]);
            } catch (const Error& e) {
                block_errors[i] = e.what();
            }
        }
    };
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), cfg.seeds.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t i = 0; i < n_workers; ++i) {
            threads.emplace_back(worker);
        }
        for (std::thread& t : threads) {
            t.join();
        }
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!block_errors[i].empty()) {
            // whole-seed failure: one error row per method so it shows up
            for (const std::string& method : cfg.methods) {
                BenchRow row;
                row.method = method;
                row.seed = cfg.seeds[i];
                row.error = block_errors[i];
                report.rows.push_back(std::move(row));
            }
            continue;
        }
        report.rows.insert(report.rows.end(), blocks[i].begin(), blocks[i].end());
    }
    report.aggregates = aggregate_rows(report.rows);
    return report;
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "method,budget,cell_id,seed,bray_curtis,error\n";
    for (const BenchRow& row : rows) {
        out << row.method << ',';
        if (row.budget) {
            out << *row.budget;
        }
        out << ',' << row.cell_id << ',' << row.seed << ','
            << (row.error.empty() ? format_double(row.bray_curtis) : std::string())
            << ',' << row.error << "\n";
    }
    return out.str();
}

std::vector<BenchRow> rows_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("rows CSV: empty file");
    }
    std::vector<BenchRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::string item;
        std::istringstream ss(line);
        while (std::getline(ss, item, ',')) {
            fields.push_back(item);
        }
        while (fields.size() < 6) {
            fields.emplace_back();
        }
        BenchRow row;
        row.method = fields[0];
        if (!fields[1].empty()) {
            row.budget = std::stoi(fields[1]);
        }
        row.cell_id = fields[2];
        row.seed = std::stoull(fields[3]);
        if (!fields[4].empty()) {
            row.bray_curtis = std::stod(fields[4]);
        }
        row.error = fields[5];
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string aggregates_to_csv(const std::vector<AggregateError>& aggregates) {
    std::ostringstream out;
    out << "method,budget,mean,se,n\n";
    for (const AggregateError& a : aggregates) {
        out << a.method << ',';
        if (a.budget) {
            out << *a.budget;
        }
        out << ',' << format_double(a.mean) << ',' << format_double(a.se) << ','
            << a.n_cells << "\n";
    }
    return out.str();
}

std::string report_to_json(const BenchmarkReport& report) {
    nlohmann::json j;
    j["version"] = report.version;
    j["config_hash"] = report.config_hash;
    j["seeds"] = report.seeds;
    auto rows = nlohmann::json::array();
    for (const BenchRow& row : report.rows) {
        nlohmann::json r;
        r["method"] = row.method;
        if (row.budget) {
            r["budget"] = *row.budget;
        } else {
            r["budget"] = nullptr;
        }
        r["cell_id"] = row.cell_id;
        r["seed"] = row.seed;
        r["bray_curtis"] = row.bray_curtis;
        r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    auto aggs = nlohmann::json::array();
    for (const AggregateError& a : report.aggregates) {
        nlohmann::json r;
        r["method"] = a.method;
        if (a.budget) {
            r["budget"] = *a.budget;
        } else {
            r["budget"] = nullptr;
        }
        r["mean"] = a.mean;
        r["se"] = a.se;
        r["n"] = a.n_cells;
        aggs.push_back(std::move(r));
    }
    j["aggregates"] = std::move(aggs);
    return j.dump(2) + "\n";
}

BenchmarkReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
    BenchmarkReport report;
    report.version = j.at("version").get<std::string>();
    report.config_hash = j.at("config_hash").get<std::string>();
    report.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& r : j.at("rows")) {
        BenchRow row;
        row.method = r.at("method").get<std::string>();
        if (!r.at("budget").is_null()) {
            row.budget = r.at("budget").get<int>();
        }
        row.cell_id = r.at("cell_id").get<std::string>();
        row.seed = r.at("seed").get<std::uint64_t>();
        row.bray_curtis = r.at("bray_curtis").get<double>();
        row.error = r.at("error").get<std::string>();
        report.rows.push_back(std::move(row));
    }
    for (const auto& r : j.at("aggregates")) {
        AggregateError a;
        a.method = r.at("method").get<std::string>();
        if (!r.at("budget").is_null()) {
            a.budget = r.at("budget").get<int>();
        }
        a.mean = r.at("mean").get<double>();
        a.se = r.at("se").get<double>();
        a.n_cells = r.at("n").get<std::size_t>();
        report.aggregates.push_back(std::move(a));
    }
    return report;
}

namespace {

// minimal mean +/- SE chart: one series per method, budget on the x-axis for
// supervised methods, horizontal dashed lines for unsupervised ones
std::string render_svg(const BenchmarkReport& report) {
    const double width = 640.0;
    const double height = 420.0;
    const double ml = 60.0, mr = 160.0, mt = 30.0, mb = 50.0;

    std::set<std::string> methods;
    std::set<int> budgets;
    double max_err = 0.0;
    for (const AggregateError& a : report.aggregates) {
        methods.insert(a.method);
        if (a.budget) {
            budgets.insert(*a.budget);
        }
        max_err = std::max(max_err, a.mean + a.se);
    }
    if (max_err <= 0.0) {
        max_err = 1.0;
    }
    max_err *= 1.1;
    const double x0 = budgets.empty() ? 0.0 : static_cast<double>(*budgets.begin());
    const double x1 = budgets.empty() ? 1.0 : static_cast<double>(*budgets.rbegin());
    auto xpos = [&](double b) {
        if (x1 <= x0) {
            return ml + (width - ml - mr) / 2.0;
        }
        return ml + (b - x0) / (x1 - x0) * (width - ml - mr);
    };
    auto ypos = [&](double e) { return height - mb - e / max_err * (height - mt - mb); };

    const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                             "#9467bd", "#8c564b", "#e377c2"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
        << width - mr << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (width - mr + ml) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">annotation budget b</text>\n";
    out << "<text x=\"16\" y=\"" << (height - mb + mt) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (height - mb + mt) / 2 << ")\">mean Bray-Curtis error</text>\n";

    int color = 0;
    double legend_y = mt + 10.0;
    for (const std::string& method : methods) {
        const char* stroke = palette[color % 7];
        ++color;
        std::vector<const AggregateError*> series;
        for (const AggregateError& a : report.aggregates) {
            if (a.method == method) {
                series.push_back(&a);
            }
        }
        out << "<g class=\"series\" data-method=\"" << method << "\" stroke=\""
            << stroke << "\" fill=\"" << stroke << "\">\n";
        if (series.size() == 1 && !series.front()->budget) {
            const double y = ypos(series.front()->mean);
            out << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << width - mr
                << "\" y2=\"" << y << "\" stroke-dasharray=\"6 4\" fill=\"none\"/>\n";
        } else {
            out << "<polyline fill=\"none\" points=\"";
            for (const AggregateError* a : series) {
                if (a->budget) {
                    out << xpos(static_cast<double>(*a->budget)) << ','
                        << ypos(a->mean) << ' ';
                }
            }
            out << "\"/>\n";
            for (const AggregateError* a : series) {
                if (!a->budget) {
                    continue;
                }
                const double x = xpos(static_cast<double>(*a->budget));
                out << "<circle cx=\"" << x << "\" cy=\"" << ypos(a->mean)
                    << "\" r=\"3\"/>\n";
                out << "<line x1=\"" << x << "\" y1=\"" << ypos(a->mean - a->se)
                    << "\" x2=\"" << x << "\" y2=\"" << ypos(a->mean + a->se)
                    << "\"/>\n";
            }
        }
        out << "</g>\n";
        out << "<text x=\"" << width - mr + 14 << "\" y=\"" << legend_y
            << "\" font-size=\"12\" fill=\"" << stroke << "\">" << method
            << "</text>\n";
        legend_y += 18.0;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace

std::vector<std::string> emit_report(const BenchmarkReport& report,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + out_dir + "'");
    }
    std::vector<std::string> written;
    for (const std::string& format : formats) {
        if (format == "csv") {
            const std::string rows_path = (fs::path(out_dir) / "rows.csv").string();
            const std::string aggs_path = (fs::path(out_dir) / "aggregates.csv").string();
            write_text_file(rows_path, rows_to_csv(report.rows));
            write_text_file(aggs_path, aggregates_to_csv(report.aggregates));
            written.push_back(rows_path);
            written.push_back(aggs_path);
        } else if (format == "json") {
            const std::string path = (fs::path(out_dir) / "report.json").string();
            write_text_file(path, report_to_json(report));
            written.push_back(path);
        } else if (format == "svg") {
            const std::string path = (fs::path(out_dir) / "chart.svg").string();
            write_text_file(path, render_svg(report));
            written.push_back(path);
        } else {
            throw InvalidArgumentError("unknown report format '" + format + "'");
        }
    }
    return written;
}

} // namespace quantbench
