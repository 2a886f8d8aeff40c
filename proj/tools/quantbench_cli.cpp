#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quantbench/bench.hpp"
#include "quantbench/io.hpp"
#include "quantbench/quant_sup.hpp"
#include "quantbench/quant_unsup.hpp"
#include "quantbench/rng.hpp"

namespace fs = std::filesystem;
using namespace quantbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;
constexpr int kExitIo = 3;

std::vector<std::string> default_class_names(std::size_t c) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c; ++i) {
        names.push_back("class" + std::to_string(i));
    }
    return names;
}

void print_distribution(const Distribution& q) {
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i > 0) {
            std::cout << ',';
        }
        std::cout << format_double(q[i]);
    }
    std::cout << "\n";
}

int cmd_simulate(const std::string& scenario, std::uint64_t seed,
                 const std::string& out_dir) {
    ScenarioConfig cfg = fs::exists(scenario) ? load_scenario(scenario, seed)
                                              : preset_by_name(scenario, seed);
    cfg.seed = seed;
    fs::create_directories(out_dir);
    const std::vector<std::string> names = default_class_names(cfg.c);

    LabeledDataset source = gen_source(cfg);
    Cell source_cell;
    source_cell.id = "source";
    source_cell.samples = source.features;
    source_cell.truth = source.labels;
    write_cell_file((fs::path(out_dir) / "source.csv").string(), source_cell, names);

    for (const CellSpec& spec : cfg.cells) {
        Cell cell = gen_cell(cfg, spec);
        write_cell_file((fs::path(out_dir) / (cell.id + ".csv")).string(), cell, names);
    }
    std::cout << "wrote " << cfg.cells.size() + 1 << " files to " << out_dir << "\n";
    return kExitOk;
}

int cmd_quantify(const std::string& method, const std::string& cell_path,
                 const std::vector<double>& source_prior,
                 const std::string& confusion_path, std::optional<int> budget,
                 std::uint64_t seed) {
    std::vector<std::string> names;
    Cell cell = read_cell_file(cell_path, names);

    Distribution est = Distribution::uniform(names.size());
    if (method == "srs") {
        if (!budget) {
            throw InvalidArgumentError("srs needs --budget");
        }
        LabeledSubset subset =
            draw_subset(cell, static_cast<std::size_t>(*budget), seed);
        est = srs_estimate(subset, names.size());
    } else {
        const ScoreMatrix& scores = cell.scores();
        if (method == "cc") {
            est = classify_and_count(scores);
        } else if (method == "em") {
            if (source_prior.empty()) {
                throw InvalidArgumentError("em needs --source-prior");
            }
            est = em_adjust(scores, make_distribution(source_prior)).prior;
        } else if (method == "cm") {
            if (confusion_path.empty()) {
                throw InvalidArgumentError("cm needs --confusion");
            }
            nlohmann::json j = nlohmann::json::parse(read_text_file(confusion_path));
            ConfusionMatrix confusion = ConfusionMatrix::from_counts(
                j.get<std::vector<std::vector<std::int64_t>>>());
            est = cm_adjust(classify_and_count(scores), confusion);
        } else {
            throw InvalidArgumentError("quantify supports cc, em, cm, srs");
        }
    }
    print_distribution(est);
    return kExitOk;
}

int cmd_benchmark(const std::string& config_path, const std::string& out_dir,
                  const std::vector<std::string>& formats,
                  std::optional<std::uint64_t> seed_override, std::optional<int> jobs) {
    BenchmarkConfig cfg = BenchmarkConfig::from_json(read_text_file(config_path));
    if (seed_override) {
        cfg.seeds = {*seed_override};
    }
    if (jobs) {
        cfg.jobs = *jobs;
    }
    cfg.validate();
    BenchmarkReport report = run_benchmark(cfg);
    for (const std::string& path : emit_report(report, out_dir, formats)) {
        std::cout << path << "\n";
    }
    return report.any_method_failed_everywhere() ? kExitPartial : kExitOk;
}

int cmd_report(const std::string& in_path, const std::string& out_dir,
               const std::vector<std::string>& formats) {
    BenchmarkReport report = report_from_json(read_text_file(in_path));
    for (const std::string& path : emit_report(report, out_dir, formats)) {
        std::cout << path << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantbench: class-distribution quantification benchmark harness"};
    app.require_subcommand(1);

    std::string scenario = "plankton-like";
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    auto* sim = app.add_subcommand("simulate", "generate scenario datasets");
    sim->add_option("--scenario", scenario, "preset name or scenario JSON path");
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--out", out_dir, "output directory");

    std::string method = "cc";
    std::string cell_path;
    std::vector<double> source_prior;
    std::string confusion_path;
    std::optional<int> budget;
    auto* quant = app.add_subcommand("quantify", "run one method on one cell");
    quant->add_option("--method", method, "cc|em|cm|srs")->required();
    quant->add_option("--cell", cell_path, "cell file")->required();
    quant->add_option("--source-prior", source_prior, "source prior (em)");
    quant->add_option("--confusion", confusion_path, "confusion counts JSON (cm)");
    quant->add_option("--budget", budget, "annotation budget (srs)");
    quant->add_option("--seed", seed, "subset seed");

    std::string config_path;
    std::vector<std::string> formats{"csv", "json"};
    std::optional<std::uint64_t> seed_override;
    std::optional<int> jobs;
    auto* bench = app.add_subcommand("benchmark", "run the full sweep");
    bench->add_option("--config", config_path, "benchmark config JSON")->required();
    bench->add_option("--out", out_dir, "output directory");
    bench->add_option("--format", formats, "csv|json|svg");
    bench->add_option("--seed", seed_override, "override config seeds with one seed");
    bench->add_option("--jobs", jobs, "worker threads");

    std::string report_in;
    auto* rep = app.add_subcommand("report", "re-render from a report JSON");
    rep->add_option("--in", report_in, "report.json path")->required();
    rep->add_option("--out", out_dir, "output directory");
    rep->add_option("--format", formats, "csv|svg|json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            return cmd_simulate(scenario, seed, out_dir);
        }
        if (quant->parsed()) {
            return cmd_quantify(method, cell_path, source_prior, confusion_path, budget,
                                seed);
        }
        if (bench->parsed()) {
            return cmd_benchmark(config_path, out_dir, formats, seed_override, jobs);
        }
        if (rep->parsed()) {
            return cmd_report(report_in, out_dir, formats);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
