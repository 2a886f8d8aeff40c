#include "quantbench/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace quantbench {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(line);
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

ParseError at_line(const std::string& path, std::size_t line, const std::string& what) {
    return ParseError(path + ":" + std::to_string(line) + ": " + what);
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

void write_cell_file(const std::string& path, const Cell& cell,
                     const std::vector<std::string>& class_names) {
    std::ostringstream out;
    out << "# classes: " << join(class_names, ',') << "\n";
    out << "# kind: " << (cell.has_features() ? "features" : "scores") << "\n";
    const Matrix& m = cell.has_features() ? cell.features() : cell.scores().matrix();
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(m.at(i, j));
        }
        if (cell.truth) {
            out << ',' << (*cell.truth)[i];
        }
        out << "\n";
    }
    write_text_file(path, out.str());
}

Cell read_cell_file(const std::string& path, std::vector<std::string>& class_names) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) {
        throw at_line(path, 1, "missing class catalog header");
    }
    ++lineno;
    const std::string classes_prefix = "# classes: ";
    if (line.rfind(classes_prefix, 0) != 0) {
        throw at_line(path, lineno, "expected '# classes: ...' header");
    }
    class_names = split(line.substr(classes_prefix.size()), ',');
    const std::size_t c = class_names.size();
    if (c < 2) {
        throw at_line(path, lineno, "class catalog needs at least 2 classes");
    }

    if (!std::getline(in, line)) {
        throw at_line(path, 2, "missing kind header");
    }
    ++lineno;
    const std::string kind_prefix = "# kind: ";
    if (line.rfind(kind_prefix, 0) != 0) {
        throw at_line(path, lineno, "expected '# kind: ...' header");
    }
    const std::string kind = line.substr(kind_prefix.size());
    const bool is_scores = kind == "scores";
    if (!is_scores && kind != "features") {
        throw at_line(path, lineno, "kind must be 'scores' or 'features'");
    }

    std::vector<double> values;
    std::vector<int> truth;
    bool has_truth = false;
    std::size_t width = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split(line, ',');
        if (rows == 0) {
            if (is_scores) {
                if (fields.size() == c) {
                    has_truth = false;
                } else if (fields.size() == c + 1) {
                    has_truth = true;
                } else {
                    throw at_line(path, lineno, "score row width does not match catalog");
                }
                width = c;
            } else {
                // features: truth column detection by parsing the last field
                // as a bare integer; feature width is whatever remains
                has_truth = fields.size() >= 2 &&
                            fields.back().find_first_not_of("0123456789") ==
                                std::string::npos;
                width = fields.size() - (has_truth ? 1 : 0);
                if (width < 1) {
                    throw at_line(path, lineno, "feature row has no feature columns");
                }
            }
        } else if (fields.size() != width + (has_truth ? 1 : 0)) {
            throw at_line(path, lineno, "inconsistent column count");
        }
        for (std::size_t j = 0; j < width; ++j) {
            try {
                std::size_t pos = 0;
                double v = std::stod(fields[j], &pos);
                if (pos != fields[j].size()) {
                    throw std::invalid_argument("trailing garbage");
                }
                values.push_back(v);
            } catch (const std::exception&) {
                throw at_line(path, lineno, "bad numeric field '" + fields[j] + "'");
            }
        }
        if (has_truth) {
            int y = 0;
            try {
                y = std::stoi(fields.back());
            } catch (const std::exception&) {
                throw at_line(path, lineno, "bad truth label '" + fields.back() + "'");
            }
            if (y < 0 || static_cast<std::size_t>(y) >= c) {
                throw at_line(path, lineno, "truth label outside class catalog");
            }
            truth.push_back(y);
        }
        if (is_scores) {
            // renormalize rows near the simplex, reject the rest
            double sum = 0.0;
            for (std::size_t j = 0; j < width; ++j) {
                sum += values[rows * width + j];
            }
            if (std::abs(sum - 1.0) > 1e-3) {
                throw SimplexViolationError(path + ":" + std::to_string(lineno) +
                                            ": score row sums to " + format_double(sum));
            }
            for (std::size_t j = 0; j < width; ++j) {
                values[rows * width + j] /= sum;
            }
        }
        ++rows;
    }
    if (rows == 0) {
        throw at_line(path, lineno + 1, "cell has no sample rows");
    }

    Cell cell;
    cell.id = fs::path(path).stem().string();
    Matrix m(rows, width, std::move(values));
    if (is_scores) {
        cell.samples = ScoreMatrix(std::move(m));
    } else {
        cell.samples = std::move(m);
    }
    if (has_truth) {
        cell.truth = std::move(truth);
    }
    return cell;
}

IngestedData ingest_cells(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("'" + dir + "' is not a directory");
    }
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        throw IoError("no .csv cell files under '" + dir + "'");
    }
    IngestedData data;
    for (const std::string& path : paths) {
        std::vector<std::string> names;
        Cell cell = read_cell_file(path, names);
        if (data.cells.empty()) {
            data.class_names = names;
        } else if (names != data.class_names) {
            throw ParseError(path + ": class catalog differs from earlier cells");
        }
        data.cells.push_back(std::move(cell));
    }
    return data;
}

namespace {

Matrix parse_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                    const std::string& what) {
    Matrix m(rows, cols);
    if (!j.is_array() || j.size() != rows) {
        throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
    }
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw ParseError(what + ": row " + std::to_string(i) + " width mismatch");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            m.at(i, k) = j[i][k].get<double>();
        }
    }
    return m;
}

} // namespace

ScenarioConfig parse_scenario_json(const std::string& text, std::uint64_t seed) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
    if (j.contains("preset")) {
        return preset_by_name(j.at("preset").get<std::string>(), seed);
    }
    ScenarioConfig cfg;
    cfg.c = j.at("c").get<std::size_t>();
    cfg.d = j.at("d").get<std::size_t>();
    cfg.class_means = parse_matrix(j.at("class_means"), cfg.c, cfg.d, "class_means");
    cfg.class_cov_scale = j.at("class_cov_scale").get<double>();
    cfg.source_prior = make_distribution(j.at("source_prior").get<std::vector<double>>());
    cfg.n_source = j.at("n_source").get<std::size_t>();
    cfg.seed = j.value("seed", seed);
    for (const auto& cj : j.at("cells")) {
        CellSpec spec{
            cj.at("id").get<std::string>(),
            make_distribution(cj.at("target_prior").get<std::vector<double>>()),
            parse_matrix(cj.at("mean_drift"), cfg.c, cfg.d, "mean_drift"),
            cj.at("n_samples").get<std::size_t>()};
        cfg.cells.push_back(std::move(spec));
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path, std::uint64_t seed) {
    return parse_scenario_json(read_text_file(path), seed);
}

} // namespace quantbench
