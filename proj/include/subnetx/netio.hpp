#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "subnetx/errors.hpp"
#include "subnetx/graph.hpp"
#include "subnetx/mask.hpp"
#include "subnetx/ml.hpp"
#include "subnetx/rng.hpp"
#include "subnetx/run_history.hpp"

namespace subnetx {

// One subject: symmetric weight matrix plus group label (0 = control,
// 1 = case).
struct SubjectRecord {
    std::string id;
    WeightedNetwork matrix;
    int label = 0;
};

struct Dataset {
    int atlas_size = 0;
    std::vector<SubjectRecord> subjects;
    std::string name;

    std::vector<int> labels() const {
        std::vector<int> out;
        out.reserve(subjects.size());
        for (const auto& s : subjects) out.push_back(s.label);
        return out;
    }
};

// Synthetic planted-subnetwork dataset: class-1 subjects draw edges with
// probability p1 inside the planted node set, p0 everywhere else.
struct SyntheticSpec {
    int atlas_size = 0;
    std::vector<int> planted_nodes;
    int subjects_per_class = 0;
    double base_edge_prob = 0.0;
    double planted_edge_prob = 0.0;
    double weight_noise_sd = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (atlas_size < 2) throw DataError("atlas size must be at least 2");
        if (subjects_per_class < 1) throw DataError("need at least one subject per class");
        if (!(base_edge_prob > 0.0 && base_edge_prob < 1.0)) {
            throw DataError("base edge probability must lie in (0,1)");
        }
        if (!(planted_edge_prob > 0.0 && planted_edge_prob < 1.0)) {
            throw DataError("planted edge probability must lie in (0,1)");
        }
        if (planted_edge_prob == base_edge_prob) {
            throw DataError("planted probability equals base");
        }
        if (weight_noise_sd < 0.0) throw DataError("weight noise sd must be nonnegative");
        if (planted_nodes.size() < 3) throw DataError("planted set needs at least 3 nodes");
        std::vector<int> sorted = planted_nodes;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw DataError("planted set contains duplicates");
        }
        if (sorted.front() < 0 || sorted.back() >= atlas_size) {
            throw DataError("planted node index out of range");
        }
    }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// write-then-rename so a killed run never leaves a partial file
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + path.string());
        out << content;
        out.flush();
        if (!out) throw DataError("write failed: " + path.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw DataError("cannot replace file: " + path.string());
    }
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline Eigen::MatrixXd parse_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("missing matrix file: " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t end = line.find(',', start);
            if (end == std::string::npos) end = line.size();
            const char* first = line.data() + start;
            const char* last = line.data() + end;
            while (first < last && (*first == ' ' || *first == '\t')) ++first;
            double value = 0.0;
            const auto [ptr, err] = std::from_chars(first, last, value);
            if (err != std::errc() || ptr != last) {
                // from_chars rejects trailing spaces; retry trimmed
                std::string token(first, last);
                while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) {
                    token.pop_back();
                }
                try {
                    std::size_t used = 0;
                    value = std::stod(token, &used);
                    if (used != token.size()) throw std::invalid_argument(token);
                } catch (const std::exception&) {
                    throw DataError("bad number in matrix file: " + path.string());
                }
            }
            row.push_back(value);
            if (end == line.size()) break;
            start = end + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("empty matrix file: " + path.string());
    const std::size_t n = rows.size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != rows[0].size()) {
            throw DataError("non-square matrix: " + path.string());
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    if (m.rows() != m.cols()) throw DataError("non-square matrix: " + path.string());
    return m;
}

inline std::string matrix_to_csv(const Eigen::MatrixXd& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

// symmetry check, symmetrization, and zeroed diagonal shared by the
// loader and the synthetic generator
inline void normalize_matrix(Eigen::MatrixXd& m, const std::string& context) {
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9) throw DataError("asymmetry beyond tolerance: " + context);
    m = ((m + m.transpose()) / 2.0).eval();
    m.diagonal().setZero();
}

} // namespace detail

// Manifest schema: {"atlas_size": n, "subjects": [{"id", "label",
// "matrix_file"}, ...]}; matrix files are dense n-by-n CSV, row i = node i,
// paths relative to the manifest.
inline Dataset load_dataset(const std::filesystem::path& manifest_path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad manifest JSON: " + std::string(e.what()));
    }

    Dataset ds;
    try {
        ds.atlas_size = doc.at("atlas_size").get<int>();
        ds.name = doc.value("name", manifest_path.stem().string());
        if (ds.atlas_size < 2) throw DataError("atlas size must be at least 2");
        const auto dir = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                         : std::filesystem::path(".");
        for (const auto& subject : doc.at("subjects")) {
            SubjectRecord rec;
            rec.id = subject.at("id").get<std::string>();
            rec.label = subject.at("label").get<int>();
            if (rec.label != 0 && rec.label != 1) {
                throw DataError("label outside {0,1}: subject " + rec.id);
            }
            const auto file = dir / subject.at("matrix_file").get<std::string>();
            rec.matrix = detail::parse_matrix_csv(file);
            if (rec.matrix.rows() != ds.atlas_size) {
                throw DataError("atlas-size mismatch: subject " + rec.id);
            }
            detail::normalize_matrix(rec.matrix, "subject " + rec.id);
            ds.subjects.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad manifest JSON: " + std::string(e.what()));
    }

    int cases = 0;
    for (const auto& s : ds.subjects) cases += s.label;
    if (cases == 0 || cases == static_cast<int>(ds.subjects.size())) {
        throw DataError("dataset needs subjects from both classes");
    }
    return ds;
}

// Writes manifest + one CSV per subject into `dir`. Matrices are written
// with 17 significant digits so a reload reproduces them.
inline std::filesystem::path save_dataset(const Dataset& ds, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);

    nlohmann::json manifest;
    manifest["atlas_size"] = ds.atlas_size;
    manifest["name"] = ds.name;
    manifest["subjects"] = nlohmann::json::array();
    for (const auto& s : ds.subjects) {
        const std::string file = s.id + ".csv";
        detail::write_text_atomic(dir / file, detail::matrix_to_csv(s.matrix));
        manifest["subjects"].push_back({{"id", s.id}, {"label", s.label}, {"matrix_file", file}});
    }
    const fs::path manifest_path = dir / "manifest.json";
    detail::write_text_atomic(manifest_path, manifest.dump(2) + "\n");
    return manifest_path;
}

// Pure function of the spec (including the seed): subjects are generated
// in a fixed order from one seeded stream.
inline Dataset generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    std::vector<char> planted(static_cast<std::size_t>(spec.atlas_size), 0);
    for (int v : spec.planted_nodes) planted[static_cast<std::size_t>(v)] = 1;

    Dataset ds;
    ds.atlas_size = spec.atlas_size;
    ds.name = "synthetic";

    for (int label = 0; label <= 1; ++label) {
        for (int s = 0; s < spec.subjects_per_class; ++s) {
            SubjectRecord rec;
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%s_%03d", label == 0 ? "ctrl" : "case", s);
            rec.id = buf;
            rec.label = label;
            rec.matrix = Eigen::MatrixXd::Zero(spec.atlas_size, spec.atlas_size);
            for (int u = 0; u < spec.atlas_size; ++u) {
                for (int v = u + 1; v < spec.atlas_size; ++v) {
                    const bool inside = label == 1 && planted[static_cast<std::size_t>(u)] &&
                                        planted[static_cast<std::size_t>(v)];
                    const double p = inside ? spec.planted_edge_prob : spec.base_edge_prob;
                    if (rng.bernoulli(p)) {
                        const double w =
                            1.0 + (spec.weight_noise_sd > 0.0 ? rng.gaussian() * spec.weight_noise_sd
                                                              : 0.0);
                        rec.matrix(u, v) = rec.matrix(v, u) = w;
                    }
                }
            }
            ds.subjects.push_back(std::move(rec));
        }
    }
    return ds;
}

// Final result of an extraction run: best sub-network plus its
// cross-validated evaluation.
struct FinalReport {
    std::string dataset;
    std::string classifier;
    double best_fitness = 0.0;
    SubnetMask best_mask;
    EvalReport eval;
    std::vector<std::uint64_t> run_seeds;
    std::string config_digest;
};

namespace detail {

inline double round1(double v) { return std::round(v * 10.0) / 10.0; }

inline nlohmann::json report_to_json(const FinalReport& report) {
    if (report.best_mask.popcount() == 0) throw DataError("empty sub-network");
    nlohmann::json doc;
    doc["dataset"] = report.dataset;
    doc["classifier"] = report.classifier;
    doc["accuracy"] = round1(report.eval.accuracy);
    doc["precision"] = round1(report.eval.precision);
    doc["recall"] = round1(report.eval.recall);
    doc["confusion"] = {{"tp", report.eval.tp},
                        {"fp", report.eval.fp},
                        {"tn", report.eval.tn},
                        {"fn", report.eval.fn}};
    doc["best_fitness"] = report.best_fitness;
    doc["selected_nodes"] = report.best_mask.selected_nodes();
    doc["mask"] = report.best_mask.to_string();
    doc["run_seeds"] = report.run_seeds;
    doc["config_digest"] = report.config_digest;
    return doc;
}

inline FinalReport report_from_json(const nlohmann::json& doc) {
    FinalReport report;
    try {
        report.dataset = doc.value("dataset", "");
        report.classifier = doc.value("classifier", "");
        report.eval.accuracy = doc.at("accuracy").get<double>();
        report.eval.precision = doc.at("precision").get<double>();
        report.eval.recall = doc.at("recall").get<double>();
        if (doc.contains("confusion")) {
            report.eval.tp = doc["confusion"].value("tp", 0L);
            report.eval.fp = doc["confusion"].value("fp", 0L);
            report.eval.tn = doc["confusion"].value("tn", 0L);
            report.eval.fn = doc["confusion"].value("fn", 0L);
        }
        report.best_fitness = doc.value("best_fitness", 0.0);
        report.best_mask = SubnetMask::from_string(doc.at("mask").get<std::string>());
        report.run_seeds = doc.value("run_seeds", std::vector<std::uint64_t>{});
        report.config_digest = doc.value("config_digest", "");
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad report JSON: " + std::string(e.what()));
    }
    return report;
}

} // namespace detail

// JSON report with percentages at one decimal.
inline void write_report(const FinalReport& report, const std::filesystem::path& path) {
    detail::write_text_atomic(path, detail::report_to_json(report).dump(2) + "\n");
}

inline FinalReport load_report(const std::filesystem::path& path) {
    try {
        return detail::report_from_json(nlohmann::json::parse(detail::read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad report JSON: " + std::string(e.what()));
    }
}

// CSV of the per-generation curves; the global-max column must be
// non-decreasing (elitism contract).
inline void export_generation_curves(const RunHistory& history,
                                     const std::filesystem::path& path) {
    if (history.generations.empty()) throw DataError("empty run history");
    std::string out =
        "generation,global_max_fitness,local_mean_fitness,local_min_fitness,diversity\n";
    double prev = -1.0;
    for (std::size_t g = 0; g < history.generations.size(); ++g) {
        const auto& gen = history.generations[g];
        if (gen.global_max_fitness < prev) throw DataError("non-monotone best-so-far");
        prev = gen.global_max_fitness;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f,%lld\n", g + 1,
                      gen.global_max_fitness, gen.local_mean_fitness, gen.local_min_fitness,
                      gen.diversity);
        out += buf;
    }
    detail::write_text_atomic(path, out);
}

} // namespace subnetx
