// Command-line front end: extract | features | synth | evaluate | report.
// Exit codes: 0 success, 1 usage/config error, 2 data error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subnetx/subnetx.hpp"

namespace fs = std::filesystem;
using namespace subnetx;

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::optional<int> max_generations;
    std::optional<double> density;
    std::optional<std::string> mode;
    std::optional<int> cv_folds;
    std::optional<std::string> classifier;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "run configuration JSON")->required();
    cmd->add_option("--output", flags.output_dir, "output directory (overrides config)");
    cmd->add_option("--workers", flags.workers, "fitness worker threads");
    cmd->add_option("--seed", flags.seed, "base random seed");
    cmd->add_option("--restarts", flags.restarts, "GA restarts");
    cmd->add_option("--max-generations", flags.max_generations, "GA generation cap");
    cmd->add_option("--density", flags.density, "threshold target density");
    cmd->add_option("--mode", flags.mode, "threshold mode: raw | absolute");
    cmd->add_option("--folds", flags.cv_folds, "cross-validation folds");
    cmd->add_option("--classifier", flags.classifier,
                    "classifier name (overrides config list with defaults)");
}

RunConfig load_config(const CommonFlags& flags) {
    RunConfig cfg = RunConfig::from_file(flags.config_path);
    if (flags.output_dir) cfg.output_dir = *flags.output_dir;
    if (flags.workers) cfg.ga.workers = *flags.workers;
    if (flags.seed) cfg.ga.seed = *flags.seed;
    if (flags.restarts) cfg.ga.restarts = *flags.restarts;
    if (flags.max_generations) cfg.ga.max_generations = *flags.max_generations;
    if (flags.density) cfg.pipeline.density = *flags.density;
    if (flags.mode) {
        if (*flags.mode == "raw") {
            cfg.pipeline.mode = ThresholdMode::raw;
        } else if (*flags.mode == "absolute") {
            cfg.pipeline.mode = ThresholdMode::absolute;
        } else {
            throw ConfigError("threshold mode must be raw or absolute");
        }
    }
    if (flags.cv_folds) cfg.ga.cv_folds = *flags.cv_folds;
    if (flags.classifier) cfg.classifiers = {ModelKind::from_name(*flags.classifier)};
    cfg.ga.classifier = cfg.classifiers.front();
    cfg.validate();
    return cfg;
}

// "all", a 0/1 bitstring of atlas length, or a comma-separated node list.
SubnetMask parse_mask(const std::string& text, int atlas_size) {
    if (text == "all") return SubnetMask::all_ones(static_cast<std::size_t>(atlas_size));
    const bool bit_like = text.find_first_not_of("01") == std::string::npos;
    if (bit_like && text.size() == static_cast<std::size_t>(atlas_size)) {
        return SubnetMask::from_string(text);
    }
    std::vector<int> nodes;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        try {
            nodes.push_back(std::stoi(text.substr(start, end - start)));
        } catch (const std::exception&) {
            throw DataError("cannot parse mask: " + text);
        }
        start = end + 1;
    }
    return SubnetMask::from_nodes(static_cast<std::size_t>(atlas_size), nodes);
}

std::string features_csv(const FeatureMatrix& fm) {
    std::string out;
    for (const auto& d : fm.descriptors) {
        out += d;
        out += ',';
    }
    out += "label\n";
    char buf[40];
    for (Eigen::Index i = 0; i < fm.X.rows(); ++i) {
        for (Eigen::Index j = 0; j < fm.X.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.12g,", fm.X(i, j));
            out += buf;
        }
        out += std::to_string(fm.y[static_cast<std::size_t>(i)]);
        out += '\n';
    }
    return out;
}

int cmd_synth(const CommonFlags& flags, const std::string& out_override) {
    RunConfig cfg = load_config(flags);
    if (!cfg.synthetic) throw ConfigError("synth needs a synthetic dataset in the config");
    const Dataset ds = generate_synthetic(*cfg.synthetic);
    const fs::path dir = out_override.empty() ? cfg.output_dir / "dataset" : fs::path(out_override);
    const fs::path manifest = save_dataset(ds, dir);
    std::cout << manifest.string() << "\n";
    return 0;
}

int cmd_features(const CommonFlags& flags, const std::string& mask_text,
                 const std::string& out_override) {
    RunConfig cfg = load_config(flags);
    const Dataset ds = cfg.load_data();
    const FeaturePipeline pipeline(ds, cfg.pipeline);
    const SubnetMask mask = parse_mask(mask_text, ds.atlas_size);
    const FeatureMatrix fm = pipeline.features_for(mask);
    const fs::path out =
        out_override.empty() ? cfg.output_dir / "features.csv" : fs::path(out_override);
    detail::write_text_atomic(out, features_csv(fm));
    std::cout << out.string() << "\n";
    return 0;
}

int cmd_evaluate(const CommonFlags& flags, const std::string& mask_text,
                 const std::string& out_override) {
    RunConfig cfg = load_config(flags);
    const Dataset ds = cfg.load_data();
    const FeaturePipeline pipeline(ds, cfg.pipeline);
    const SubnetMask mask = parse_mask(mask_text, ds.atlas_size);
    const FeatureMatrix fm = pipeline.features_for(mask);
    const ModelKind kind = cfg.classifiers.front();
    const auto cv = cross_validate(kind, fm.X, fm.y, cfg.ga.cv_folds,
                                   derive_seed(cfg.ga.seed, mask.hash64()));

    FinalReport report;
    report.dataset = ds.name;
    report.classifier = kind.name();
    report.best_fitness = cv.mean_accuracy;
    report.best_mask = mask;
    report.eval = cv.pooled;
    report.run_seeds = {cfg.ga.seed};
    report.config_digest = cfg.digest();

    std::cout << detail::report_to_json(report).dump(2) << "\n";
    if (!out_override.empty()) write_report(report, out_override);
    return 0;
}

int cmd_extract(const CommonFlags& flags) {
    RunConfig cfg = load_config(flags);
    const Dataset ds = cfg.load_data();
    const FeaturePipeline pipeline(ds, cfg.pipeline);

    std::error_code ec;
    fs::create_directories(cfg.output_dir / "curves", ec);

    nlohmann::json table = nlohmann::json::array();
    std::optional<FinalReport> best;
    double best_fitness = -1.0;
    nlohmann::json best_runs;

    for (const auto& kind : cfg.classifiers) {
        GAConfig ga = cfg.ga;
        ga.classifier = kind;
        const auto result = multi_restart(pipeline, ga);

        nlohmann::json runs = nlohmann::json::array();
        for (std::size_t r = 0; r < result.runs.size(); ++r) {
            const auto& run = result.runs[r];
            char name[128];
            std::snprintf(name, sizeof(name), "%s_run%02zu.csv", kind.name().c_str(), r);
            export_generation_curves(run, cfg.output_dir / "curves" / name);
            runs.push_back({{"seed", run.seed},
                            {"best_fitness", run.best_fitness},
                            {"generations", run.generations.size()},
                            {"evaluations", run.evaluations},
                            {"cache_hits", run.cache_hits},
                            {"stop_reason", stop_reason_name(run.stop_reason)}});
        }

        const auto& top = result.best();
        table.push_back({{"classifier", kind.name()},
                         {"best_fitness", top.best_fitness},
                         {"mask", top.best_mask.to_string()},
                         {"best_seed", top.seed}});
        std::cerr << "extract: " << kind.name() << " best fitness " << top.best_fitness << "\n";

        if (top.best_fitness > best_fitness) {
            best_fitness = top.best_fitness;
            const auto fm = pipeline.features_for(top.best_mask);
            const auto cv = cross_validate(kind, fm.X, fm.y, ga.cv_folds,
                                           derive_seed(top.seed, top.best_mask.hash64()));
            FinalReport report;
            report.dataset = ds.name;
            report.classifier = kind.name();
            report.best_fitness = top.best_fitness;
            report.best_mask = top.best_mask;
            report.eval = cv.pooled;
            for (const auto& run : result.runs) report.run_seeds.push_back(run.seed);
            report.config_digest = cfg.digest();
            best = std::move(report);
            best_runs = runs;
        }
    }

    nlohmann::json doc = detail::report_to_json(*best);
    doc["per_classifier"] = table;
    doc["runs"] = best_runs;
    detail::write_text_atomic(cfg.output_dir / "report.json", doc.dump(2) + "\n");
    std::cout << (cfg.output_dir / "report.json").string() << "\n";
    return 0;
}

int cmd_report(const std::string& input) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(input));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad report JSON: " + std::string(e.what()));
    }
    const FinalReport report = detail::report_from_json(doc);

    std::printf("dataset:    %s\n", report.dataset.c_str());
    std::printf("classifier: %s\n", report.classifier.c_str());
    std::printf("accuracy:   %.1f\nprecision:  %.1f\nrecall:     %.1f\n", report.eval.accuracy,
                report.eval.precision, report.eval.recall);
    std::printf("fitness:    %.4f\n", report.best_fitness);
    const auto nodes = report.best_mask.selected_nodes();
    std::printf("nodes (%zu):", nodes.size());
    for (int v : nodes) std::printf(" %d", v);
    std::printf("\n");
    if (doc.contains("per_classifier")) {
        std::printf("\n%-24s %s\n", "classifier", "best fitness");
        for (const auto& row : doc["per_classifier"]) {
            std::printf("%-24s %.4f\n", row["classifier"].get<std::string>().c_str(),
                        row["best_fitness"].get<double>());
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discriminative sub-network extraction from connectivity graphs"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string mask_text = "all";
    std::string out_override;
    std::string report_input;

    auto* extract = app.add_subcommand("extract", "run the full GA extraction pipeline");
    add_common(extract, flags);

    auto* features = app.add_subcommand("features", "emit per-subject entropy features as CSV");
    add_common(features, flags);
    features->add_option("--mask", mask_text, "all | bitstring | comma-separated node list");
    features->add_option("--out", out_override, "output CSV path");

    auto* synth = app.add_subcommand("synth", "write a synthetic dataset to disk");
    add_common(synth, flags);
    synth->add_option("--out", out_override, "dataset directory");

    auto* evaluate = app.add_subcommand("evaluate", "cross-validate a fixed mask and classifier");
    add_common(evaluate, flags);
    evaluate->add_option("--mask", mask_text, "all | bitstring | comma-separated node list");
    evaluate->add_option("--out", out_override, "also write the report JSON here");

    auto* report = app.add_subcommand("report", "pretty-print a stored report");
    report->add_option("--input", report_input, "report JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(extract)) return cmd_extract(flags);
        if (app.got_subcommand(features)) return cmd_features(flags, mask_text, out_override);
        if (app.got_subcommand(synth)) return cmd_synth(flags, out_override);
        if (app.got_subcommand(evaluate)) return cmd_evaluate(flags, mask_text, out_override);
        if (app.got_subcommand(report)) return cmd_report(report_input);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
