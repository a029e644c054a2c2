#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subnetx/entropy.hpp"
#include "subnetx/errors.hpp"
#include "subnetx/ga.hpp"
#include "subnetx/netio.hpp"
#include "subnetx/pipeline.hpp"

namespace subnetx {

inline MatrixFamily family_from_name(const std::string& name) {
    for (auto f : {MatrixFamily::adjacency, MatrixFamily::signless_laplacian,
                   MatrixFamily::signless_laplacian_incidence,
                   MatrixFamily::normalized_signless_laplacian, MatrixFamily::distance,
                   MatrixFamily::randic_adjacency, MatrixFamily::randic_incidence,
                   MatrixFamily::general_randic}) {
        if (family_name(f) == name) return f;
    }
    throw ConfigError("unknown matrix family: " + name);
}

namespace detail {

inline ModelKind model_from_json(const nlohmann::json& doc) {
    ModelKind kind = ModelKind::from_name(doc.at("kind").get<std::string>());
    kind.k = doc.value("k", kind.k);
    kind.max_depth = doc.value("max_depth", kind.max_depth);
    kind.l2 = doc.value("l2", kind.l2);
    kind.iters = doc.value("iters", kind.iters);
    kind.lr = doc.value("lr", kind.lr);
    kind.c = doc.value("c", kind.c);
    kind.rounds = doc.value("rounds", kind.rounds);
    kind.tree_count = doc.value("tree_count", kind.tree_count);
    kind.validate();
    return kind;
}

inline nlohmann::json model_to_json(const ModelKind& kind) {
    return {{"kind", kind.name()},     {"k", kind.k},
            {"max_depth", kind.max_depth}, {"l2", kind.l2},
            {"iters", kind.iters},     {"lr", kind.lr},
            {"c", kind.c},             {"rounds", kind.rounds},
            {"tree_count", kind.tree_count}};
}

inline SyntheticSpec synthetic_from_json(const nlohmann::json& doc) {
    SyntheticSpec spec;
    spec.atlas_size = doc.at("atlas_size").get<int>();
    spec.planted_nodes = doc.at("planted_nodes").get<std::vector<int>>();
    spec.subjects_per_class = doc.at("subjects_per_class").get<int>();
    spec.base_edge_prob = doc.at("base_edge_prob").get<double>();
    spec.planted_edge_prob = doc.at("planted_edge_prob").get<double>();
    spec.weight_noise_sd = doc.value("weight_noise_sd", 0.0);
    spec.seed = doc.value("seed", std::uint64_t{0});
    return spec;
}

inline nlohmann::json synthetic_to_json(const SyntheticSpec& spec) {
    return {{"atlas_size", spec.atlas_size},
            {"planted_nodes", spec.planted_nodes},
            {"subjects_per_class", spec.subjects_per_class},
            {"base_edge_prob", spec.base_edge_prob},
            {"planted_edge_prob", spec.planted_edge_prob},
            {"weight_noise_sd", spec.weight_noise_sd},
            {"seed", spec.seed}};
}

} // namespace detail

// One JSON document describes a full run; its digest is embedded in every
// report so results are reproducible from the config alone.
struct RunConfig {
    std::string name = "run";
    std::optional<std::filesystem::path> manifest;
    std::optional<SyntheticSpec> synthetic;
    PipelineConfig pipeline;
    std::vector<ModelKind> classifiers{ModelKind::knn()};
    GAConfig ga;
    std::filesystem::path output_dir = "out";

    void validate() const {
        if (manifest.has_value() == synthetic.has_value()) {
            throw ConfigError("config needs exactly one data source (manifest or synthetic)");
        }
        if (classifiers.empty()) throw ConfigError("config needs at least one classifier");
        if (!(pipeline.density > 0.0) || pipeline.density > 1.0) {
            throw ConfigError("density must lie in (0,1]");
        }
        pipeline.features.validate();
        for (const auto& c : classifiers) c.validate();
        ga.validate();
        if (synthetic) synthetic->validate();
    }

    Dataset load_data() const {
        validate();
        return manifest ? load_dataset(*manifest) : generate_synthetic(*synthetic);
    }

    static RunConfig from_json(const nlohmann::json& doc) {
        RunConfig cfg;
        try {
            cfg.name = doc.value("name", cfg.name);
            if (doc.contains("dataset")) {
                const auto& src = doc["dataset"];
                if (src.contains("manifest")) {
                    cfg.manifest = std::filesystem::path(src["manifest"].get<std::string>());
                }
                if (src.contains("synthetic")) {
                    cfg.synthetic = detail::synthetic_from_json(src["synthetic"]);
                }
            }
            cfg.pipeline.density = doc.value("density", cfg.pipeline.density);
            const std::string mode = doc.value("threshold_mode", std::string("raw"));
            if (mode == "raw") {
                cfg.pipeline.mode = ThresholdMode::raw;
            } else if (mode == "absolute") {
                cfg.pipeline.mode = ThresholdMode::absolute;
            } else {
                throw ConfigError("threshold_mode must be raw or absolute");
            }
            if (doc.contains("features")) {
                const auto& f = doc["features"];
                if (f.contains("families")) {
                    cfg.pipeline.features.families.clear();
                    for (const auto& name : f["families"]) {
                        cfg.pipeline.features.families.push_back(
                            family_from_name(name.get<std::string>()));
                    }
                }
                if (f.contains("alpha_grid")) {
                    cfg.pipeline.features.alpha_grid = f["alpha_grid"].get<std::vector<double>>();
                }
                if (f.contains("beta_grid")) {
                    cfg.pipeline.features.beta_grid = f["beta_grid"].get<std::vector<double>>();
                }
            }
            if (doc.contains("classifiers")) {
                cfg.classifiers.clear();
                for (const auto& c : doc["classifiers"]) {
                    cfg.classifiers.push_back(detail::model_from_json(c));
                }
            } else if (doc.contains("classifier")) {
                cfg.classifiers = {detail::model_from_json(doc["classifier"])};
            }
            if (doc.contains("ga")) {
                const auto& g = doc["ga"];
                auto& ga = cfg.ga;
                ga.population_size = g.value("population_size", ga.population_size);
                ga.crossover_prob = g.value("crossover_prob", ga.crossover_prob);
                ga.mutation_prob = g.value("mutation_prob", ga.mutation_prob);
                ga.per_gene_mutation_prob =
                    g.value("per_gene_mutation_prob", ga.per_gene_mutation_prob);
                ga.truncation_fraction = g.value("truncation_fraction", ga.truncation_fraction);
                ga.elite_count = g.value("elite_count", ga.elite_count);
                ga.max_generations = g.value("max_generations", ga.max_generations);
                ga.stagnation_patience = g.value("stagnation_patience", ga.stagnation_patience);
                ga.diversity_floor_factor =
                    g.value("diversity_floor_factor", ga.diversity_floor_factor);
                ga.min_nodes = g.value("min_nodes", ga.min_nodes);
                ga.restarts = g.value("restarts", ga.restarts);
                ga.seed = g.value("seed", ga.seed);
            }
            cfg.ga.cv_folds = doc.value("cv_folds", cfg.ga.cv_folds);
            cfg.ga.workers = doc.value("workers", cfg.ga.workers);
            cfg.ga.classifier = cfg.classifiers.front();
            if (doc.contains("output_dir")) {
                cfg.output_dir = std::filesystem::path(doc["output_dir"].get<std::string>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad config JSON: " + std::string(e.what()));
        }
        return cfg;
    }

    static RunConfig from_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path.string());
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad config JSON: " + std::string(e.what()));
        }
        return from_json(doc);
    }

    // Canonical full form (every field populated, keys sorted by the JSON
    // library); the digest is a hash of this dump.
    nlohmann::json to_json() const {
        nlohmann::json doc;
        doc["name"] = name;
        if (manifest) doc["dataset"]["manifest"] = manifest->string();
        if (synthetic) doc["dataset"]["synthetic"] = detail::synthetic_to_json(*synthetic);
        doc["density"] = pipeline.density;
        doc["threshold_mode"] = pipeline.mode == ThresholdMode::raw ? "raw" : "absolute";
        auto& f = doc["features"];
        f["families"] = nlohmann::json::array();
        for (auto fam : pipeline.features.families) f["families"].push_back(family_name(fam));
        f["alpha_grid"] = pipeline.features.alpha_grid;
        f["beta_grid"] = pipeline.features.beta_grid;
        doc["classifiers"] = nlohmann::json::array();
        for (const auto& c : classifiers) doc["classifiers"].push_back(detail::model_to_json(c));
        auto& g = doc["ga"];
        g["population_size"] = ga.population_size;
        g["crossover_prob"] = ga.crossover_prob;
        g["mutation_prob"] = ga.mutation_prob;
        g["per_gene_mutation_prob"] = ga.per_gene_mutation_prob;
        g["truncation_fraction"] = ga.truncation_fraction;
        g["elite_count"] = ga.elite_count;
        g["max_generations"] = ga.max_generations;
        g["stagnation_patience"] = ga.stagnation_patience;
        g["diversity_floor_factor"] = ga.diversity_floor_factor;
        g["min_nodes"] = ga.min_nodes;
        g["restarts"] = ga.restarts;
        g["seed"] = ga.seed;
        doc["cv_folds"] = ga.cv_folds;
        doc["workers"] = ga.workers;
        doc["output_dir"] = output_dir.string();
        return doc;
    }

    std::string digest() const {
        const std::string dump = to_json().dump();
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(dump.data(), dump.size())));
        return buf;
    }
};

} // namespace subnetx
